"""NumPy implementation of the solver step kernels.

Same contract as the compiled extension in ``_step_cy.pyx``; which one is
used is decided once at import time in ``_kernels``.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def sorted_peer_matrix(y: np.ndarray, peer_idx: np.ndarray) -> np.ndarray:
    """Row i holds node i's peer outcomes in ascending order, zero padded.

    ``peer_idx`` is the (n, dmax) padded peer-id matrix (-1 marks padding).
    """
    mask = peer_idx >= 0
    vals = y[np.where(mask, peer_idx, 0)]
    vals = np.where(mask, vals, np.inf)  # pads sort to the end
    vals = np.sort(vals, axis=1)
    return np.where(np.isfinite(vals), vals, 0.0)


def peer_step(
    y: np.ndarray,
    peer_idx: np.ndarray,
    beta_rows: np.ndarray,
    intrinsic: np.ndarray,
) -> np.ndarray:
    """One application of the equilibrium map.

    ``beta_rows`` is the (n, dmax) per-node coefficient row: entry (i, k-1)
    multiplies the k-th lowest peer outcome of node i (zero beyond degree).
    """
    s = sorted_peer_matrix(y, peer_idx)
    return (s * beta_rows).sum(axis=1) + intrinsic
