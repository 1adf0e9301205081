"""Structural parameters of the rank-dependent peer effect model.

The peer effect on a node with d peers is a linear function of the d ordered
(ascending) peer outcomes, with one coefficient per (rank, degree) pair. The
triangular coefficient array is stored flat, grouped by degree:

    beta = (b[1,1], b[1,2], b[2,2], b[1,3], b[2,3], b[3,3], ...)

where b[k,d] multiplies the k-th lowest peer outcome of a degree-d node. All
modules share this layout; restrictions are linear maps onto it.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .errors import DegreeOverflowError, RestrictionRankError, ValidationError
from .graph import Network

__all__ = [
    "TieRule",
    "PeerCoefficients",
    "Restriction",
    "tri_len",
    "beta_index",
    "check_bounded",
    "ordered_peer_outcomes",
    "peer_effect",
    "build_restriction",
    "RESTRICTION_KINDS",
    "load_coefficients_json",
    "save_coefficients_json",
]


class TieRule(enum.Enum):
    """Deterministic tie break when two peers hold equal outcomes."""

    BY_INDEX_ASCENDING = "by-index-ascending"


def tri_len(dbar: int) -> int:
    """Length of the flat coefficient array for max degree ``dbar``."""
    return dbar * (dbar + 1) // 2


def beta_index(k: int, d: int) -> int:
    """Flat position of the coefficient on the k-th lowest of d peers."""
    if not 1 <= k <= d:
        raise IndexError(f"need 1 <= k <= d, got k={k}, d={d}")
    return d * (d - 1) // 2 + (k - 1)


@dataclass(frozen=True)
class PeerCoefficients:
    """Triangular peer-effect coefficients plus covariate coefficients.

    gamma multiplies the covariate row x_i; when the model has an intercept it
    occupies the first coordinate of gamma and a ones column in x.
    """

    dbar: int
    beta: np.ndarray
    gamma: np.ndarray

    def __post_init__(self):
        beta = np.asarray(self.beta, dtype=np.float64).reshape(-1).copy()
        gamma = np.asarray(self.gamma, dtype=np.float64).reshape(-1).copy()
        if self.dbar < 0:
            raise ValidationError(f"dbar must be nonnegative, got {self.dbar}")
        if beta.size != tri_len(self.dbar):
            raise ValidationError(
                f"beta has length {beta.size}, expected dbar*(dbar+1)/2 = "
                f"{tri_len(self.dbar)} for dbar={self.dbar}"
            )
        beta.setflags(write=False)
        gamma.setflags(write=False)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)

    def coef(self, k: int, d: int) -> float:
        return float(self.beta[beta_index(k, d)])

    def degree_row(self, d: int) -> np.ndarray:
        """Coefficients (b[1,d], ..., b[d,d]) for degree ``d``."""
        if d == 0:
            return np.empty(0)
        return self.beta[beta_index(1, d): beta_index(d, d) + 1]

    def padded_rows(self) -> np.ndarray:
        """(dbar, dbar) matrix whose row d-1 holds the degree-d coefficients,
        zero padded on the right. Row layout used by the solver kernels."""
        rows = np.zeros((max(self.dbar, 1), max(self.dbar, 1)))
        for d in range(1, self.dbar + 1):
            rows[d - 1, :d] = self.degree_row(d)
        return rows


def check_bounded(coeffs: PeerCoefficients) -> tuple[float, bool]:
    """Total-effect bound: the max over degrees of the absolute coefficient
    sum, and whether it is strictly below one (the uniqueness condition)."""
    if coeffs.dbar == 0:
        return 0.0, True
    sums = [float(np.abs(coeffs.degree_row(d)).sum()) for d in range(1, coeffs.dbar + 1)]
    bound = max(sums)
    return bound, bound < 1.0


def ordered_peer_outcomes(
    net: Network,
    y: np.ndarray,
    i: int,
    tie: TieRule = TieRule.BY_INDEX_ASCENDING,
) -> np.ndarray:
    """Ascending outcomes of node ``i``'s peers; equal values keep ascending
    peer-index order. A degree-0 node yields an empty vector."""
    y = np.asarray(y, dtype=np.float64)
    if y.size != net.n:
        raise ValidationError(f"outcome vector has length {y.size}, expected {net.n}")
    peers = net.peers(i)
    vals = y[peers]
    # peers() is ascending in index, so a stable sort realizes the tie rule
    return vals[np.argsort(vals, kind="stable")]


def peer_effect(coeffs: PeerCoefficients, ordered: np.ndarray) -> float:
    """Spillover onto a node from its ascending peer outcomes."""
    ordered = np.asarray(ordered, dtype=np.float64).reshape(-1)
    d = ordered.size
    if d == 0:
        return 0.0
    if d > coeffs.dbar:
        raise DegreeOverflowError(
            f"{d} peer outcomes given but coefficients only cover degrees up to {coeffs.dbar}"
        )
    return float(ordered @ coeffs.degree_row(d))


RESTRICTION_KINDS = (
    "saturated",
    "lim",
    "lis",
    "minmax-split",
    "max-only",
    "restricted-maxsplit",
    "restricted-maxsplit-d",
    "custom",
)


@dataclass(frozen=True)
class Restriction:
    """Linear reparameterization beta = matrix @ theta with full column rank.

    Parameter meanings by kind (T = dbar*(dbar+1)/2):
      saturated              theta is beta itself, matrix = I_T.
      lim                    one parameter, b[k,d] = theta / d (peer-mean model).
      lis                    one parameter, b[k,d] = theta (peer-sum model).
      minmax-split           (low, high): lower half of ranks k <= ceil(d/2)
                             get `low`, upper half get `high`.
      max-only               one parameter on the top-ranked peer, b[d,d].
      restricted-maxsplit    (below_max, max): b[k,d] = below_max/(d-1) for
                             k < d, b[d,d] = max.
      restricted-maxsplit-d  same but b[k,d] = below_max/d for k < d. This is
                             the normalization under which the reference
                             restricted-model study is correctly specified;
                             both variants are provided because the two
                             normalizations circulate.
      custom                 caller-supplied matrix, validated for rank.
    """

    kind: str
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.ndim != 2:
            raise RestrictionRankError(f"restriction matrix must be 2-d, got {m.ndim}-d")
        if np.linalg.matrix_rank(m) < m.shape[1]:
            raise RestrictionRankError(
                f"restriction matrix ({m.shape[0]}x{m.shape[1]}) is rank deficient"
            )
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n_params(self) -> int:
        return self.matrix.shape[1]

    def expand(self, theta: np.ndarray) -> np.ndarray:
        """Map reduced parameters to the flat triangular coefficient array."""
        return self.matrix @ np.asarray(theta, dtype=np.float64).reshape(-1)


def build_restriction(kind: str, dbar: int, matrix: np.ndarray | None = None) -> Restriction:
    """Construct the restriction matrix for one of the named kinds."""
    if dbar < 1:
        raise ValidationError(f"dbar must be at least 1, got {dbar}")
    T = tri_len(dbar)
    if kind == "custom":
        if matrix is None:
            raise ValidationError("custom restriction requires a matrix")
        m = np.asarray(matrix, dtype=np.float64)
        if m.shape[0] != T:
            raise ValidationError(f"custom matrix has {m.shape[0]} rows, expected {T}")
        return Restriction("custom", m)
    if matrix is not None:
        raise ValidationError(f"matrix argument only valid with kind='custom', not {kind!r}")

    if kind == "saturated":
        m = np.eye(T)
    elif kind == "lim":
        m = np.zeros((T, 1))
        for d in range(1, dbar + 1):
            for k in range(1, d + 1):
                m[beta_index(k, d), 0] = 1.0 / d
    elif kind == "lis":
        m = np.ones((T, 1))
    elif kind == "minmax-split":
        m = np.zeros((T, 2))
        for d in range(1, dbar + 1):
            cut = -(-d // 2)  # ceil(d / 2)
            for k in range(1, d + 1):
                m[beta_index(k, d), 0 if k <= cut else 1] = 1.0
    elif kind == "max-only":
        m = np.zeros((T, 1))
        for d in range(1, dbar + 1):
            m[beta_index(d, d), 0] = 1.0
    elif kind in ("restricted-maxsplit", "restricted-maxsplit-d"):
        m = np.zeros((T, 2))
        for d in range(1, dbar + 1):
            m[beta_index(d, d), 1] = 1.0
            denom = float(d - 1 if kind == "restricted-maxsplit" else d)
            for k in range(1, d):
                m[beta_index(k, d), 0] = 1.0 / denom
    else:
        raise ValidationError(f"unknown restriction kind {kind!r}; known: {RESTRICTION_KINDS}")
    return Restriction(kind, m)


def load_coefficients_json(path) -> tuple[PeerCoefficients, str | None]:
    """Read a coefficient file: {"dbar", "beta", "gamma", "restriction"?}.

    Returns the coefficients and the optional restriction kind string. The
    beta length is revalidated against dbar.
    """
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from None
    for key in ("dbar", "beta", "gamma"):
        if key not in obj:
            raise ValidationError(f"{path}: missing required field {key!r}")
    dbar = int(obj["dbar"])
    beta = np.asarray(obj["beta"], dtype=np.float64)
    if beta.size != tri_len(dbar):
        raise ValidationError(
            f"{path}: beta has length {beta.size}, expected dbar*(dbar+1)/2 = "
            f"{tri_len(dbar)} for dbar={dbar}"
        )
    coeffs = PeerCoefficients(dbar=dbar, beta=beta, gamma=np.asarray(obj["gamma"]))
    return coeffs, obj.get("restriction")


def save_coefficients_json(coeffs: PeerCoefficients, path, restriction: str | None = None) -> None:
    obj = {
        "dbar": coeffs.dbar,
        "beta": coeffs.beta.tolist(),
        "gamma": coeffs.gamma.tolist(),
    }
    if restriction is not None:
        obj["restriction"] = restriction
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")
