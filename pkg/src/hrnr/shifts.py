"""Shift matrices, their closed-form ranges, and the nilpotent dilation.

The n-dimensional shift S_n (ones on the first subdiagonal) has rank-k
numerical range equal to the closed disc of radius cos(k pi / (n+1)) when
k <= floor((n+1)/2) and the empty set otherwise.  A nilpotent contraction
T embeds isometrically into copies of S_n*, which bounds its rank-k range
by the disc of radius cos(rho(k, r) pi / (n+1)) where r is the rank of
the defect (I - T*T)^{1/2}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import adjoint, as_matrix, frobenius, hermitian_eig, identity, kron, psd_sqrt
from .ranges import BadRankError

# Disc radii at or below this collapse to a point at the origin.
POINT_RADIUS = 1e-9
# Spectral-norm slack for accepting a contraction (scaled inputs sit on
# the boundary after rounding).
CONTRACTION_TOL = 1e-10
# Defect eigenvalue counts toward the rank when its square root exceeds this.
DEFECT_RANK_TOL = 1e-8
# Entry tolerance in the nilpotency power test, on the scale-normalised matrix.
NILPOTENT_TOL = 1e-12


class BadIndexError(ValueError):
    """Replicated-sequence index outside 1..n*r."""


class NotContractionError(ValueError):
    """Spectral norm exceeds 1 beyond tolerance."""


class NotNilpotentError(ValueError):
    """No power up to the dimension vanishes."""


def shift_matrix(n: int) -> np.ndarray:
    """The n x n shift: ones on the first subdiagonal, zeros elsewhere."""
    n = int(n)
    if n < 1:
        raise ValueError("shift dimension must be >= 1")
    s = np.zeros((n, n), dtype=np.complex128)
    s[np.arange(1, n), np.arange(n - 1)] = 1.0
    return s


@dataclass(frozen=True)
class ClosedFormRange:
    """Closed-form range: a centred disc, the origin, or nothing."""

    tag: str  # "disc" | "point" | "empty"
    radius: float = 0.0

    @classmethod
    def disc(cls, radius: float) -> "ClosedFormRange":
        if radius <= POINT_RADIUS:
            return cls("point", 0.0)
        return cls("disc", float(radius))

    @classmethod
    def empty(cls) -> "ClosedFormRange":
        return cls("empty", 0.0)


def closed_form_shift_range(n: int, k: int) -> ClosedFormRange:
    """Rank-k range of S_n: disc of radius cos(k pi/(n+1)), or empty."""
    n, k = int(n), int(k)
    if n < 1:
        raise ValueError("shift dimension must be >= 1")
    if not 1 <= k <= n:
        raise BadRankError(f"k must be in 1..{n}, got {k}")
    if k > (n + 1) // 2:
        return ClosedFormRange.empty()
    return ClosedFormRange.disc(float(np.cos(k * np.pi / (n + 1))))


def rho(k: int, r: int) -> int:
    """k/r when r divides k, floor(k/r) + 1 otherwise."""
    k, r = int(k), int(r)
    if k < 1 or r < 1:
        raise ValueError("rho arguments must be positive")
    if k % r == 0:
        return k // r
    return k // r + 1


def kth_of_replicated(values, r: int, k: int) -> float:
    """k-th largest term after repeating each of the values r times.

    ``values`` must be strictly descending; the answer is values[rho(k,r)]
    in 1-based indexing, identical to explicitly replicating and sorting.
    """
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 1 or vals.size == 0:
        raise ValueError("values must be a non-empty 1-D sequence")
    if not (np.diff(vals) < 0).all():
        raise ValueError("values must be strictly descending")
    r, k = int(r), int(k)
    if r < 1:
        raise ValueError("multiplicity must be >= 1")
    if not 1 <= k <= vals.size * r:
        raise BadIndexError(f"k must be in 1..{vals.size * r}, got {k}")
    return float(vals[rho(k, r) - 1])


def closed_form_replicated_range(n: int, r: int, k: int) -> ClosedFormRange:
    """Rank-k range of r copies of S_n (equivalently of S_n*)."""
    n, r, k = int(n), int(r), int(k)
    if n < 1 or r < 1 or k < 1:
        raise ValueError("n, r, k must be positive")
    if k > n * r:
        return ClosedFormRange.empty()
    p = rho(k, r)
    if p > (n + 1) // 2:
        return ClosedFormRange.empty()
    return ClosedFormRange.disc(float(np.cos(p * np.pi / (n + 1))))


def matrix_power(t, p: int) -> np.ndarray:
    t = as_matrix(t)
    out = identity(t.shape[0])
    for _ in range(int(p)):
        out = out @ t
    return out


def nilpotency_index(t) -> int:
    """Smallest n <= dim with T^n = 0 (entrywise, scale-normalised)."""
    t = as_matrix(t)
    d = t.shape[0]
    scale = max(1.0, frobenius(t))
    power = identity(d)
    base = t / scale
    for p in range(1, d + 1):
        power = power @ base
        if np.abs(power).max() <= NILPOTENT_TOL:
            return p
    raise NotNilpotentError(f"no power up to {d} vanishes")


def spectral_norm(t) -> float:
    """Largest singular value, via the top eigenvalue of T*T."""
    t = as_matrix(t)
    top = hermitian_eig(t.conj().T @ t).values[0]
    return float(np.sqrt(max(top, 0.0)))


@dataclass(frozen=True, eq=False)
class DilationPack:
    """Isometric embedding of a nilpotent contraction into shift copies.

    V maps C^d into C^d (x) C^n; row (i*n + t-1) of V carries row i of
    D_T T^(t-1), so the shift acts on the second tensor factor and the
    intertwining relation reads V T = (I (x) S_n*) V.

    defect
        D_T = (I - T*T)^{1/2}.
    r
        Numerical rank of the defect (eigenvalues of I - T*T whose square
        root exceeds 1e-8).
    n
        Nilpotency index of T.
    """

    defect: np.ndarray
    r: int
    n: int
    V: np.ndarray
    isometry_residual: float
    intertwine_residual: float


def build_dilation(t) -> DilationPack:
    """Construct the dilation isometry for a nilpotent contraction.

    Raises NotContractionError when ||T||_2 > 1 + 1e-10 and
    NotNilpotentError when no power up to dim(T) vanishes.
    """
    t = as_matrix(t)
    d = t.shape[0]
    if spectral_norm(t) > 1.0 + CONTRACTION_TOL:
        raise NotContractionError("spectral norm exceeds 1 beyond tolerance")
    n = nilpotency_index(t)
    gram = identity(d) - t.conj().T @ t
    defect = psd_sqrt(gram)
    defect_eigs = hermitian_eig(gram).values
    r = int((np.sqrt(np.clip(defect_eigs, 0.0, None)) > DEFECT_RANK_TOL).sum())
    v = np.zeros((d * n, d), dtype=np.complex128)
    block = defect.copy()
    rows = np.arange(d) * n
    for step in range(n):
        v[rows + step, :] = block
        block = block @ t
    iso = frobenius(v.conj().T @ v - identity(d))
    inter = frobenius(v @ t - kron(identity(d), adjoint(shift_matrix(n))) @ v)
    return DilationPack(
        defect=defect,
        r=r,
        n=n,
        V=v,
        isometry_residual=iso,
        intertwine_residual=inter,
    )
