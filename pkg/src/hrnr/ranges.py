"""Rank-k numerical ranges via rotated Hermitian pencil eigenvalue sweeps.

For a matrix T and direction theta, the pencil
``H_theta = e^{i theta} T + e^{-i theta} T*`` is Hermitian, and half of
its k-th largest eigenvalue is the offset of a supporting half-plane of
the rank-k numerical range in that direction.  Sweeping theta over a
uniform grid and intersecting the half-planes yields a circumscribed
polygon whose outer error is ``R_max (sec(pi/m) - 1)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .geometry import ConvexRegion, HalfPlane, intersect_halfplanes
from .linalg import as_matrix, eig_hermitian_stack, frobenius

# Angle counts: interactive default and the denser verification default.
DEFAULT_ANGLES = 720
VERIFY_ANGLES = 2048
MIN_ANGLES = 16

ANGLES_ENV_VAR = "HRNR_ANGLES"


class BadRankError(ValueError):
    """Requested rank k outside 1..dim(T)."""


def default_angles() -> int:
    """Interactive angle count, overridable via the HRNR_ANGLES env var."""
    raw = os.environ.get(ANGLES_ENV_VAR)
    if raw is None:
        return DEFAULT_ANGLES
    try:
        m = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ANGLES_ENV_VAR} must be an integer, got {raw!r}") from exc
    if m < MIN_ANGLES:
        raise ValueError(f"{ANGLES_ENV_VAR} must be >= {MIN_ANGLES}")
    return m


def pencil(t, theta: float) -> np.ndarray:
    """Hermitian pencil e^{i theta} T + e^{-i theta} T*.

    Hermitian exactly, entry by entry, because the (j, i) entry is
    assembled from the identical floating-point products as the (i, j)
    entry conjugated.
    """
    t = as_matrix(t)
    p = np.exp(1j * float(theta)) * t
    return p + p.conj().T


def _check_angles(m: int) -> int:
    m = int(m)
    if m < MIN_ANGLES:
        raise ValueError(f"angle count must be >= {MIN_ANGLES}, got {m}")
    return m


@dataclass(frozen=True, eq=False)
class PencilSweep:
    """Eigenvalues of the pencil over a uniform angle grid.

    thetas
        Grid angles 2*pi*j/m.
    eigenvalues
        (m, n) array; row j holds the descending spectrum of H_{theta_j}.
    frob_norm
        Frobenius norm of T, fixing the clipping bound downstream.
    """

    thetas: np.ndarray
    eigenvalues: np.ndarray
    frob_norm: float

    @property
    def angle_count(self) -> int:
        return self.thetas.shape[0]

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[1]


def pencil_sweep(t, m: int) -> PencilSweep:
    """Diagonalise all m pencils of T in one batched eigensolve."""
    t = as_matrix(t)
    m = _check_angles(m)
    thetas = 2.0 * np.pi * np.arange(m) / m
    phases = np.exp(1j * thetas)
    stack = phases[:, None, None] * t
    stack = stack + stack.conj().swapaxes(1, 2)
    vals, _ = eig_hermitian_stack(stack, vectors=False)
    return PencilSweep(thetas=thetas, eigenvalues=vals, frob_norm=frobenius(t))


def outer_error_bound(region: ConvexRegion, m: int) -> float:
    """Circumscription error R_max (sec(pi/m) - 1); zero for degenerate tags."""
    if region.kind != "polygon":
        return 0.0
    return region.max_modulus() * (1.0 / np.cos(np.pi / m) - 1.0)


@dataclass(frozen=True, eq=False)
class RangeReport:
    """Result of a rank-k range computation.

    support_samples is an (m, 2) array of (theta_j, lambda_k(H_theta_j)/2)
    pairs, i.e. the supporting half-plane offsets actually used.
    """

    k: int
    angles: int
    region: ConvexRegion
    outer_error_bound: float
    support_samples: np.ndarray

    def min_support(self) -> float:
        return float(self.support_samples[:, 1].min())


def range_from_sweep(sweep: PencilSweep, k: int) -> RangeReport:
    """Build the rank-k region from an existing pencil sweep."""
    n = sweep.dim
    if not 1 <= k <= n:
        raise BadRankError(f"k must be in 1..{n}, got {k}")
    offsets = sweep.eigenvalues[:, k - 1] / 2.0
    planes = [HalfPlane(t, b) for t, b in zip(sweep.thetas, offsets)]
    region = intersect_halfplanes(planes, bound=sweep.frob_norm + 1.0)
    m = sweep.angle_count
    return RangeReport(
        k=k,
        angles=m,
        region=region,
        outer_error_bound=outer_error_bound(region, m),
        support_samples=np.column_stack([sweep.thetas, offsets]),
    )


def rank_k_range(t, k: int, m: int | None = None) -> RangeReport:
    """Rank-k numerical range of T on an m-angle grid.

    The k pencil eigenvalue (halved) at each grid angle becomes a
    supporting half-plane; the region is their intersection inside the
    square of half-width ||T||_F + 1.  Raises BadRankError for k outside
    1..dim(T).
    """
    t = as_matrix(t)
    if not 1 <= int(k) <= t.shape[0]:
        raise BadRankError(f"k must be in 1..{t.shape[0]}, got {k}")
    sweep = pencil_sweep(t, DEFAULT_ANGLES if m is None else m)
    return range_from_sweep(sweep, int(k))


def numerical_radius(t, m: int | None = None) -> float:
    """Largest modulus over the numerical range, via max_j lambda_1/2."""
    sweep = pencil_sweep(t, DEFAULT_ANGLES if m is None else m)
    return float(sweep.eigenvalues[:, 0].max() / 2.0)
