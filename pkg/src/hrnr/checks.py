"""Property suites and independent oracles cross-checking the range engine.

Each check returns a :class:`PropertyReport`; ``passed`` is always
equivalent to ``discrepancy <= tolerance``.  Set equalities are measured
as Hausdorff distances with a tolerance of ten times the combined outer
approximation bounds plus 1e-8; one-sided inclusions are measured as the
largest distance by which any vertex leaves the covering region.

Oracles here do not share machinery with the engine: the Hermitian
interval and the normal hull intersection come straight from eigenvalue
lists, and the Monte-Carlo hull is built from raw Rayleigh quotients.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .geometry import ConvexRegion, HalfPlane, hausdorff, intersect_halfplanes, max_violation
from .linalg import as_matrix, eig_hermitian_stack, frobenius, hermitian_eig, identity
from .ranges import VERIFY_ANGLES, RangeReport, pencil_sweep, range_from_sweep, numerical_radius
from .shifts import nilpotency_index, spectral_norm

UNITARY_TOL = 1e-10
NESTING_SLACK = 1e-8
HAAGERUP_SLACK = 1e-6
NORMAL_ORACLE_MAX_DIM = 8


class NotUnitaryError(ValueError):
    """Conjugating matrix is not unitary within tolerance."""


class BadIsometryError(ValueError):
    """Columns are not orthonormal, or too few of them."""


class TooLargeError(ValueError):
    """Normal oracle limited to dimension 8 (combinatorial blow-up)."""


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of one verifier check."""

    property_id: str
    passed: bool
    discrepancy: float
    tolerance: float
    digest: str
    note: str = ""


def _report(pid: str, discrepancy: float, tolerance: float, digest: str,
            note: str = "") -> PropertyReport:
    return PropertyReport(
        property_id=pid,
        passed=bool(discrepancy <= tolerance),
        discrepancy=float(discrepancy),
        tolerance=float(tolerance),
        digest=digest,
        note=note,
    )


def _equality_tol(*reports: RangeReport) -> float:
    return 10.0 * sum(r.outer_error_bound for r in reports) + 1e-8


def _outer_gap(report: RangeReport) -> float:
    """Provable bound on the distance from the reported region to the
    true range.

    The disc-calibrated bound R(sec(pi/m) - 1) understates the error
    where the true range has a straight boundary piece (generic for
    k >= 2): between two grid angles the circumscribed polygon grows a
    wedge whose height is linear, not quadratic, in the grid spacing.
    Each wedge vertex lies within min(adjacent edge lengths) * sin(turn
    angle) of the tangency chord, which covers flat edges and smooth
    arcs alike.
    """
    region = report.region
    if region.kind == "segment":
        length = float(np.abs(region.vertices[1] - region.vertices[0]))
        return (length / 2.0) * float(np.sin(np.pi / report.angles))
    if region.kind != "polygon":
        return 0.0
    v = region.vertices
    edges = np.roll(v, -1) - v
    lengths = np.abs(edges)
    units = edges / lengths
    prev_units = np.roll(units, 1)
    sin_turn = np.abs(prev_units.real * units.imag - prev_units.imag * units.real)
    per_vertex = np.minimum(np.roll(lengths, 1), lengths) * sin_turn
    return max(report.outer_error_bound, float(per_vertex.max()))


def _set_distance(a: ConvexRegion, b: ConvexRegion) -> float:
    if a.is_empty and b.is_empty:
        return 0.0
    if a.is_empty or b.is_empty:
        return np.inf
    return hausdorff(a, b)


def _inclusion_gap(inner: ConvexRegion, outer: ConvexRegion) -> float:
    """How far the inner region pokes out of the outer one (<= 0 is inside)."""
    if inner.is_empty:
        return 0.0
    if outer.is_empty:
        return np.inf
    return max_violation(outer, inner.vertices)


def transform_region(region: ConvexRegion, a: complex, b: complex) -> ConvexRegion:
    """Image of a region under z -> a z + b (a nonzero preserves the tag)."""
    if a == 0:
        raise ValueError("affine transform needs a != 0")
    if region.is_empty:
        return region
    return ConvexRegion(region.kind, a * region.vertices + b)


def conjugate_region(region: ConvexRegion) -> ConvexRegion:
    """Mirror image under complex conjugation (reverses orientation)."""
    if region.is_empty:
        return region
    verts = np.conj(region.vertices)
    if region.kind == "polygon":
        verts = verts[::-1].copy()
    return ConvexRegion(region.kind, verts)


def direct_sum(t, s) -> np.ndarray:
    t = as_matrix(t)
    s = as_matrix(s)
    n, m = t.shape[0], s.shape[0]
    out = np.zeros((n + m, n + m), dtype=np.complex128)
    out[:n, :n] = t
    out[n:, n:] = s
    return out


def check_affine(t, k: int, a: complex, b: complex,
                 m: int = VERIFY_ANGLES) -> PropertyReport:
    """P1: the range of aT + bI is a * range(T) + b.

    The two sides are circumscribed on grids rotated by arg(a) relative
    to each other, so the tolerance uses the flat-edge-aware outer gaps
    rather than the disc-calibrated bounds alone.
    """
    t = as_matrix(t)
    lhs = range_from_sweep(pencil_sweep(a * t + b * identity(t.shape[0]), m), k)
    rhs = range_from_sweep(pencil_sweep(t, m), k)
    tol = 10.0 * (_outer_gap(lhs) + abs(a) * _outer_gap(rhs)) + 1e-8
    dist = _set_distance(lhs.region, transform_region(rhs.region, a, b))
    return _report("P1", dist, tol, f"dim={t.shape[0]} k={k} a={a} b={b}")


def check_adjoint(t, k: int, m: int = VERIFY_ANGLES) -> PropertyReport:
    """P2: the range of T* is the conjugate of the range of T."""
    t = as_matrix(t)
    lhs = range_from_sweep(pencil_sweep(t.conj().T, m), k)
    rhs = range_from_sweep(pencil_sweep(t, m), k)
    dist = _set_distance(lhs.region, conjugate_region(rhs.region))
    return _report("P2", dist, _equality_tol(lhs, rhs), f"dim={t.shape[0]} k={k}")


def check_direct_sum(t, s, k: int, m: int = VERIFY_ANGLES) -> PropertyReport:
    """P3, one-sided: range(T) and range(S) both sit inside range(T (+) S)."""
    t = as_matrix(t)
    s = as_matrix(s)
    whole = range_from_sweep(pencil_sweep(direct_sum(t, s), m), k)
    part_t = range_from_sweep(pencil_sweep(t, m), k)
    part_s = range_from_sweep(pencil_sweep(s, m), k)
    tol = _equality_tol(whole, part_t, part_s)
    gap = max(
        _inclusion_gap(part_t.region, whole.region),
        _inclusion_gap(part_s.region, whole.region),
    )
    return _report("P3", gap, tol, f"dims={t.shape[0]}+{s.shape[0]} k={k}")


def check_unitary(t, u, k: int, m: int = VERIFY_ANGLES) -> PropertyReport:
    """P4: conjugating by a unitary leaves the range unchanged."""
    t = as_matrix(t)
    u = as_matrix(u)
    if frobenius(u.conj().T @ u - identity(u.shape[0])) > UNITARY_TOL:
        raise NotUnitaryError("conjugating matrix is not unitary within 1e-10")
    lhs = range_from_sweep(pencil_sweep(u.conj().T @ t @ u, m), k)
    rhs = range_from_sweep(pencil_sweep(t, m), k)
    dist = _set_distance(lhs.region, rhs.region)
    return _report("P4", dist, _equality_tol(lhs, rhs), f"dim={t.shape[0]} k={k}")


def check_compression(t, iso, k: int, m: int = VERIFY_ANGLES) -> PropertyReport:
    """P5: the range of a compression is contained in the full range."""
    t = as_matrix(t)
    iso = np.asarray(iso, dtype=np.complex128)
    if iso.ndim != 2 or iso.shape[0] < iso.shape[1]:
        raise BadIsometryError(f"expected tall column-isometry, got {iso.shape}")
    p = iso.shape[1]
    if frobenius(iso.conj().T @ iso - identity(p)) > UNITARY_TOL:
        raise BadIsometryError("columns are not orthonormal within 1e-10")
    if p < k:
        raise BadIsometryError(f"need at least k={k} columns, got {p}")
    small = range_from_sweep(pencil_sweep(iso.conj().T @ t @ iso, m), k)
    full = range_from_sweep(pencil_sweep(t, m), k)
    gap = _inclusion_gap(small.region, full.region)
    return _report("P5", gap, _equality_tol(small, full),
                   f"dim={t.shape[0]}->{p} k={k}")


def check_nesting(t, k_max: int, m: int = VERIFY_ANGLES) -> PropertyReport:
    """P6: supports of successive ranges are non-increasing in k."""
    t = as_matrix(t)
    if not 1 <= k_max <= t.shape[0]:
        raise ValueError(f"k_max must be in 1..{t.shape[0]}")
    sweep = pencil_sweep(t, m)
    reports = [range_from_sweep(sweep, k) for k in range(1, k_max + 1)]
    worst = -np.inf
    for lo, hi in zip(reports[1:], reports[:-1]):
        if lo.region.is_empty:
            continue
        if hi.region.is_empty:
            worst = np.inf
            break
        for theta in sweep.thetas:
            u = complex(np.cos(theta), np.sin(theta))
            gap = (u * lo.region.vertices).real.max() - (u * hi.region.vertices).real.max()
            worst = max(worst, gap)
    worst = max(worst, 0.0)
    return _report("P6", worst, NESTING_SLACK, f"dim={t.shape[0]} k_max={k_max}")


def _convex_hull(points: np.ndarray) -> np.ndarray:
    """Monotone-chain hull, CCW; degenerate inputs give 1 or 2 points."""
    pts = np.unique(np.asarray(points, dtype=np.complex128))
    pts = pts[np.lexsort((pts.imag, pts.real))]
    if pts.size <= 2:
        return pts

    def half(seq):
        chain = []
        for z in seq:
            while len(chain) >= 2:
                a, b = chain[-2], chain[-1]
                if ((b - a).real * (z - a).imag - (b - a).imag * (z - a).real) <= 0:
                    chain.pop()
                else:
                    break
            chain.append(z)
        return chain

    lower = half(pts)
    upper = half(pts[::-1])
    hull = np.array(lower[:-1] + upper[:-1])
    if hull.size < 3:
        return pts[np.array([0, -1])]
    return hull


def _hull_halfplanes(points) -> list[HalfPlane]:
    """Supporting half-planes of the convex hull of a few points."""
    pts = np.asarray(points, dtype=np.complex128)
    hull = _convex_hull(pts)
    planes = []
    if hull.size >= 3:
        for i in range(hull.size):
            edge = hull[(i + 1) % hull.size] - hull[i]
            theta = np.pi / 2 - np.angle(edge)
            offset = (np.exp(1j * theta) * hull[i]).real
            planes.append(HalfPlane(theta, offset))
        return planes
    if hull.size == 2:
        base = -np.angle(hull[1] - hull[0])
    else:
        base = 0.0
    for quarter in range(4):
        theta = base + quarter * np.pi / 2
        offset = (np.exp(1j * theta) * hull).real.max()
        planes.append(HalfPlane(theta, float(offset)))
    return planes


def normal_oracle(eigs, k: int) -> ConvexRegion:
    """Rank-k range of a normal matrix from its eigenvalues alone.

    Intersects the convex hulls of all (n-k+1)-element eigenvalue
    subsets.  Exact up to the clip relaxation; limited to n <= 8.
    """
    eigs = np.asarray(eigs, dtype=np.complex128).ravel()
    n = eigs.size
    if not 2 <= n <= NORMAL_ORACLE_MAX_DIM:
        raise TooLargeError(f"normal oracle supports 2 <= n <= {NORMAL_ORACLE_MAX_DIM}")
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}")
    planes = []
    for subset in combinations(range(n), n - k + 1):
        planes.extend(_hull_halfplanes(eigs[list(subset)]))
    return intersect_halfplanes(planes, bound=float(np.abs(eigs).max()) + 1.0)


def hermitian_oracle(values, k: int) -> ConvexRegion:
    """Closed-form range of a Hermitian matrix with the given eigenvalues.

    With ascending eigenvalues l_1 <= ... <= l_n the range is
    [l_k, l_{n+1-k}]: a segment, a point when the endpoints coincide, and
    empty when they cross.
    """
    vals = np.sort(np.asarray(values, dtype=float))
    n = vals.size
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}")
    lo, hi = vals[k - 1], vals[n - k]
    if lo > hi:
        return ConvexRegion.empty()
    if hi - lo <= 1e-9:
        return ConvexRegion.point(complex((lo + hi) / 2.0, 0.0))
    return ConvexRegion.segment(complex(lo, 0.0), complex(hi, 0.0))


def haagerup_bound_check(t, m: int = VERIFY_ANGLES) -> PropertyReport:
    """Numerical radius of a nilpotent T against ||T|| cos(pi/(n+1)).

    The note records the slack; equality within tolerance is flagged,
    which is the expected outcome for multiples of the shift.
    """
    t = as_matrix(t)
    n = nilpotency_index(t)
    norm = spectral_norm(t)
    radius = numerical_radius(t, m)
    bound = norm * float(np.cos(np.pi / (n + 1)))
    violation = max(radius - bound, 0.0)
    slack = bound - radius
    note = f"slack={slack:.3e}"
    if abs(slack) <= HAAGERUP_SLACK:
        note += " equality"
    return _report("HAAGERUP", violation, HAAGERUP_SLACK,
                   f"dim={t.shape[0]} index={n} norm={norm:.6f}", note)


def montecarlo_range(t, samples: int = 100_000, seed: int = 0) -> ConvexRegion:
    """Convex hull of sampled Rayleigh quotients <Tx, x> (inner estimate)."""
    t = as_matrix(t)
    rng = generator(seed)
    d = t.shape[0]
    x = rng.normal(size=(d, samples)) + 1j * rng.normal(size=(d, samples))
    x /= np.sqrt((np.abs(x) ** 2).sum(axis=0))
    quotients = (x.conj() * (t @ x)).sum(axis=0)
    hull = _convex_hull(quotients)
    if hull.size == 1:
        return ConvexRegion.point(hull[0])
    if hull.size == 2:
        return ConvexRegion.segment(hull[0], hull[1])
    return ConvexRegion.polygon(hull)


def normal_eigenvalues(t, rtol: float = 1e-10) -> np.ndarray:
    """Eigenvalues of a normal matrix via its commuting Hermitian parts.

    Diagonalises (T + T*)/2, then diagonalises the skew part compressed
    to each eigenvalue cluster.  Raises ValueError when T is not normal.
    """
    t = as_matrix(t)
    scale = max(1.0, frobenius(t) ** 2)
    if frobenius(t @ t.conj().T - t.conj().T @ t) > rtol * scale:
        raise ValueError("matrix is not normal within tolerance")
    re_part = (t + t.conj().T) / 2.0
    im_part = (t - t.conj().T) / 2j
    eig_re = hermitian_eig(re_part)
    gap_tol = 1e-8 * max(1.0, float(np.abs(eig_re.values).max()))
    eigs = []
    start = 0
    n = t.shape[0]
    for stop in range(1, n + 1):
        if stop < n and eig_re.values[start] - eig_re.values[stop] <= gap_tol:
            continue
        block = eig_re.vectors[:, start:stop]
        compressed = block.conj().T @ im_part @ block
        compressed = (compressed + compressed.conj().T) / 2.0
        imag_vals, _ = eig_hermitian_stack(compressed[None], vectors=False)
        a = eig_re.values[start:stop].mean()
        eigs.extend(a + 1j * b for b in imag_vals[0])
        start = stop
    return np.array(eigs, dtype=np.complex128)


# ---------------------------------------------------------------------------
# seeded sampling helpers (PCG64 so that trials reproduce exactly)

def generator(seed: int) -> np.random.Generator:
    """The package-wide seedable RNG: numpy's PCG64 stream."""
    return np.random.Generator(np.random.PCG64(seed))


def random_matrix(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * z


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Unitary from twice-iterated Gram-Schmidt on a Gaussian matrix."""
    a = random_matrix(dim, rng)
    q = np.zeros_like(a)
    for j in range(dim):
        v = a[:, j].copy()
        for _ in range(2):
            for i in range(j):
                v -= (q[:, i].conj() @ v) * q[:, i]
        norm = np.sqrt((np.abs(v) ** 2).sum())
        q[:, j] = v / norm
    return q


def random_isometry(dim: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    if not 1 <= cols <= dim:
        raise ValueError("column count must be in 1..dim")
    return random_unitary(dim, rng)[:, :cols]


def random_nilpotent_contraction(
    dim: int, rng: np.random.Generator, norm: float | None = None
) -> np.ndarray:
    """Strictly lower-triangular Gaussian matrix scaled to spectral norm <= 1.

    ``norm=1.0`` lands exactly on the contraction boundary, which drives
    the defect rank below full; otherwise the target norm is drawn
    uniformly from [0.3, 1).
    """
    while True:
        x = np.tril(random_matrix(dim, rng), -1)
        s = spectral_norm(x)
        if s > 1e-8:
            break
    target = rng.uniform(0.3, 1.0) if norm is None else float(norm)
    return x * (target / s)
