import numpy as np
import pytest

from hrnr.checks import (
    BadIsometryError,
    NotUnitaryError,
    TooLargeError,
    check_adjoint,
    check_affine,
    check_compression,
    check_direct_sum,
    check_nesting,
    check_unitary,
    generator,
    haagerup_bound_check,
    hermitian_oracle,
    normal_eigenvalues,
    normal_oracle,
    random_isometry,
    random_nilpotent_contraction,
    random_unitary,
)
from hrnr.geometry import ConvexRegion, hausdorff
from hrnr.linalg import identity
from hrnr.ranges import rank_k_range
from hrnr.shifts import shift_matrix, spectral_norm

M = 720  # interactive grid is plenty for these module tests


def random_square(dim, seed, scale=1.0):
    rng = generator(seed)
    return scale * (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))


# --- P1 affine -----------------------------------------------------------------

def test_affine_identity_transform():
    rep = check_affine(shift_matrix(3), 1, 1.0, 0.0, m=M)
    assert rep.passed and rep.discrepancy <= 1e-12


def test_affine_scaled_shifted_shift_disc():
    rep = check_affine(shift_matrix(4), 1, 2.0, 1j, m=2048)
    assert rep.passed
    # the transformed region is the radius-2cos(pi/5) disc centred at i
    report = rank_k_range(2.0 * shift_matrix(4) + 1j * identity(4), 1, 2048)
    radii = np.abs(report.region.vertices - 1j)
    assert abs(radii.max() - 2 * np.cos(np.pi / 5)) < 5e-6
    assert abs(radii.min() - 2 * np.cos(np.pi / 5)) < 5e-6


def test_affine_pure_rotation():
    t = random_square(4, 11)
    rep = check_affine(t, 1, np.exp(1j * np.pi / 3), 0.0, m=M)
    assert rep.passed, rep


def test_affine_rejects_zero_scale():
    with pytest.raises(ValueError):
        check_affine(shift_matrix(3), 1, 0.0, 1.0, m=M)


# --- P2 adjoint ------------------------------------------------------------------

def test_adjoint_hermitian_fixed_by_reflection():
    t = np.diag([0.0, 1.0, 3.0])
    rep = check_adjoint(t, 1, m=M)
    assert rep.passed and rep.discrepancy <= 1e-9


def test_adjoint_shift_disc_symmetric():
    rep = check_adjoint(shift_matrix(3), 1, m=2048)
    assert rep.passed and rep.discrepancy <= 5e-6


def test_adjoint_random():
    rep = check_adjoint(random_square(4, 21), 2, m=M)
    assert rep.passed, rep


# --- P3 direct sum ----------------------------------------------------------------

def test_direct_sum_with_itself():
    t = random_square(3, 31)
    assert check_direct_sum(t, t, 1, m=M).passed


def test_direct_sum_of_shifts():
    rep = check_direct_sum(shift_matrix(3), shift_matrix(5), 1, m=M)
    assert rep.passed


def test_direct_sum_random_pair():
    rep = check_direct_sum(random_square(3, 41), random_square(3, 42), 1, m=M)
    assert rep.passed, rep


# --- P4 unitary -------------------------------------------------------------------

def test_unitary_identity_conjugation():
    t = random_square(3, 51)
    rep = check_unitary(t, identity(3), 1, m=M)
    assert rep.passed and rep.discrepancy <= 1e-12


def test_unitary_diagonal_phases_on_shift():
    rng = generator(52)
    u = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, 4)))
    rep = check_unitary(shift_matrix(4), u, 1, m=2048)
    assert rep.passed and rep.discrepancy <= 5e-6


def test_unitary_random_conjugation():
    rng = generator(53)
    rep = check_unitary(random_square(4, 54), random_unitary(4, rng), 2, m=M)
    assert rep.passed, rep


def test_unitary_rejects_non_unitary():
    with pytest.raises(NotUnitaryError):
        check_unitary(shift_matrix(2), 2 * identity(2), 1, m=M)


# --- P5 compression ------------------------------------------------------------------

def test_compression_identity_is_equality():
    t = random_square(3, 61)
    rep = check_compression(t, identity(3), 1, m=M)
    assert rep.passed and rep.discrepancy <= 1e-9


def test_compression_leading_corner_of_shift():
    iso = np.zeros((5, 3), dtype=complex)
    iso[:3, :3] = np.eye(3)
    rep = check_compression(shift_matrix(5), iso, 1, m=2048)
    assert rep.passed
    # the corner compression is S3: its disc is strictly inside the S5 disc
    inner = rank_k_range(shift_matrix(3), 1, 720).region
    outer = rank_k_range(shift_matrix(5), 1, 720).region
    assert inner.max_modulus() < outer.max_modulus()


def test_compression_random_subspace():
    rng = generator(62)
    rep = check_compression(random_square(5, 63), random_isometry(5, 3, rng), 1, m=M)
    assert rep.passed, rep


def test_compression_rejects_bad_columns():
    with pytest.raises(BadIsometryError):
        check_compression(shift_matrix(3), np.ones((3, 2), dtype=complex), 1, m=M)
    with pytest.raises(BadIsometryError):
        check_compression(shift_matrix(3), identity(3)[:, :1], 2, m=M)


# --- P6 nesting ---------------------------------------------------------------------

def test_nesting_shift_radii():
    rep = check_nesting(shift_matrix(6), 3, m=2048)
    assert rep.passed
    radii = [rank_k_range(shift_matrix(6), k, 720).region.max_modulus()
             for k in (1, 2, 3)]
    assert radii[0] > radii[1] > radii[2]


def test_nesting_hermitian_intervals():
    rep = check_nesting(np.diag([1.0, 2.0, 3.0, 4.0, 5.0]), 2, m=M)
    assert rep.passed


def test_nesting_random():
    rep = check_nesting(random_square(5, 71), 3, m=M)
    assert rep.passed, rep


# --- oracles -------------------------------------------------------------------------

def pentagon_eigs():
    return np.exp(2j * np.pi * np.arange(5) / 5)


def test_normal_oracle_rank1_is_hull():
    region = normal_oracle(pentagon_eigs(), 1)
    assert region.kind == "polygon"
    ideal = ConvexRegion.polygon(pentagon_eigs())
    assert hausdorff(region, ideal) <= 1e-9


def test_normal_oracle_vs_engine_rank2():
    oracle = normal_oracle(pentagon_eigs(), 2)
    engine = rank_k_range(np.diag(pentagon_eigs()), 2, 65536).region
    assert hausdorff(engine, oracle) <= 1e-4


def test_normal_oracle_real_eigs_reduce_to_interval():
    eigs = np.array([0.0, 1.0, 2.0, 3.0], dtype=complex)
    region = normal_oracle(eigs, 2)
    oracle = hermitian_oracle(eigs.real, 2)
    assert region.kind == "segment"
    assert hausdorff(region, oracle) <= 1e-9


def test_normal_oracle_size_guard():
    with pytest.raises(TooLargeError):
        normal_oracle(np.arange(9, dtype=complex), 1)


def test_hermitian_oracle_tags():
    vals = [0.0, 1.0, 2.0, 3.0]
    assert hermitian_oracle(vals, 1).kind == "segment"
    assert hermitian_oracle(vals, 3).kind == "empty"
    assert hermitian_oracle([1.0, 2.0, 3.0], 2).kind == "point"


def test_normal_eigenvalues_recovers_spectrum():
    rng = generator(81)
    eigs = rng.normal(size=5) + 1j * rng.normal(size=5)
    u = random_unitary(5, rng)
    t = u.conj().T @ np.diag(eigs) @ u
    got = np.sort_complex(normal_eigenvalues(t))
    assert np.abs(got - np.sort_complex(eigs)).max() < 1e-8


def test_normal_eigenvalues_handles_tied_real_parts():
    got = np.sort_complex(normal_eigenvalues(np.diag(pentagon_eigs())))
    assert np.abs(got - np.sort_complex(pentagon_eigs())).max() < 1e-8


def test_normal_eigenvalues_rejects_non_normal():
    with pytest.raises(ValueError):
        normal_eigenvalues(shift_matrix(3) + np.diag([1.0, 0, 0]))


# --- radius bound ------------------------------------------------------------------------

def test_haagerup_equality_for_shift():
    rep = haagerup_bound_check(shift_matrix(7))
    assert rep.passed
    assert "equality" in rep.note
    assert abs(spectral_norm(shift_matrix(7)) * np.cos(np.pi / 8)
               - 0.9238795325112867) < 1e-12


def test_haagerup_equality_for_scaled_shift():
    rep = haagerup_bound_check(0.3 * shift_matrix(4))
    assert rep.passed and "equality" in rep.note


def test_haagerup_random_strict_inequality():
    rng = generator(91)
    t = random_nilpotent_contraction(5, rng, norm=1.0)
    rep = haagerup_bound_check(t)
    assert rep.passed
    assert rep.discrepancy == 0.0


def test_report_pass_iff_within_tolerance():
    rep = check_affine(shift_matrix(3), 1, 1.0, 0.0, m=M)
    assert rep.passed == (rep.discrepancy <= rep.tolerance)


def test_hausdorff_symmetry_of_equality_checks():
    a = rank_k_range(random_square(4, 99), 1, M).region
    b = rank_k_range(random_square(4, 98), 1, M).region
    assert hausdorff(a, b) == pytest.approx(hausdorff(b, a), abs=1e-12)


def test_checks_deterministic_for_fixed_inputs():
    t = random_square(4, 97)
    u = random_unitary(4, generator(96))
    first = check_unitary(t, u, 2, m=64)
    second = check_unitary(t, u, 2, m=64)
    assert first == second
