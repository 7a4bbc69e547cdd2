import numpy as np
import pytest

from qutritcorr import (DensityMatrix, RAW_CONVENTION, analytic_gd_isotropic,
                        analytic_negativity_dephasing,
                        analytic_negativity_depolarizing, evolve, gd_exact,
                        gd_lower_bound, isotropic_family, make_bell_state,
                        negativity, project_measurement, random_density_matrix,
                        random_unitary, tensor)

RNG = np.random.default_rng(77)


def classical_quantum_state(rng):
    weights = rng.uniform(0.2, 1.0, size=3)
    weights /= weights.sum()
    mat = np.zeros((9, 9), dtype=complex)
    for k in range(3):
        block = random_density_matrix(3, rng=rng).matrix
        mat[3 * k:3 * k + 3, 3 * k:3 * k + 3] = weights[k] * block
    return DensityMatrix(mat, (3, 3))


def hs_distance_sq(a, b):
    diff = a - b
    return float(np.vdot(diff, diff).real)


def test_project_measurement_computational_basis_on_bell():
    bell = make_bell_state(3)
    measured = project_measurement(bell, np.eye(3))
    expected = np.zeros((9, 9), dtype=complex)
    expected[[0, 4, 8], [0, 4, 8]] = 1.0 / 3.0
    np.testing.assert_allclose(measured.matrix, expected, atol=1e-14)


def test_project_measurement_is_idempotent():
    rho = random_density_matrix(3, 3, rng=RNG)
    u = random_unitary(3, rng=RNG)
    once = project_measurement(rho, u)
    twice = project_measurement(once, u)
    np.testing.assert_allclose(once.matrix, twice.matrix, atol=1e-13)


def test_project_measurement_acts_on_chosen_side():
    rho = random_density_matrix(3, 3, rng=RNG)
    u = random_unitary(3, rng=RNG)
    lifted = tensor(np.eye(3), u)
    moved = DensityMatrix(lifted @ rho.matrix @ lifted.conj().T, (3, 3))
    left = project_measurement(moved, u, side="B")
    right = DensityMatrix(
        lifted @ project_measurement(rho, np.eye(3), side="B").matrix @ lifted.conj().T,
        (3, 3))
    np.testing.assert_allclose(left.matrix, right.matrix, atol=1e-13)


def test_project_measurement_rejects_non_unitary():
    rho = make_bell_state(3)
    with pytest.raises(ValueError):
        project_measurement(rho, np.ones((3, 3)))
    with pytest.raises(ValueError):
        project_measurement(rho, np.eye(3), side="C")


def test_gd_exact_bell_value():
    result = gd_exact(make_bell_state(3), restarts=4, seed=0)
    assert abs(result.value - 2.0 / 3.0) < 1e-10
    assert result.restarts_used == 4
    assert result.residual < 1e-6


def test_gd_exact_is_deterministic():
    rho = random_density_matrix(3, 3, rng=3)
    r1 = gd_exact(rho, restarts=6, seed=42)
    r2 = gd_exact(rho, restarts=6, seed=42)
    assert r1.value == r2.value
    np.testing.assert_array_equal(r1.basis, r2.basis)


def test_gd_exact_vanishes_on_classical_quantum_states():
    for _ in range(3):
        rho = classical_quantum_state(RNG)
        assert gd_exact(rho, restarts=8, seed=0).value <= 1e-8


def test_gd_exact_never_beats_a_probed_basis():
    rho = random_density_matrix(3, 3, rng=RNG)
    result = gd_exact(rho, restarts=8, seed=1)
    for _ in range(10):
        basis = random_unitary(3, rng=RNG)
        probed = hs_distance_sq(rho.matrix,
                                project_measurement(rho, basis).matrix)
        assert result.value <= probed + 1e-12


def test_gd_exact_value_matches_projection_distance_at_returned_basis():
    rho = random_density_matrix(3, 3, rng=5)
    result = gd_exact(rho, restarts=8, seed=0)
    direct = hs_distance_sq(rho.matrix,
                            project_measurement(rho, result.basis).matrix)
    assert abs(result.value - direct) < 1e-12


def test_gd_exact_invariant_under_unmeasured_side_unitary():
    rho = random_density_matrix(3, 3, rng=8)
    w = random_unitary(3, rng=9)
    lifted = tensor(np.eye(3), w)
    rotated = DensityMatrix(lifted @ rho.matrix @ lifted.conj().T, (3, 3))
    v1 = gd_exact(rho, restarts=8, seed=0).value
    v2 = gd_exact(rotated, restarts=8, seed=0).value
    assert abs(v1 - v2) < 1e-6


def test_gd_exact_side_b_mirrors_swapped_state():
    rho = random_density_matrix(3, 3, rng=21)
    swapped = DensityMatrix(
        rho.matrix.reshape(3, 3, 3, 3).transpose(1, 0, 3, 2).reshape(9, 9), (3, 3))
    v_b = gd_exact(rho, restarts=6, seed=0, side="B").value
    v_a = gd_exact(swapped, restarts=6, seed=0, side="A").value
    assert abs(v_a - v_b) < 1e-8


def test_gd_exact_rejects_bad_arguments():
    bell = make_bell_state(3)
    with pytest.raises(ValueError):
        gd_exact(bell, restarts=0)
    with pytest.raises(ValueError):
        gd_exact(bell, side="X")


def test_bound_stays_below_oracle_on_random_states():
    for _ in range(8):
        rho = random_density_matrix(3, 3, rng=RNG)
        bound = gd_lower_bound(rho, RAW_CONVENTION)
        exact = gd_exact(rho, restarts=16, seed=0).value
        assert bound <= exact + 1e-4


def test_bound_is_tight_on_isotropic_states():
    for p in (0.2, 0.5, 0.8):
        rho = isotropic_family(p)
        bound = gd_lower_bound(rho, RAW_CONVENTION)
        exact = gd_exact(rho, restarts=4, seed=0).value
        assert abs(bound - exact) < 1e-5


def test_analytic_negativity_dephasing_values():
    s = np.exp(-0.5)
    assert abs(analytic_negativity_dephasing(0.5, 0.5, 1.0)
               - (2.0 * s + s * s) / 3.0) < 1e-15
    assert analytic_negativity_dephasing(0.3, 0.7, 0.0) == 1.0
    with pytest.raises(ValueError):
        analytic_negativity_dephasing(-0.1, 0.5, 1.0)


def test_analytic_negativity_depolarizing_values_and_death():
    q = 0.5
    t_star = np.log(4.0) / (q + q)
    assert analytic_negativity_depolarizing(q, q, t_star - 1e-3) > 0.0
    assert analytic_negativity_depolarizing(q, q, t_star + 1e-3) == 0.0
    assert abs(analytic_negativity_depolarizing(q, q, 1.0)
               - (4.0 * np.exp(-1.0) - 1.0) / 3.0) < 1e-15
    with pytest.raises(ValueError):
        analytic_negativity_depolarizing(0.1, 0.1, -1.0)


@pytest.mark.parametrize("family,closed_form", [
    ("dephasing", analytic_negativity_dephasing),
    ("depolarizing", analytic_negativity_depolarizing),
])
def test_closed_forms_match_simulation_on_grid(family, closed_form):
    bell = make_bell_state(3)
    for qa, qb in ((0.2, 0.2), (0.5, 0.5), (1.0, 0.3), (1.7, 0.9)):
        for t in (0.0, 0.5, 1.0, 2.0, 5.0):
            sim = negativity(evolve(bell, family, family, qa, qb, t))
            assert abs(sim - closed_form(qa, qb, t)) < 1e-10


def test_analytic_gd_isotropic_conventions():
    assert abs(analytic_gd_isotropic(0.5, RAW_CONVENTION) - 1.0 / 6.0) < 1e-15
    assert analytic_gd_isotropic(0.5) == 2.0 * analytic_gd_isotropic(0.5, RAW_CONVENTION)
    with pytest.raises(ValueError):
        analytic_gd_isotropic(1.1)
