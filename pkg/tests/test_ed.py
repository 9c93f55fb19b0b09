import numpy as np
import pytest
from dataclasses import replace

from dickelab.ed import auto_nmax, ground_state_scan, solve_full, solve_ground, solve_sector
from dickelab.model import FullBasis, ModelParams, photon_annihilation
from dickelab.theory import saddle_point

RESONANT = ModelParams(omega_a=1, omega_b=1, g=1.0, n_atoms=1)


def test_solve_sector_jaynes_cummings_doublet():
    spec = solve_sector(replace(RESONANT, g=1.0), 2)
    assert np.allclose(spec.energies, [1.5 - np.sqrt(2), 1.5 + np.sqrt(2)], atol=1e-12)


def test_solve_sector_vacuum():
    spec = solve_sector(ModelParams(omega_a=2.0, omega_b=0.6, g=1.0, n_atoms=4), 0)
    assert spec.energies.shape == (1,)
    assert spec.energies[0] == pytest.approx(-4 * 0.6 / 2, abs=1e-14)


def test_solve_sector_higgs_gap_near_analytic():
    params = ModelParams(omega_a=1, omega_b=1, g=2.0, n_atoms=3)
    spec = solve_sector(params, 4)
    assert spec.energies.size == 4
    gap = spec.energies[1] - spec.energies[0]
    assert gap == pytest.approx(np.sqrt(19), rel=0.10)


@pytest.mark.parametrize("g", [0.3, 1.0, 2.4])
def test_jaynes_cummings_closed_form(g):
    params = ModelParams(omega_a=1, omega_b=1, g=g, n_atoms=1)
    for p in range(1, 12):
        spec = solve_sector(params, p)
        expected = np.sort([p - 0.5 - g * np.sqrt(p), p - 0.5 + g * np.sqrt(p)])
        assert np.abs(spec.energies - expected).max() <= 1e-10


def test_amplitudes_are_normalized():
    spec = solve_sector(ModelParams(omega_a=1, omega_b=1, g=1.5, n_atoms=4), 6)
    norms = (spec.amplitudes**2).sum(axis=0)
    assert np.allclose(norms, 1.0, atol=1e-12)


def test_ground_scan_weak_coupling_vacuum():
    params = ModelParams(omega_a=1, omega_b=1, g=1.0, n_atoms=3)
    points = ground_state_scan(params, [1e-4, 0.1, 0.5])
    for pt in points:
        assert pt.p_star == 0
        assert pt.ground_energy == pytest.approx(-1.5, abs=1e-12)
        assert pt.e_higgs is None


def test_first_staircase_jump_regression():
    # resonance: the P=1 sector crosses the vacuum exactly at g = g_c
    params = ModelParams(omega_a=1, omega_b=1, g=1.0, n_atoms=3)
    assert solve_ground(params).point.p_star == 0  # tie resolves to smaller P
    assert solve_ground(replace(params, g=1 - 1e-9)).point.p_star == 0
    assert solve_ground(replace(params, g=1 + 1e-6)).point.p_star == 1


def test_staircase_monotone_unit_steps():
    params = ModelParams(omega_a=1, omega_b=1, g=1.0, n_atoms=3)
    gs = np.linspace(0.5, 2.5, 120)
    points = ground_state_scan(params, gs)
    stars = np.array([pt.p_star for pt in points])
    steps = np.diff(stars)
    assert np.all(steps >= 0)
    assert set(steps.tolist()) <= {0, 1}


def test_ground_scan_rejects_bad_grids():
    params = ModelParams(omega_a=1, omega_b=1, g=1.0, n_atoms=2)
    with pytest.raises(ValueError):
        ground_state_scan(params, [])
    with pytest.raises(ValueError):
        ground_state_scan(params, [2.0, 1.0])


def test_sector_energies_shift_with_constant_diagonal_term():
    # for N=1 the qubit-qubit term is the constant u/2, a pure diagonal shift
    base = ModelParams(omega_a=1, omega_b=1, g=0.9, n_atoms=1)
    shifted = replace(base, u=0.8)
    for p in (1, 3, 6):
        e0 = solve_sector(base, p).energies
        e1 = solve_sector(shifted, p).energies
        assert np.abs(e1 - (e0 + 0.4)).max() <= 1e-12


def test_sector_eigenstates_have_exactly_zero_photon_coherence():
    # a|psi> lives in the adjacent sector, so <psi|a|psi> has disjoint support
    params = ModelParams(omega_a=1, omega_b=1, g=2.0, n_atoms=3)
    n_max = 12
    basis = FullBasis(n_atoms=3, n_max=n_max)
    a = photon_annihilation(basis)
    for p in (2, 4):
        spec = solve_sector(params, p)
        for l in range(spec.basis.dim):
            embedded = np.zeros(basis.dim)
            for s in range(spec.basis.dim):
                embedded[basis.index(p - s, s)] = spec.amplitudes[s, l]
            assert embedded @ (a @ embedded) == 0.0


def test_solve_full_decoupled_ladder():
    params = ModelParams(omega_a=1, omega_b=1, g=0.0, n_atoms=1)
    even = solve_full(params, 5, 1)
    odd = solve_full(params, 5, -1)
    ladder = np.sort(np.concatenate([np.arange(6) - 0.5, np.arange(6) + 0.5]))
    combined = np.sort(np.concatenate([even.energies, odd.energies]))
    assert np.allclose(combined, ladder, atol=1e-12)
    assert np.allclose(even.energies, [-0.5, 1.5, 1.5, 3.5, 3.5, 5.5], atol=1e-12)
    assert np.allclose(odd.energies, [0.5, 0.5, 2.5, 2.5, 4.5, 4.5], atol=1e-12)


def test_solve_full_matches_sector_union_without_crw():
    params = ModelParams(omega_a=1.2, omega_b=0.8, g=1.1, n_atoms=2)
    n_max = 6
    even = solve_full(params, n_max, 1)
    odd = solve_full(params, n_max, -1)
    blocks = np.sort(np.concatenate([even.energies, odd.energies]))
    # sectors fully inside the truncation are exact subsets of the block union
    for p in range(n_max + 1):
        for e in solve_sector(params, p).energies:
            assert np.abs(blocks - e).min() <= 1e-10


def test_solve_full_ground_state_is_even_at_weak_coupling():
    params = ModelParams(omega_a=1, omega_b=1, g=0.2, g_prime=0.2, n_atoms=2)
    even = solve_full(params, 10, 1)
    odd = solve_full(params, 10, -1)
    assert even.energies[0] < odd.energies[0]


def test_solve_full_validates_arguments():
    params = ModelParams(omega_a=1, omega_b=1, g=0.5, n_atoms=2)
    with pytest.raises(ValueError):
        solve_full(params, 5, 0)
    with pytest.raises(ValueError):
        solve_full(params, 0, 1)


def test_landau_level_separation_deep_superradiant():
    params = ModelParams(omega_a=1, omega_b=1, g=3.0, n_atoms=5)
    point = solve_ground(params).point
    assert point.e_higgs / point.e_goldstone >= 5 / 2


def test_auto_nmax_floor_for_decoupled_system():
    params = ModelParams(omega_a=1, omega_b=1, g=0.0, n_atoms=2)
    assert auto_nmax(params, 1, tol=1e-8) == 8


def test_auto_nmax_regression_with_crw():
    params = ModelParams(omega_a=1, omega_b=1, g=2.0, g_prime=0.2, n_atoms=2)
    assert auto_nmax(params, 1, tol=1e-8) == 16
    assert auto_nmax(params, -1, tol=1e-8) == 14


def test_auto_nmax_tracks_condensate_occupation():
    params = ModelParams(omega_a=1, omega_b=1, g=5.0, n_atoms=2)
    occupation = saddle_point(params).lambda_a ** 2
    assert occupation > 8
    assert auto_nmax(params, 1, tol=1e-8) >= occupation


def test_certificates_travel_with_spectra():
    params = ModelParams(omega_a=1, omega_b=1, g=2.0, n_atoms=4)
    spec = solve_sector(params, 5)
    assert spec.max_residual <= 1e-8 * 10
    assert spec.ortho_defect <= 1e-10
    full = solve_full(params, 8, 1)
    assert full.max_residual <= 1e-8 * 10
    assert full.ortho_defect <= 1e-10
