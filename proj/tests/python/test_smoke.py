"""Smoke tests for the python module: the bound calculators, the seeded
sampler, and the exact small-instance oracles, checked on hand-sized
instances."""

import math

import pytest

dls = pytest.importorskip("dls")

GOLDEN = (1 + 5 ** 0.5) / 2


def test_distance():
    assert dls.distance([0, 0], [3, 4]) == pytest.approx(5.0, abs=1e-15)
    assert dls.distance([1.5, -2], [1.5, -2]) == 0.0
    assert dls.distance([0, 0], [3, 4], metric="manhattan", ell=1.0) == 7.0


def test_potential():
    ds = dls.Dataset([[0.0], [1.0], [4.0]])
    phi, owner, cost = dls.potential(ds, [[0.0], [4.0]])
    assert phi == 1.0
    assert owner == [0, 0, 1]
    assert cost == [0.0, 1.0, 0.0]


def test_sampler_determinism():
    ds = dls.Dataset([[0.0], [1.0], [2.0], [10.0]])
    a = dls.d_ell_sample(ds, t=2, seed=123)
    b = dls.d_ell_sample(ds, t=2, seed=123)
    assert a.chosen == b.chosen
    assert a.phi_after == b.phi_after
    assert a.phi_after[1] <= a.phi_after[0]
    assert not a.degenerate


def test_selection_distribution():
    assert dls.selection_distribution([1.0, 1.0, 2.0]) == [0.25, 0.25, 0.5]
    with pytest.raises(ValueError):
        dls.selection_distribution([0.0, 0.0])


def test_oracle_modes():
    ds = dls.Dataset([[0.0], [2.0], [10.0]])
    cen = dls.optimal_k_clustering(ds, 2, mode="centroid")
    assert cen.phi_star == pytest.approx(2.0, abs=1e-12)
    assert cen.labels == [0, 0, 1]
    disc = dls.optimal_k_clustering(ds, 2, mode="discrete")
    assert disc.phi_star == pytest.approx(4.0, abs=1e-12)


def test_exhaustive_expectation():
    ds = dls.Dataset([[0.0], [2.0]])
    rep = dls.exhaustive_expected_phi(ds, 1)
    assert rep.expected_phi == pytest.approx(4.0, abs=1e-12)
    assert rep.branch_count == 2
    assert rep.probability_mass == pytest.approx(1.0, abs=1e-10)


def test_cover_bound():
    ds = dls.Dataset([[0.0], [1.0], [8.0], [9.0]])
    rep = dls.verify_cover_bound(ds, 2, [[1000.0]], 1)
    assert rep.uncovered == 2
    assert rep.holds
    assert rep.expected_phi <= rep.bound


def test_harmonic_and_ratios():
    assert dls.harmonic(-1) == -1.0
    assert dls.harmonic(0) == 0.0
    assert dls.harmonic(3) == pytest.approx(11 / 6, abs=1e-15)
    assert dls.single_cluster_ratios(2.0, True) == (2.0, 8.0)
    assert dls.single_cluster_ratios(1.0, False) == (2.0, 4.0)


def test_bounds():
    rep = dls.evaluate_bounds(2, 1.0)
    assert rep.ratio_bound == 8.0
    assert dls.oversampling_bound(2.0) == pytest.approx(8 * (1 + GOLDEN), abs=1e-12)
    assert dls.markov_tail(8 * (1 + GOLDEN / 15), 0.97) == pytest.approx(9.137, abs=5e-3)
    assert dls.critical_oversampling(3) == 1.0
    assert dls.critical_oversampling(22) == pytest.approx(1.32996, abs=1e-4)
    assert dls.critical_oversampling_formula(22, 1.0) == pytest.approx(1.20393, abs=1e-4)
    assert dls.refinement_constant(2, 1.0, 2.0, True) == pytest.approx(4.0, abs=1e-12)


def test_coefficients():
    gp = dls.CoeffParams.golden()
    assert dls.closed_cv(2, 1, gp) == pytest.approx(GOLDEN, abs=1e-14)
    assert dls.closed_cu(2, 1, gp) == 1.0
    grid = dls.recursion_grid(8)
    assert grid.cv(2, 1) == pytest.approx(GOLDEN, abs=1e-14)
    assert grid.cu(2, 1) == 1.0
    assert grid.cv(5, 0) == 1.0
    assert dls.verify_sufficient_conditions(grid) == []
    bad = dls.verify_sufficient_conditions(dls.closed_form_grid(20, dls.CoeffParams(0.2, 1.2)))
    assert bad, "ab < 1 must violate the recursion condition"
    ok, checks = dls.verify_closed_form_identities(gp, 30)
    assert ok
    assert all(err <= 1e-9 for err, _ in checks.values())


def test_generate_dataset():
    a = dls.generate_dataset("uniform_box", 5, d=2, seed=7)
    b = dls.generate_dataset("uniform_box", 5, d=2, seed=7)
    assert a.points == b.points
    mix = dls.generate_dataset("gaussian_mixture", 6, d=2, k_true=2, spread=0.0, seed=3)
    assert mix.point(4) == mix.point(0)
    assert mix.point(5) == mix.point(1)
