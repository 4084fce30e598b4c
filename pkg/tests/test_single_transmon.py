import numpy as np
import pytest

from transmon_chaos import (ConvergenceError, TransmonParams, build_lattice,
                            effective_scales, solve_single_transmon,
                            transmon_frequency)

from conftest import asymptotic_transmon_levels


def test_charging_only_spectrum():
    # E_J = 0 decouples charge states: spectrum 4 E_C m^2, m = 0, +-1, ...
    sol = solve_single_transmon(TransmonParams(e_c=0.25, e_j=0.0, n_max=5, levels=3))
    np.testing.assert_allclose(sol.levels, [0.0, 1.0, 1.0], atol=1e-12)


def test_levels_match_asymptotic_expansion():
    e_c, e_j = 0.25, 12.5
    sol = solve_single_transmon(TransmonParams(e_c, e_j, n_max=15, levels=4))
    oracle = asymptotic_transmon_levels(e_c, e_j, 3)
    # the expansion truncates at O(E_C); level spacings agree to ~1%
    np.testing.assert_allclose(np.diff(sol.levels), np.diff(oracle), rtol=0.02)


def test_levels_match_high_cutoff_oracle():
    e_c, e_j = 0.25, 12.5
    sol = solve_single_transmon(TransmonParams(e_c, e_j, n_max=15, levels=4))
    big = solve_single_transmon(TransmonParams(e_c, e_j, n_max=40, levels=4))
    np.testing.assert_allclose(sol.levels, big.levels, atol=1e-10)


def test_anharmonicity_deep_transmon_limit():
    # anharmonicity -> -E_C as E_J/E_C -> infinity; at ratio 50 the exact
    # value sits ~15% below (known next-order correction ~ sqrt(E_C/E_J))
    sol = solve_single_transmon(TransmonParams(0.25, 12.5, n_max=15, levels=4))
    assert -1.20 * 0.25 < sol.anharmonicity < -1.10 * 0.25
    deep = solve_single_transmon(TransmonParams(0.25, 1250.0, n_max=60, levels=4))
    assert abs(deep.anharmonicity + 0.25) < 0.05 * 0.25


def test_charge_parity_selection_rule():
    for e_j in (0.0, 5.0, 12.5, 44.0):
        sol = solve_single_transmon(TransmonParams(0.25, e_j, n_max=15, levels=5))
        n = sol.charge_elements
        np.testing.assert_allclose(np.diag(n), 0.0, atol=1e-12)
        for k in range(5):
            for l in range(5):
                if (k - l) % 2 == 0:
                    assert n[k, l] == 0.0
        np.testing.assert_allclose(n, n.T, atol=1e-12)


def test_gauge_positive_nearest_elements():
    sol = solve_single_transmon(TransmonParams(0.25, 12.5, n_max=15, levels=5))
    for k in range(4):
        assert sol.charge_elements[k, k + 1] > 0


def test_levels_monotone_in_e_j():
    # e1 - e0 grows with E_J across a parameter grid
    for e_c in (0.2, 0.25, 0.33):
        for e_j in (5.0, 12.5, 20.0, 44.0):
            lo = solve_single_transmon(TransmonParams(e_c, e_j, 20, 3))
            hi = solve_single_transmon(TransmonParams(e_c, 1.1 * e_j, 20, 3))
            assert hi.levels[1] > lo.levels[1]


def test_cutoff_too_small_raises():
    with pytest.raises(ConvergenceError):
        solve_single_transmon(TransmonParams(0.25, 100.0, n_max=5, levels=5))


def test_truncation_convergence_tolerance():
    # retained levels move < 1e-6 GHz between n_max=15 and n_max=19
    a = solve_single_transmon(TransmonParams(0.25, 12.5, 15, 4))
    b = solve_single_transmon(TransmonParams(0.25, 12.5, 19, 4))
    assert np.max(np.abs(a.levels - b.levels)) < 1e-6


def test_param_validation():
    with pytest.raises(ValueError):
        TransmonParams(e_c=-0.1, e_j=12.5)
    with pytest.raises(ValueError):
        TransmonParams(e_c=0.25, e_j=-1.0)
    with pytest.raises(ValueError):
        TransmonParams(e_c=0.25, e_j=12.5, n_max=2)
    with pytest.raises(ValueError):
        TransmonParams(e_c=0.25, e_j=12.5, n_max=5, levels=12)


class TestEffectiveScales:
    def test_zero_coupling(self):
        lat = build_lattice("chain", 2)
        nu, hop = effective_scales(0.25, [12.5, 12.5], 0.0, lat)
        np.testing.assert_allclose(nu, [5.0, 5.0])
        assert hop[(0, 1)] == 0.0

    def test_uniform_hopping_value(self):
        # direct evaluation: t = T/(4 sqrt(2 E_C)) * sqrt(E_J) = 1.25 T here
        lat = build_lattice("chain", 2)
        t = 0.003
        nu, hop = effective_scales(0.25, [12.5, 12.5], t, lat)
        expected = t / (4.0 * np.sqrt(2.0 * 0.25)) * 12.5**0.5
        np.testing.assert_allclose(hop[(0, 1)], expected)
        np.testing.assert_allclose(hop[(0, 1)], 1.25 * t)

    def test_single_site(self):
        lat = build_lattice("chain", 2)
        single = type(lat)(n_sites=1, edges=(), geometry_tag="custom")
        nu, hop = effective_scales(0.25, [12.5], 0.01, single)
        assert hop == {}
        np.testing.assert_allclose(nu, [transmon_frequency(0.25, 12.5)])

    def test_rejects_nonpositive_ej(self):
        lat = build_lattice("chain", 2)
        with pytest.raises(ValueError):
            effective_scales(0.25, [12.5, 0.0], 0.01, lat)
