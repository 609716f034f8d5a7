"""Gap states, spectral residuals, boundary curves and region-count maps."""

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.integrate import quad

from diracdeltas import (
    Coupling,
    DeltaConfig,
    DegenerateCouplingError,
    ParticleKind,
    bound_state_wavefunction,
    boundary_curve,
    count_map,
    electric_spectral_residual,
    electric_zero_mode_residual,
    find_bound_states,
    mass_spectral_residual,
    sample_boundary_curve,
    single_delta_kappas,
    t_delta,
)
from diracdeltas.spectrum import _N_SCAN, _SCAN_EPS, _isolate_roots

E = ParticleKind.ELECTRON
P = ParticleKind.POSITRON

# Reference double-electric well; gap states frozen from a 40-digit root
# solve of the spectral equation plus the matching-chain coefficients.
REF_CFG = dict(q1=2.0, q2=2.5, a=1.0, m=1.5)
REF_GROUND = dict(kappa=1.3668960575031079, omega=0.61773389738823653,
                  b2=-0.005212998327, c2=-0.06483222104, d3=0.1221683495,
                  norm_sq=14.58667214)
REF_EXCITED = dict(kappa=0.85523421825338696, omega=1.2323045207774408,
                   b2=0.8940572057, c2=-0.2883136132, d3=-4.711532378,
                   norm_sq=0.208634617)
# single-delta gap wave numbers at m = 1, frozen from a dense 50-digit
# determinant sign scan
SINGLE_MIXED_KAPPA = 0.995287412416  # q = -0.8, lam = -1.1, electron


def _electric_cfg(q1, q2, a, m):
    return DeltaConfig.double(Coupling(q1, 0.0), Coupling(q2, 0.0), a, m)


def _mass_cfg(l1, l2, a, m):
    return DeltaConfig.double(Coupling(0.0, l1), Coupling(0.0, l2), a, m)


def _det_scan_kappas(q, lam, kind, m, n=20001):
    """Independent oracle: dense sign scan of the single-delta matching
    determinant det[T (g0 w) e^{kappa z}, w e^{-kappa z}] over the gap."""
    from scipy.optimize import brentq

    T = t_delta(Coupling(q, lam), kind)

    def resid(kap):
        kap = np.asarray(kap)
        w = np.sqrt(m * m - kap * kap)
        c = kap / (m + w)
        # electron spinor (1, i c); positron spinor (i c, 1)
        if kind is E:
            w1, w2 = np.ones_like(c), 1j * c
        else:
            w1, w2 = 1j * c, np.ones_like(c)
        g1, g2 = w1, -w2
        v1 = T[0, 0] * g1 + T[0, 1] * g2
        v2 = T[1, 0] * g1 + T[1, 1] * g2
        return (v1 * w2 - v2 * w1).imag

    grid = np.linspace(1e-9 * m, (1 - 1e-9) * m, n)
    vals = resid(grid)
    sb = np.signbit(vals)
    flips = np.nonzero(sb[1:] != sb[:-1])[0]
    return sorted((brentq(lambda t: float(resid(t)), grid[i], grid[i + 1], xtol=1e-13)
                   for i in flips), reverse=True)


def _quad_norm(cfg, state):
    """Normalization oracle: adaptive quadrature of |psi|^2 over the line."""
    def dens(z):
        psi = bound_state_wavefunction(cfg, state, z)
        return float(np.sum(np.abs(psi) ** 2))

    zs = [z for z, _ in cfg.deltas]
    bounds = [(-np.inf, zs[0])] + list(zip(zs, zs[1:])) + [(zs[-1], np.inf)]
    return sum(quad(dens, lo, hi, epsabs=1e-12, epsrel=1e-12, limit=200)[0]
               for lo, hi in bounds)


# ---------------------------------------------------------------- single delta

def test_single_delta_kappa_reference_values():
    assert_allclose(single_delta_kappas(Coupling(1.0, 0.0), P, 1.0), [np.sin(1.0)], rtol=1e-12)
    assert single_delta_kappas(Coupling(1.0, 0.0), E, 1.0) == []
    assert_allclose(single_delta_kappas(Coupling(2.0, 0.0), E, 1.0), [np.sin(2.0)], rtol=1e-12)
    assert_allclose(single_delta_kappas(Coupling(0.0, 1.0), P, 1.0), [np.tanh(1.0)], rtol=1e-12)
    assert_allclose(single_delta_kappas(Coupling(0.0, -1.0), E, 1.0), [np.tanh(1.0)], rtol=1e-12)
    assert_allclose(
        single_delta_kappas(Coupling(-0.8, -1.1), E, 1.0), [SINGLE_MIXED_KAPPA], rtol=1e-10
    )
    assert single_delta_kappas(Coupling(1.2, 0.7), E, 1.0) == []
    assert single_delta_kappas(Coupling(1.2, 0.7), P, 1.0) == []


def test_single_delta_kappas_scale_with_mass():
    for m in (0.5, 2.0, 7.5):
        assert_allclose(
            single_delta_kappas(Coupling(1.0, 0.0), P, m), [m * np.sin(1.0)], rtol=1e-12
        )


def test_single_delta_kappas_match_determinant_scan():
    rng = np.random.default_rng(13)
    for _ in range(25):
        q, lam = rng.uniform(-3, 3, size=2)
        m = rng.uniform(0.3, 2.5)
        for kind in (E, P):
            got = single_delta_kappas(Coupling(q, lam), kind, m)
            want = _det_scan_kappas(q, lam, kind, m)
            assert len(got) == len(want), (q, lam, kind, m)
            for g, w in zip(got, want):
                assert abs(g - w) <= 1e-9 * m


def test_single_delta_domain():
    with pytest.raises(ValueError):
        single_delta_kappas(Coupling(1.0, 0.0), E, 0.0)


# ---------------------------------------------------------------- residuals

def test_electric_residual_frozen_value():
    got = electric_spectral_residual(0.5, np.pi / 2, np.pi / 2, 1.0, 1.0, E)
    assert_allclose(got, -0.61466471676338731, rtol=1e-14)


def test_residuals_vanish_at_threshold_and_vectorize():
    kap = np.array([0.0, 0.3, 0.6])
    Fe = electric_spectral_residual(kap, 1.0, 1.3, 0.9, 1.0, E)
    assert Fe.shape == (3,) and Fe[0] == 0.0
    Fm = mass_spectral_residual(kap, 0.7, -0.4, 0.9, 1.0, P)
    assert Fm.shape == (3,) and Fm[0] == 0.0


def test_residual_degeneracy_and_domain():
    with pytest.raises(DegenerateCouplingError):
        electric_spectral_residual(0.5, np.pi, 1.0, 1.0, 1.0, E)
    with pytest.raises(DegenerateCouplingError):
        mass_spectral_residual(0.5, 0.0, 1.0, 1.0, 1.0, E)
    with pytest.raises(ValueError):
        electric_spectral_residual(1.5, 1.0, 1.0, 1.0, 1.0, E)
    with pytest.raises(ValueError):
        mass_spectral_residual(1.0, 0.5, 0.5, 1.0, 1.0, E)  # gap edge excluded


def test_mass_residual_diverges_at_gap_edge():
    # the mass well supports no threshold states: F -> -inf as kappa -> m
    F = mass_spectral_residual(1.0 - 1e-9, 0.8, 1.2, 1.0, 1.0, E)
    assert F < -1e6


def test_zero_mode_residual_locus():
    p = 1.2
    q1 = 0.7
    q2 = np.pi / 2 - np.arctan(np.exp(-4 * p) * np.tan(q1))  # cot q2 = e^{-4p} tan q1
    assert abs(electric_zero_mode_residual(q1, q2, p)) <= 1e-12
    assert abs(electric_zero_mode_residual(q1, q2 + 0.05, p)) > 1e-3
    # the residual equals the electric gap residual at the edge kappa = m
    for kind in (E, P):
        edge = electric_spectral_residual(1.0, q1, q2, p, 1.0, kind)
        assert abs(edge) <= 1e-12


# ---------------------------------------------------------------- bound states

def test_double_electric_reference_ground_state():
    cfg = _electric_cfg(**REF_CFG)
    states = find_bound_states(cfg, E)
    assert len(states) == 2
    s = states[0]
    assert abs(s.kappa - REF_GROUND["kappa"]) <= 1e-9
    assert abs(s.omega - REF_GROUND["omega"]) <= 1e-9
    assert s.a1 == 1.0
    for name in ("b2", "c2", "d3"):
        assert abs(getattr(s, name) - REF_GROUND[name]) <= 1e-8
    assert abs(s.norm_const**2 - REF_GROUND["norm_sq"]) <= 1e-6
    assert abs(s.residual) <= 1e-12


def test_double_electric_reference_excited_state():
    cfg = _electric_cfg(**REF_CFG)
    s = find_bound_states(cfg, E)[1]
    assert abs(s.kappa - REF_EXCITED["kappa"]) <= 1e-9
    assert abs(s.omega - REF_EXCITED["omega"]) <= 1e-9
    for name in ("b2", "c2", "d3"):
        assert abs(getattr(s, name) - REF_EXCITED[name]) <= 1e-8
    assert abs(s.norm_const**2 - REF_EXCITED["norm_sq"]) <= 1e-6


def test_bound_state_normalization_against_quadrature():
    cfg = _electric_cfg(**REF_CFG)
    for state in find_bound_states(cfg, E):
        assert abs(_quad_norm(cfg, state) - 1.0) <= 1e-8


def test_single_delta_bound_state_reconstruction():
    cfg = DeltaConfig.single(1.0, 0.0, 1.0)
    states = find_bound_states(cfg, P)
    assert len(states) == 1
    s = states[0]
    assert_allclose(s.kappa, np.sin(1.0), rtol=1e-12)
    assert s.b2 == 0.0 and s.c2 == 0.0 and s.a1 == 1.0
    assert abs(_quad_norm(cfg, s) - 1.0) <= 1e-8


def test_mixed_coupling_states_satisfy_jump_conditions():
    cfg = DeltaConfig.double(Coupling(0.3, -1.0), Coupling(-0.2, -0.8), 1.0, 1.0)
    states = find_bound_states(cfg, E)
    assert states, "mixed attractive pair should bind"
    eps = 1e-9
    for s in states:
        assert 0.0 < s.kappa < cfg.m
        assert abs(_quad_norm(cfg, s) - 1.0) <= 1e-8
        for z0, c in cfg.deltas:
            left = bound_state_wavefunction(cfg, s, z0 - eps)[:, 0]
            right = bound_state_wavefunction(cfg, s, z0 + eps)[:, 0]
            jump = t_delta(c, E) @ left
            assert np.max(np.abs(jump - right)) <= 1e-6 * np.max(np.abs(right))


def test_free_double_configuration_has_no_states():
    cfg = _electric_cfg(0.0, 0.0, 1.0, 1.0)
    assert find_bound_states(cfg, E) == []
    assert find_bound_states(cfg, P) == []


def test_attractive_mass_pair_splits_into_two_states():
    single = single_delta_kappas(Coupling(0.0, -1.0), E, 1.0)
    cfg = _mass_cfg(-1.0, -1.0, 1.0, 1.0)
    states = find_bound_states(cfg, E)
    assert len(states) == 2
    kappas = [s.kappa for s in states]
    assert kappas[0] > kappas[1]  # sorted deepest first
    # the pair brackets the isolated-well level
    assert kappas[1] < single[0] < kappas[0]


def test_bound_states_rescale_with_p_inv():
    # kappa/m depends only on the couplings and the product a*m
    s1 = find_bound_states(_electric_cfg(2.0, 2.5, 1.0, 1.5), E)
    s2 = find_bound_states(_electric_cfg(2.0, 2.5, 3.0, 0.5), E)
    assert len(s1) == len(s2)
    for a, b in zip(s1, s2):
        assert abs(a.kappa / 1.5 - b.kappa / 0.5) <= 1e-9


def test_wavefunction_profile_shape_and_decay():
    cfg = _electric_cfg(**REF_CFG)
    s = find_bound_states(cfg, E)[0]
    z = np.linspace(-12.0, 12.0, 501)
    psi = bound_state_wavefunction(cfg, s, z)
    assert psi.shape == (2, 501)
    amp = np.sum(np.abs(psi) ** 2, axis=0)
    assert amp[0] <= 1e-9 * amp.max()
    assert amp[-1] <= 1e-9 * amp.max()


def test_isolate_roots_refines_a_grid_tangency():
    # synthetic double root centered on a scan node is returned once
    grid = np.linspace(_SCAN_EPS, 1.0 - _SCAN_EPS, _N_SCAN)
    root = grid[700]
    roots = _isolate_roots(lambda kap: (np.asarray(kap) - root) ** 2, 1.0)
    assert len(roots) == 1
    assert abs(roots[0] - root) <= 1e-9


def test_isolate_roots_rejects_pathological_residuals():
    with pytest.raises(RuntimeError):
        _isolate_roots(lambda kap: np.sin(60 * np.pi * np.asarray(kap)), 1.0)


# ---------------------------------------------------------------- boundary curves

def test_boundary_curve_definitions():
    f = boundary_curve("tangency-electron", 1.2)
    assert_allclose(f(1.0, 2.0), 1.0 / np.tan(1.0) + 1.0 / np.tan(2.0) + 4.8, rtol=1e-14)
    g = boundary_curve("hyperbolic-positron", 0.5)
    assert_allclose(g(0.7, -1.1), 1.0 / np.tanh(0.7) + 1.0 / np.tanh(-1.1) - 2.0, rtol=1e-14)
    with pytest.raises(ValueError):
        boundary_curve("no-such-curve", 1.0)


def test_sampled_curve_points_satisfy_their_equation():
    for curve, p in (
        ("tangency-electron", 1.2),
        ("tangency-positron", 1.2),
        ("zero-mode", 1.2),
        ("hyperbolic-electron", 1.0),
        ("hyperbolic-positron", 1.0),
    ):
        f = boundary_curve(curve, p)
        branches = sample_boundary_curve(curve, p)
        assert branches, curve
        for branch in branches:
            assert branch.ndim == 2 and branch.shape[1] == 2
            resid = np.abs(f(branch[:, 0], branch[:, 1]))
            assert np.max(resid) <= 1e-9, curve


def test_crossing_tangency_curve_changes_count_by_one():
    p, q1 = 1.2, 2.0
    q2 = np.pi / 2 - np.arctan(-4.0 * p - 1.0 / np.tan(q1))  # on tangency-electron
    lo = len(find_bound_states(_electric_cfg(q1, q2 - 1e-2, p, 1.0), E))
    hi = len(find_bound_states(_electric_cfg(q1, q2 + 1e-2, p, 1.0), E))
    assert abs(hi - lo) == 1


def test_crossing_hyperbola_changes_count_by_one():
    p, l1 = 1.0, -0.8
    rhs = -4.0 * p - 1.0 / np.tanh(l1)
    l2 = np.arctanh(1.0 / rhs)
    lo = len(find_bound_states(_mass_cfg(l1, l2 - 1e-2, p, 1.0), E))
    hi = len(find_bound_states(_mass_cfg(l1, l2 + 1e-2, p, 1.0), E))
    assert abs(hi - lo) == 1


def test_crossing_zero_mode_locus_changes_count_by_one():
    p, q1 = 1.2, 0.7
    q2 = np.pi / 2 - np.arctan(np.exp(-4 * p) * np.tan(q1))
    lo = len(find_bound_states(_electric_cfg(q1, q2 - 1e-2, p, 1.0), E))
    hi = len(find_bound_states(_electric_cfg(q1, q2 + 1e-2, p, 1.0), E))
    assert abs(hi - lo) == 1


# ---------------------------------------------------------------- region maps

def test_count_map_basic_invariants():
    rm = count_map("electric", 1.2, 41, E)
    values = set(np.unique(rm.counts))
    assert values <= {-1, 0, 1, 2}
    # degenerate grid lines sin q = 0 carry the sentinel
    for i in (0, 20, 40):
        assert np.all(rm.counts[i, :] == -1)
        assert np.all(rm.counts[:, i] == -1)
    assert rm.plane == "electric" and rm.p_inv == 1.2
    assert rm.axis1[0] == 0.0 and rm.axis1[-1] == 2 * np.pi


def test_count_map_mass_plane_sentinels_and_extent():
    rm = count_map("mass", 1.0, 41, E, extent=2.5)
    assert np.all(rm.counts[20, :] == -1)
    assert np.all(rm.counts[:, 20] == -1)
    assert rm.extent == 2.5 and rm.axis1[0] == -2.5
    off = rm.counts[rm.counts >= 0]
    assert set(np.unique(off)) <= {0, 1, 2}


def test_count_map_counts_match_find_bound_states():
    rm = count_map("electric", 1.2, 21, E)
    rng = np.random.default_rng(3)
    checked = 0
    while checked < 12:
        i, j = rng.integers(21, size=2)
        if rm.counts[i, j] < 0:
            continue
        cfg = _electric_cfg(rm.axis1[i], rm.axis2[j], 1.2, 1.0)
        assert rm.counts[i, j] == len(find_bound_states(cfg, E)), (i, j)
        checked += 1


def test_count_map_positron_is_coupling_reflection_of_electron():
    for plane in ("electric", "mass"):
        ce = count_map(plane, 1.0, 30, E).counts
        cp = count_map(plane, 1.0, 30, P).counts
        assert np.array_equal(cp, ce[::-1, ::-1])


def test_count_map_scan_resolution_stability():
    a = count_map("electric", 1.2, 30, E, n_scan=2048).counts
    b = count_map("electric", 1.2, 30, E, n_scan=8192).counts
    assert np.array_equal(a, b)


def test_count_map_thread_determinism(monkeypatch):
    base = count_map("mass", 1.0, 25, E, max_workers=1)
    multi = count_map("mass", 1.0, 25, E, max_workers=4)
    assert np.array_equal(base.counts, multi.counts)
    monkeypatch.setenv("DIRACDELTAS_THREADS", "3")
    env = count_map("mass", 1.0, 25, E)
    assert np.array_equal(base.counts, env.counts)


def test_count_map_zero_mode_flags_match_the_residual_bar():
    rm = count_map("electric", 1.2, 30, E)
    zm = electric_zero_mode_residual(rm.axis1[:, None], rm.axis2[None, :], 1.2)
    expected = (np.abs(zm) <= 1e-10) & (rm.counts >= 0)
    assert np.array_equal(rm.zero_mode, expected)


def test_count_map_attaches_kind_specific_curves():
    assert set(count_map("electric", 1.2, 15, E).curves) == {"tangency-electron", "zero-mode"}
    assert set(count_map("electric", 1.2, 15, P).curves) == {"tangency-positron", "zero-mode"}
    assert set(count_map("mass", 1.0, 15, E).curves) == {"hyperbolic-electron"}
    assert set(count_map("mass", 1.0, 15, P).curves) == {"hyperbolic-positron"}


def test_count_map_validation():
    with pytest.raises(ValueError):
        count_map("radial", 1.0, 10, E)
    with pytest.raises(ValueError):
        count_map("electric", -1.0, 10, E)
