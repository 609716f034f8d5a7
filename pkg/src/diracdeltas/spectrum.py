"""Bound states of delta wells and spectral-region maps over coupling planes.

Bound states live in the mass gap: kappa in (0, m) with energy
omega = sqrt(m^2 - kappa^2).  For a symmetric double well the roots of a
real transcendental residual F(kappa) locate them; F has closed forms for
the pure-electric and pure-mass wells and a generic transfer-matrix
determinant form otherwise.  F(0) = 0 identically and is never a state; a
root exactly at the gap edge kappa = m is a zero mode (threshold state)
and is flagged rather than returned.

The region maps count bound states per cell of the (q1, q2) or
(lam1, lam2) plane.  Counts depend on the couplings and on the single
product p_inv = a*m only, which is why the map API takes p_inv rather
than a and m separately.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import GAMMA0, ParticleKind, u_plus, v_plus
from .matching import Coupling, DeltaConfig, entire_cs, t_delta, compose_transfer

__all__ = [
    "DegenerateCouplingError",
    "BoundState",
    "RegionMap",
    "single_delta_kappas",
    "electric_spectral_residual",
    "mass_spectral_residual",
    "electric_zero_mode_residual",
    "find_bound_states",
    "bound_state_wavefunction",
    "boundary_curve",
    "sample_boundary_curve",
    "count_map",
]

THREADS_ENV_VAR = "DIRACDELTAS_THREADS"

# Couplings whose residual denominators (sin q or sinh lam factors) are this
# close to zero are treated as degenerate; map cells there carry count -1.
_DEGENERATE_TOL = 1e-12

_SCAN_EPS = 1e-9          # root scan covers kappa/m in [eps, 1-eps]
_N_SCAN = 2048            # default scan resolution
_N_SCAN_MAX = 131072      # hard ceiling after x4 escalations
_TANGENCY_TOL = 1e-10     # |F| bar for accepting a sign-preserving double root

_CURVES = (
    "tangency-electron",
    "tangency-positron",
    "zero-mode",
    "hyperbolic-electron",
    "hyperbolic-positron",
)


class DegenerateCouplingError(ValueError):
    """A closed-form spectral residual was evaluated at a degenerate coupling."""


@dataclass(frozen=True)
class BoundState:
    """One gap state: root kappa, energy, piecewise coefficients, normalization.

    The wave function is A1 e^{kappa z} (g0 w) left of the well,
    B2 e^{kappa z} (g0 w) + C2 e^{-kappa z} w between the deltas and
    D3 e^{-kappa z} w to the right, with w the gap-channel spinor of the
    given kind and A1 = 1 by convention.  For a single delta there is no
    interior region and B2 = C2 = 0.  ``norm_const`` multiplies the wave
    function to unit norm; ``residual`` is the value of the defining
    transcendental equation at kappa.
    """

    kappa: float
    omega: float
    a1: float
    b2: float
    c2: float
    d3: float
    norm_const: float
    kind: ParticleKind
    residual: float


@dataclass(frozen=True)
class RegionMap:
    """Bound-state counts over a coupling plane at fixed p_inv = a*m.

    ``counts[i, j]`` is the number of gap states at (axis1[i], axis2[j]);
    degenerate cells (vanishing sin q or lam) carry the sentinel -1 and are
    excluded from any emission.  ``zero_mode[i, j]`` marks cells sitting on
    the threshold-state locus (electric plane only).  ``curves`` maps
    boundary-curve names to lists of sampled (x, y) branch arrays.
    """

    plane: str
    kind: ParticleKind
    p_inv: float
    axis1: np.ndarray
    axis2: np.ndarray
    counts: np.ndarray
    zero_mode: np.ndarray
    curves: dict
    extent: float | None = None


def _kind_sign(kind: ParticleKind) -> int:
    return 1 if kind is ParticleKind.ELECTRON else -1


def single_delta_kappas(c: Coupling, kind: ParticleKind, m) -> list:
    """All gap-state wave numbers of a single delta, largest first.

    The matching condition is linear in (omega, kappa) on the energy circle
    omega^2 + kappa^2 = m^2:  alpha omega + beta kappa = gamma with
    alpha = q S(x), beta = +-C(x) (electron/positron), gamma = -m lam S(x)
    and x = q^2 - lam^2.  Squaring out omega gives a quadratic whose
    discriminant collapses to m^2 exactly (det T = C^2 + x S^2 = 1), so the
    two closed-form branches are kappa = (beta gamma +- m |alpha|) /
    (alpha^2 + beta^2).  Squaring also admits mirror solutions with
    omega < 0; every candidate is therefore filtered by the original
    matching-condition determinant residual before being accepted.
    """
    if not m > 0:
        raise ValueError(f"bound states require a positive mass, got m={m}")
    x = c.q * c.q - c.lam * c.lam
    C, S = entire_cs(x)
    alpha = c.q * S
    beta = C if kind is ParticleKind.ELECTRON else -C
    gamma = -m * c.lam * S

    if alpha == 0.0:
        candidates = [gamma / beta] if beta != 0.0 else []
    else:
        norm = alpha * alpha + beta * beta
        candidates = [
            (beta * gamma + m * abs(alpha)) / norm,
            (beta * gamma - m * abs(alpha)) / norm,
        ]

    kappas = []
    for kap in candidates:
        if not (0.0 < kap < m):
            continue
        w = np.sqrt(m * m - kap * kap)
        resid = alpha * w + beta * kap - gamma
        scale = abs(alpha) * w + abs(beta) * kap + abs(gamma)
        if abs(resid) > 1e-8 * max(scale, m):
            continue  # mirror branch of the squared equation
        if not any(abs(kap - k0) <= 1e-12 * m for k0 in kappas):
            kappas.append(kap)
    return sorted(kappas, reverse=True)


def electric_spectral_residual(kappa, q1, q2, a, m, kind: ParticleKind):
    """Gap residual F(kappa) of the double electric well; roots are states.

    F(kappa) = e^{-4 a kappa} - 1
               - kappa (kappa cos(q1+q2) + s omega sin(q1+q2))
                 / (m^2 sin q1 sin q2),         omega = sqrt(m^2 - kappa^2),

    with s = +1 (electron) / -1 (positron).  F(0) = 0 identically; F(m) is
    the zero-mode residual.  Vectorized over kappa in [0, m].

    Raises
    ------
    DegenerateCouplingError
        If sin q1 sin q2 vanishes; the closed form does not apply there and
        callers fall back to the generic determinant residual.
    """
    sq = np.sin(q1) * np.sin(q2)
    if abs(sq) <= _DEGENERATE_TOL:
        raise DegenerateCouplingError(
            f"sin(q1) sin(q2) = {sq:.3e} is degenerate; use the generic residual"
        )
    kap = np.asarray(kappa, dtype=float)
    if np.any(kap < 0) or np.any(kap > m):
        raise ValueError("kappa must lie in the gap [0, m]")
    s = _kind_sign(kind)
    w = np.sqrt(m * m - kap * kap)
    F = np.exp(-4 * a * kap) - 1.0 - kap * (kap * np.cos(q1 + q2) + s * w * np.sin(q1 + q2)) / (m * m * sq)
    return float(F) if F.ndim == 0 else F


def mass_spectral_residual(kappa, l1, l2, a, m, kind: ParticleKind):
    """Gap residual of the double mass-spike well; roots are states.

    F(kappa) = e^{-4 a kappa}
               - (m + s kappa coth l1)(m + s kappa coth l2) / (m^2 - kappa^2)

    with s = +1 (electron) / -1 (positron): flipping the kind is the same
    as flipping the sign of the mass.  F -> -inf at the gap edge whenever
    the numerator stays positive, so this well has no zero modes.
    Vectorized over kappa in [0, m).
    """
    if min(abs(l1), abs(l2)) <= _DEGENERATE_TOL:
        raise DegenerateCouplingError(
            f"coth diverges at lam1={l1}, lam2={l2}; use the generic residual"
        )
    kap = np.asarray(kappa, dtype=float)
    if np.any(kap < 0) or np.any(kap >= m):
        raise ValueError("kappa must lie in the half-open gap [0, m)")
    s = _kind_sign(kind)
    ct1, ct2 = 1.0 / np.tanh(l1), 1.0 / np.tanh(l2)
    F = np.exp(-4 * a * kap) - (m + s * kap * ct1) * (m + s * kap * ct2) / (m * m - kap * kap)
    return float(F) if F.ndim == 0 else F


def electric_zero_mode_residual(q1, q2, p_inv):
    """Residual of the threshold-state condition e^{-4 p} = cot q1 cot q2.

    Equals the electric gap residual evaluated at the gap edge kappa = m
    (same expression for both kinds).  Vectorized and permissive: cells on
    the degenerate lines return +-inf instead of raising, so the map
    pipeline can evaluate whole grids.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.exp(-4.0 * p_inv) - (np.cos(q1) / np.sin(q1)) * (np.cos(q2) / np.sin(q2))
    return r


def _gap_spinor(kappa, m, kind: ParticleKind):
    """Gap-channel spinor at k = i kappa and its reflected partner g0 w."""
    k = 1j * kappa
    w = u_plus(k, m) if kind is ParticleKind.ELECTRON else v_plus(k, m)
    return w, GAMMA0 @ w


def _generic_bound_residual(kappa, cfg: DeltaConfig, kind: ParticleKind):
    """Determinant residual det[M (g0 w), w] for one gap wave number.

    Vanishes exactly when the composed transfer matrix M maps the
    left-decaying solution onto the right-decaying one, i.e. at a bound
    state.  Works for any couplings, including cells where the closed-form
    residuals are degenerate.  Purely imaginary by the symmetry of M; the
    imaginary part is returned as the real residual.
    """
    m = cfg.m
    w, gw = _gap_spinor(kappa, m, kind)
    M = compose_transfer(cfg, np.sqrt(m * m - kappa * kappa), kind)
    v = M @ gw
    det = v[0] * w[1] - v[1] * w[0]
    return float(det.imag)


def _residual_function(cfg: DeltaConfig, kind: ParticleKind):
    """Pick the applicable gap residual for a two-delta configuration.

    Pure-electric and pure-mass wells use their closed forms; mixed
    couplings, and pure wells sitting on a degenerate line (where a
    matching matrix degenerates to +-identity and the problem reduces to a
    single delta), fall back to the generic determinant residual.
    Returns a callable F(kappa) accepting scalars or arrays.
    """
    (z1, c1), (z2, c2) = cfg.deltas
    a = cfg.half_separation
    m = cfg.m
    pure_electric = c1.lam == 0.0 and c2.lam == 0.0
    pure_mass = c1.q == 0.0 and c2.q == 0.0

    if pure_electric and abs(np.sin(c1.q) * np.sin(c2.q)) > _DEGENERATE_TOL:
        return lambda kap: electric_spectral_residual(kap, c1.q, c2.q, a, m, kind)
    if pure_mass and min(abs(c1.lam), abs(c2.lam)) > _DEGENERATE_TOL:
        return lambda kap: mass_spectral_residual(kap, c1.lam, c2.lam, a, m, kind)

    def generic(kap):
        karr = np.atleast_1d(np.asarray(kap, dtype=float))
        out = np.array([_generic_bound_residual(kv, cfg, kind) for kv in karr])
        return float(out[0]) if np.ndim(kap) == 0 else out

    return generic


def _isolate_roots(F, m):
    """Sign-change scan plus bracketed refinement on the gap (0, m).

    Escalates the scan resolution by factors of 4 whenever more than two
    sign changes appear (the double well supports at most two states) and
    raises if the excess persists at the ceiling.  Sign-preserving double
    roots (curve tangencies) are detected as local minima of |F| below an
    absolute bar and refined by bisecting the numerical derivative.
    """
    n = _N_SCAN
    while True:
        grid = np.linspace(_SCAN_EPS * m, (1.0 - _SCAN_EPS) * m, n)
        vals = np.asarray(F(grid), dtype=float)
        sb = np.signbit(vals)
        flips = np.nonzero(sb[1:] != sb[:-1])[0]
        if len(flips) <= 2 or n >= _N_SCAN_MAX:
            break
        n *= 4
    if len(flips) > 2:
        raise RuntimeError(
            f"found {len(flips)} sign changes of the gap residual at scan size {n}; "
            "a double delta well supports at most two bound states"
        )

    roots = [brentq(lambda t: float(F(t)), grid[i], grid[i + 1], xtol=1e-12 * m)
             for i in flips]

    # tangency scan: |F| dips below the bar without changing sign
    near = np.nonzero(
        (np.abs(vals[1:-1]) < _TANGENCY_TOL)
        & (np.abs(vals[1:-1]) <= np.abs(vals[:-2]))
        & (np.abs(vals[1:-1]) <= np.abs(vals[2:]))
        & (np.signbit(vals[:-2]) == np.signbit(vals[2:]))
    )[0]
    h = 1e-7 * m
    for i in near + 1:
        lo = max(grid[i - 1], _SCAN_EPS * m + h)
        hi = min(grid[i + 1], (1.0 - _SCAN_EPS) * m - h)
        if any(lo <= r <= hi for r in roots):
            continue  # already captured as a pair of simple roots
        dF = lambda t: (float(F(t + h)) - float(F(t - h))) / (2 * h)
        if dF(lo) * dF(hi) < 0:
            kstar = brentq(dF, lo, hi, xtol=1e-12 * m)
            if abs(float(F(kstar))) <= _TANGENCY_TOL:
                roots.append(kstar)  # marginal (doubly degenerate) state

    uniq = []
    for r in sorted(roots, reverse=True):
        if not any(abs(r - r0) <= 1e-10 * m for r0 in uniq):
            uniq.append(r)
    return uniq


def _reconstruct(cfg: DeltaConfig, kind: ParticleKind, kappa, residual):
    """Solve the matching chain at a root and normalize the wave function."""
    m = cfg.m
    w, gw = _gap_spinor(kappa, m, kind)
    omega = float(np.sqrt(m * m - kappa * kappa))
    j = int(np.argmax(np.abs(w)))

    if len(cfg.deltas) == 1:
        z0, c0 = cfg.deltas[0]
        rhs = t_delta(c0, kind) @ (gw * np.exp(kappa * z0))
        d3 = rhs[j] / (w[j] * np.exp(-kappa * z0))
        check = rhs[1 - j] - d3 * w[1 - j] * np.exp(-kappa * z0)
        b2 = c2 = 0.0 + 0.0j
        z1 = z2 = z0
    else:
        (z1, c1), (z2, c2_coupling) = cfg.deltas
        basis = np.column_stack([gw * np.exp(kappa * z1), w * np.exp(-kappa * z1)])
        b2, c2 = np.linalg.solve(basis, t_delta(c1, kind) @ (gw * np.exp(kappa * z1)))
        rhs = t_delta(c2_coupling, kind) @ (b2 * gw * np.exp(kappa * z2) + c2 * w * np.exp(-kappa * z2))
        d3 = rhs[j] / (w[j] * np.exp(-kappa * z2))
        check = rhs[1 - j] - d3 * w[1 - j] * np.exp(-kappa * z2)

    if abs(check) > 1e-6 * max(1.0, abs(d3)):
        raise RuntimeError(
            f"inconsistent matching chain at kappa={kappa}: residual {abs(check):.3e}"
        )
    coeffs = []
    for val in (b2, c2, d3):
        if abs(np.imag(val)) > 1e-9 * (1.0 + abs(val)):
            raise RuntimeError(f"bound-state coefficient {val} is not real at kappa={kappa}")
        coeffs.append(float(np.real(val)))
    b2r, c2r, d3r = coeffs

    # closed-form norm integral; the cross term uses (g0 w)^dag w, which is
    # real and flips sign between the electron and positron spinors
    norm_w = float(np.sum(np.abs(w) ** 2))
    cross = float(np.real(np.vdot(gw, w)))
    decay = (np.exp(2 * kappa * z1) + d3r * d3r * np.exp(-2 * kappa * z2)) / (2 * kappa)
    interior = (
        b2r * b2r * (np.exp(2 * kappa * z2) - np.exp(2 * kappa * z1))
        + c2r * c2r * (np.exp(-2 * kappa * z1) - np.exp(-2 * kappa * z2))
    ) / (2 * kappa)
    total = norm_w * (decay + interior) + 2 * b2r * c2r * cross * (z2 - z1)
    return BoundState(
        kappa=float(kappa),
        omega=omega,
        a1=1.0,
        b2=b2r,
        c2=c2r,
        d3=d3r,
        norm_const=float(1.0 / np.sqrt(total)),
        kind=kind,
        residual=float(residual),
    )


def find_bound_states(cfg: DeltaConfig, kind: ParticleKind) -> list:
    """All gap states of a delta configuration, deepest (largest kappa) first.

    Single-delta configurations use the closed-form branch-and-filter
    kappas; double configurations isolate the roots of the applicable
    spectral residual by a sign-change scan with bracketed refinement,
    resolution escalation and tangency detection.  Roots pinned at the gap
    edge (zero modes) fall outside the scan window by construction and are
    never returned as states.
    """
    if not cfg.m > 0:
        raise ValueError(f"bound states require a positive mass, got m={cfg.m}")
    if len(cfg.deltas) == 1:
        z0, c0 = cfg.deltas[0]
        x = c0.q * c0.q - c0.lam * c0.lam
        C, S = entire_cs(x)
        alpha = c0.q * S
        beta = C if kind is ParticleKind.ELECTRON else -C
        gamma = -cfg.m * c0.lam * S
        states = []
        for kap in single_delta_kappas(c0, kind, cfg.m):
            w = np.sqrt(cfg.m * cfg.m - kap * kap)
            states.append(_reconstruct(cfg, kind, kap, alpha * w + beta * kap - gamma))
        return states
    if len(cfg.deltas) != 2:
        raise ValueError("find_bound_states supports one- and two-delta configurations")
    F = _residual_function(cfg, kind)
    return [_reconstruct(cfg, kind, r, float(F(r))) for r in _isolate_roots(F, cfg.m)]


def bound_state_wavefunction(cfg: DeltaConfig, state: BoundState, z):
    """Normalized spinor wave function of a bound state on a z grid.

    Returns an array of shape (2, len(z)) with the piecewise profile
    norm_const * Psi(z); continuous between deltas up to the matching jumps.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    w, gw = _gap_spinor(state.kappa, cfg.m, state.kind)
    z_first = cfg.deltas[0][0]
    z_last = cfg.deltas[-1][0]
    psi = np.zeros((2, z.size), dtype=complex)
    left = z < z_first
    right = z >= z_last
    mid = ~left & ~right
    psi[:, left] = state.a1 * np.exp(state.kappa * z[left]) * gw[:, None]
    if np.any(mid):
        psi[:, mid] = (
            state.b2 * np.exp(state.kappa * z[mid]) * gw[:, None]
            + state.c2 * np.exp(-state.kappa * z[mid]) * w[:, None]
        )
    psi[:, right] = state.d3 * np.exp(-state.kappa * z[right]) * w[:, None]
    return state.norm_const * psi


def boundary_curve(curve, p_inv):
    """Residual of a named spectral boundary curve over the coupling plane.

    Curves (with p_inv = a*m):

    * ``tangency-electron``    cot q1 + cot q2 + 4 p_inv = 0
    * ``tangency-positron``    cot q1 + cot q2 - 4 p_inv = 0
    * ``zero-mode``            e^{-4 p_inv} - cot q1 cot q2 = 0
    * ``hyperbolic-electron``  coth l1 + coth l2 + 4 p_inv = 0
    * ``hyperbolic-positron``  coth l1 + coth l2 - 4 p_inv = 0

    Returns a vectorized callable residual(c1, c2); crossing the tangency
    and hyperbolic curves changes the bound-state count by one, and the
    zero-mode curve carries a threshold state at the gap edge.
    """
    if curve not in _CURVES:
        raise ValueError(f"unknown curve {curve!r}; expected one of {_CURVES}")
    if curve == "tangency-electron":
        return lambda q1, q2: _cot(q1) + _cot(q2) + 4.0 * p_inv
    if curve == "tangency-positron":
        return lambda q1, q2: _cot(q1) + _cot(q2) - 4.0 * p_inv
    if curve == "zero-mode":
        return lambda q1, q2: electric_zero_mode_residual(q1, q2, p_inv)
    if curve == "hyperbolic-electron":
        return lambda l1, l2: _coth(l1) + _coth(l2) + 4.0 * p_inv
    return lambda l1, l2: _coth(l1) + _coth(l2) - 4.0 * p_inv


def _cot(q):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.cos(q) / np.sin(q)


def _coth(l):
    with np.errstate(divide="ignore", invalid="ignore"):
        return 1.0 / np.tanh(l)


def _arccot(y):
    """Inverse cotangent with range (0, pi)."""
    return np.pi / 2.0 - np.arctan(y)


def sample_boundary_curve(curve, p_inv, n=720, extent=3.0):
    """Sample a boundary curve into plottable branches.

    Returns a list of (n_i, 2) arrays, one per monotone branch, restricted
    to the plane domain ([0, 2pi]^2 for the trigonometric curves,
    [-extent, extent]^2 for the hyperbolic ones).
    """
    if curve not in _CURVES:
        raise ValueError(f"unknown curve {curve!r}; expected one of {_CURVES}")
    branches = []
    margin = 1e-3
    if curve.startswith("hyperbolic"):
        sign = -1.0 if curve.endswith("electron") else 1.0
        for seg in (np.linspace(-extent, -margin, n), np.linspace(margin, extent, n)):
            rhs = sign * 4.0 * p_inv - _coth(seg)
            ok = np.abs(rhs) > 1.0 + 1e-12  # arccoth needs |argument| > 1
            l2 = np.full_like(seg, np.nan)
            l2[ok] = np.arctanh(1.0 / rhs[ok])
            keep = ok & (np.abs(l2) <= extent)
            if np.any(keep):
                branches.append(np.column_stack([seg[keep], l2[keep]]))
        return branches

    for lo, hi in ((margin, np.pi - margin), (np.pi + margin, 2 * np.pi - margin)):
        q1 = np.linspace(lo, hi, n)
        if curve == "zero-mode":
            c1 = _cot(q1)
            ok = np.abs(c1) > 1e-12
            target = np.full_like(q1, np.nan)
            target[ok] = np.exp(-4.0 * p_inv) / c1[ok]
        else:
            sign = -1.0 if curve.endswith("electron") else 1.0
            target = sign * 4.0 * p_inv - _cot(q1)
            ok = np.isfinite(target)
        base = _arccot(target[ok])
        for shift in (0.0, np.pi):
            q2 = base + shift
            keep = (q2 > margin) & (q2 < 2 * np.pi - margin)
            if np.any(keep):
                branches.append(np.column_stack([q1[ok][keep], q2[keep]]))
    return branches


def _map_workers(max_workers):
    if max_workers is not None:
        return max(1, int(max_workers))
    env = os.environ.get(THREADS_ENV_VAR)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def count_map(plane, p_inv, n, kind: ParticleKind, extent=3.0, n_scan=_N_SCAN,
              max_workers=None) -> RegionMap:
    """Bound-state count over an n x n grid of the named coupling plane.

    ``plane`` is "electric" ((q1, q2) in [0, 2pi]^2) or "mass"
    ((lam1, lam2) in [-extent, extent]^2).  Counts come from a vectorized
    sign-change scan of the closed-form gap residual in rescaled units
    (m = 1, a = p_inv); cells on the degenerate lines carry the sentinel
    -1.  Rows are computed independently (optionally in a thread pool,
    sized by ``max_workers`` or the DIRACDELTAS_THREADS variable) and
    written by index, so the result does not depend on the thread count.
    """
    if plane not in ("electric", "mass"):
        raise ValueError(f"unknown plane {plane!r}; expected 'electric' or 'mass'")
    if not p_inv > 0:
        raise ValueError(f"p_inv must be positive, got {p_inv}")
    s = _kind_sign(kind)
    u = np.linspace(_SCAN_EPS, 1.0 - _SCAN_EPS, n_scan)
    decay = np.exp(-4.0 * p_inv * u)

    if plane == "electric":
        axis = np.linspace(0.0, 2 * np.pi, n)
        sin_ax, cos_ax = np.sin(axis), np.cos(axis)
        w_u = np.sqrt(1.0 - u * u)
        zm_flat = electric_zero_mode_residual(axis[:, None], axis[None, :], p_inv)
    else:
        axis = np.linspace(-extent, extent, n)
        with np.errstate(divide="ignore"):
            coth_ax = 1.0 / np.tanh(axis)
        gap_edge = 1.0 - u * u

    counts = np.zeros((n, n), dtype=int)
    zero_mode = np.zeros((n, n), dtype=bool)

    def electric_row(i):
        sq = sin_ax[i] * sin_ax
        good = np.abs(sq) > _DEGENERATE_TOL
        Q = axis[i] + axis
        # F(u) = e^{-4 p u} - 1 - u (u cos Q + s w sin Q) / (sin q1 sin q2)
        num = u[None, :] * (u[None, :] * np.cos(Q)[:, None] + s * w_u[None, :] * np.sin(Q)[:, None])
        with np.errstate(divide="ignore", invalid="ignore"):
            F = decay[None, :] - 1.0 - num / sq[:, None]
        sb = np.signbit(F)
        row = np.count_nonzero(sb[:, 1:] != sb[:, :-1], axis=1)
        row[~good] = -1
        counts[i] = row
        zero_mode[i] = good & (np.abs(zm_flat[i]) <= 1e-10)

    def mass_row(i):
        good = (np.abs(axis) > _DEGENERATE_TOL) & (np.abs(axis[i]) > _DEGENERATE_TOL)
        f1 = 1.0 + s * u[None, :] * coth_ax[i]
        f2 = 1.0 + s * u[None, :] * coth_ax[:, None]
        F = decay[None, :] - f1 * f2 / gap_edge[None, :]
        sb = np.signbit(F)
        row = np.count_nonzero(sb[:, 1:] != sb[:, :-1], axis=1)
        row[~good] = -1
        counts[i] = row

    kernel = electric_row if plane == "electric" else mass_row
    workers = _map_workers(max_workers)
    if workers == 1:
        for i in range(n):
            kernel(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(kernel, range(n)))

    over = counts > 2
    if np.any(over):
        i, j = np.argwhere(over)[0]
        raise RuntimeError(
            f"cell ({axis[i]:.6g}, {axis[j]:.6g}) reports {counts[i, j]} bound states; "
            "a double delta well supports at most two"
        )

    if plane == "electric":
        names = ("tangency-electron" if kind is ParticleKind.ELECTRON else "tangency-positron",
                 "zero-mode")
        curves = {name: sample_boundary_curve(name, p_inv) for name in names}
        ext = None
    else:
        name = "hyperbolic-electron" if kind is ParticleKind.ELECTRON else "hyperbolic-positron"
        curves = {name: sample_boundary_curve(name, p_inv, extent=extent)}
        ext = extent
    return RegionMap(plane=plane, kind=kind, p_inv=float(p_inv), axis1=axis, axis2=axis,
                     counts=counts, zero_mode=zero_mode, curves=curves, extent=ext)
