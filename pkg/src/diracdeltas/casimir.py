"""Vacuum interaction energy of two delta mirrors that quantize the spectrum.

A delta whose matching matrix degenerates to +-identity is perfectly
reflecting for both towers of the sea; a pair of such mirrors at -a and +a
supports the discrete spectrum sin(2 k a) = 0, k_n = n pi / (2a), for both
identity classes.  Summing the sea energies -2 sqrt(m^2 + k_n^2) and
removing the free-space bulk and single-mirror surface pieces leaves the
finite, separation-dependent interaction energy

    E_int(a) = (8 a / pi) * int_m^inf sqrt(kappa^2 - m^2)
               / (e^{4 a kappa} - 1) dkappa  >  0,

which decays monotonically to zero with the separation (pi/(12 a) in the
massless limit).  Two independent routes are provided: an adaptive
quadrature of the integral (``vacuum_energy``) and an arbitrary-precision
heat-kernel-regularized mode sum (``mode_sum_oracle``); the regularized
sum has an even expansion in the regulator, so a two-level Richardson
extrapolation with factor 4 removes the regulator dependence.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import mpmath as mp
import numpy as np
from scipy.integrate import quad

from .core import ParticleKind
from .matching import Coupling, t_delta

__all__ = [
    "UnitaryCase",
    "NonUnitaryCouplingError",
    "CasimirResult",
    "classify_unitary",
    "spectral_function_h",
    "vacuum_energy",
    "mode_sum_oracle",
]

# Entrywise distance to +-identity below which a coupling counts as a mirror.
_IDENTITY_TOL = 1e-10


class UnitaryCase(Enum):
    """Identity class of a perfectly reflecting delta."""

    MINUS_IDENTITY = "minus"
    PLUS_IDENTITY = "plus"
    NOT_UNITARY = "not-unitary"


class NonUnitaryCouplingError(ValueError):
    """The coupling is not a perfect mirror; the mode-sum method does not apply."""


@dataclass(frozen=True)
class CasimirResult:
    """Vacuum interaction energy at one separation, with an error bound."""

    case: UnitaryCase
    a: float
    m: float
    e_int: float
    quadrature_error: float


def classify_unitary(c: Coupling) -> UnitaryCase:
    """Classify a coupling as a mirror of the minus/plus identity family.

    The matching matrix equals -1 (+1) exactly on the coupling family
    q^2 - lam^2 = (pi r)^2 with odd (even) integer r >= 1; the operative
    criterion is the entrywise matrix distance (tolerance 1e-10), and the
    algebraic family membership is asserted for consistency.  The free
    point q = lam = 0 (r = 0) is not a mirror and classifies as NotUnitary.
    """
    t = t_delta(c, ParticleKind.ELECTRON)
    eye = np.eye(2)
    if np.max(np.abs(t + eye)) <= _IDENTITY_TOL:
        case = UnitaryCase.MINUS_IDENTITY
    elif np.max(np.abs(t - eye)) <= _IDENTITY_TOL:
        case = UnitaryCase.PLUS_IDENTITY
    else:
        return UnitaryCase.NOT_UNITARY

    x = c.q * c.q - c.lam * c.lam
    r = int(round(np.sqrt(x) / np.pi)) if x > 0 else 0
    if r < 1:
        # identity matrix without a pi-quantized argument: the free point
        return UnitaryCase.NOT_UNITARY
    if abs(x - (np.pi * r) ** 2) > 1e-6 * max(1.0, x):
        raise AssertionError(
            f"matrix criterion says {case} but q^2 - lam^2 = {x} is not pi-quantized"
        )
    expected = UnitaryCase.MINUS_IDENTITY if r % 2 else UnitaryCase.PLUS_IDENTITY
    if case is not expected:
        raise AssertionError(f"identity class of r={r} disagrees with the matrix sign")
    return case


def _check_case(case: UnitaryCase):
    if case is UnitaryCase.NOT_UNITARY or not isinstance(case, UnitaryCase):
        raise NonUnitaryCouplingError(
            "vacuum-energy machinery applies only to perfectly reflecting "
            "(unitary) couplings; classify_unitary returned NOT_UNITARY"
        )


def spectral_function_h(k, case: UnitaryCase, a, m):
    """Secular function whose real zeros are the mirror-pair mode momenta.

    h(k) = (-+ sqrt(m^2 + k^2) + m) sin(2 k a) for the minus/plus identity
    class.  Both factors vanish at k = 0 and the sin factor pins the shared
    spectrum k_n = n pi/(2a).  Accepts complex k (principal square root):
    on the imaginary axis h(i kappa) = (-+ sqrt(m^2 - kappa^2) + m)
    i sinh(2 kappa a).
    """
    _check_case(case)
    sign = -1.0 if case is UnitaryCase.MINUS_IDENTITY else 1.0
    k = np.asarray(k)
    w = np.sqrt(k.astype(complex) ** 2 + m * m) if np.iscomplexobj(k) else np.sqrt(k * k + m * m)
    h = (sign * w + m) * np.sin(2.0 * np.asarray(k) * a)
    return h if h.ndim else h.item()


def vacuum_energy(case: UnitaryCase, a, m) -> CasimirResult:
    """Interaction energy of a mirror pair at half-separation a.

    Adaptive quadrature of the frequency integral up to
    kappa_max = m + max(40/(4a), 10 m), with an analytic bound on the
    discarded exponential tail folded into ``quadrature_error``.  The
    secular spectrum (hence the energy) is identical for the two identity
    classes.
    """
    _check_case(case)
    if not a > 0:
        raise ValueError(f"half-separation must be positive, got a={a}")
    if m < 0:
        raise ValueError(f"mass must be nonnegative, got m={m}")
    kappa_max = m + max(40.0 / (4.0 * a), 10.0 * m)
    pref = 8.0 * a / np.pi

    if m == 0.0:
        def integrand(kap):
            if kap < 1e-300:
                return 1.0 / (4.0 * a)
            return kap / np.expm1(4.0 * a * kap)

        val, abserr = quad(integrand, 0.0, kappa_max, epsabs=0.0, epsrel=1e-12, limit=200)
    else:
        # kappa = m cosh t removes the square-root edge at the gap
        t_max = float(np.arccosh(kappa_max / m))

        def integrand(t):
            sh = np.sinh(t)
            arg = 4.0 * a * m * np.cosh(t)
            if arg > 700.0:
                return m * m * sh * sh * np.exp(-arg)
            return m * m * sh * sh / np.expm1(arg)

        val, abserr = quad(integrand, 0.0, t_max, epsabs=0.0, epsrel=1e-12, limit=200)

    # tail bound: sqrt(kappa^2-m^2) <= kappa and (e^x - 1)^{-1} <= e^{-x}/(1 - e^{-x0})
    x0 = 4.0 * a * kappa_max
    tail = pref * np.exp(-x0) * (kappa_max / (4.0 * a) + 1.0 / (16.0 * a * a))
    if x0 < 700.0:
        tail /= 1.0 - np.exp(-x0)
    return CasimirResult(
        case=case,
        a=float(a),
        m=float(m),
        e_int=float(pref * val),
        quadrature_error=float(pref * abserr + tail),
    )


def mode_sum_oracle(case: UnitaryCase, a, m, epsilon=None) -> float:
    """Interaction energy from the regularized mode sum (independent route).

    Heat-kernel regularization: every sea mode contributes
    -2 omega_n e^{-eps omega_n}; subtracting the free-space bulk
    (a Bessel-K integral) and the single-mirror surface term m e^{-eps m}
    leaves E(eps) whose expansion in eps contains only even powers, so

        R1(eps) = (4 E(eps/2) - E(eps)) / 3,
        R2      = (16 R1(eps/2) - R1(eps)) / 15

    removes the regulator through eps^4.  Runs in 50-digit arithmetic: at
    m a = 5 the answer is ~1e-9 while the raw sums are ~1e4, far beyond
    double-precision cancellation.
    """
    _check_case(case)
    if not a > 0:
        raise ValueError(f"half-separation must be positive, got a={a}")
    if m < 0:
        raise ValueError(f"mass must be nonnegative, got m={m}")
    with mp.workdps(50):
        am, mm = mp.mpf(a), mp.mpf(m)
        if epsilon is None:
            eps0 = mp.mpf("0.1") / mm if m > 0 else mp.mpf("0.1") * (2 * am / mp.pi)
        else:
            eps0 = mp.mpf(epsilon)
        h = mp.pi / (2 * am)

        def regularized(eps):
            if mm == 0:
                x = mp.exp(-eps * h)
                tower = 2 * h * x / (1 - x) ** 2
                bulk = 4 * am / (mp.pi * eps * eps)
                surface = mp.mpf(0)
            else:
                tower = mp.mpf(0)
                n = 1
                floor = mp.mpf(10) ** (-mp.mp.dps - 5)
                while True:
                    w = mp.sqrt(mm * mm + (n * h) ** 2)
                    term = 2 * w * mp.exp(-eps * w)
                    tower += term
                    if term < floor * max(tower, mp.mpf(1)):
                        break
                    n += 1
                x = eps * mm
                bulk = (4 * am * mm * mm / mp.pi) * (mp.besselk(0, x) + mp.besselk(1, x) / x)
                surface = mm * mp.exp(-x)
            return -(tower - bulk + surface)

        E = [regularized(eps0 / 2**i) for i in range(3)]
        R1 = [(4 * E[i + 1] - E[i]) / 3 for i in range(2)]
        R2 = (16 * R1[1] - R1[0]) / 15
        return float(R2)
