"""Dirac algebra, free spinors and the relativistic dispersion relation in 1+1D.

The representation used throughout the package is

    gamma^0 = sigma_3,   gamma^1 = i sigma_2,   gamma^2 = sigma_1,

so that alpha = gamma^0 gamma^1 = sigma_1 and the free Hamiltonian is
H = -i sigma_1 d/dz + sigma_3 m.  Positive-energy electron and positron
spinors are normalized to a unit upper/lower component respectively.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "GAMMA0",
    "GAMMA1",
    "GAMMA2",
    "GammaRep",
    "ParticleKind",
    "dispersion",
    "u_plus",
    "v_plus",
]

# Pauli-based 2x2 representation of the 1+1D Clifford algebra,
# {gamma^mu, gamma^nu} = 2 eta^{mu nu} with eta = diag(+1, -1).
GAMMA0 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
GAMMA1 = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
# "Anomalous" matrix gamma^2 = gamma^0 gamma^1 entering the mass-spike coupling.
GAMMA2 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


@dataclass(frozen=True)
class GammaRep:
    """Concrete gamma-matrix representation (kept explicit for cross-checks)."""

    gamma0: np.ndarray
    gamma1: np.ndarray
    gamma2: np.ndarray


GAMMA = GammaRep(GAMMA0, GAMMA1, GAMMA2)


class ParticleKind(Enum):
    """Which tower of the Dirac sea a calculation refers to."""

    ELECTRON = "electron"
    POSITRON = "positron"


def dispersion(k, m):
    """Positive branch of the free dispersion relation, omega = sqrt(k^2 + m^2).

    Parameters
    ----------
    k : float, complex or array_like
        Wave number.  Purely imaginary ``k = i kappa`` with ``0 < kappa < m``
        selects the bound-state channel and returns the real gap energy
        ``sqrt(m^2 - kappa^2)``.
    m : float
        Fermion mass, ``m >= 0``.

    Returns
    -------
    float or ndarray
        The energy.  Real input gives real output; an imaginary wave number
        inside the mass gap gives the (real) bound-channel energy.

    Raises
    ------
    ValueError
        If ``m < 0``, or if an imaginary wave number lies on or beyond the
        gap edge (``kappa >= m``), where no propagating or bound channel
        exists.
    """
    if m < 0:
        raise ValueError(f"mass must be nonnegative, got m={m}")
    karr = np.asarray(k)
    if np.isrealobj(karr):
        return np.sqrt(karr * karr + m * m)
    w = np.sqrt(karr.astype(complex) ** 2 + m * m)
    if np.any(np.abs(w.imag) > 1e-12 * (np.abs(w) + 1.0)):
        raise ValueError(
            f"wave number {k!r} lies outside both the propagating band and "
            f"the mass gap (m={m}); no real energy branch exists"
        )
    out = w.real
    return float(out) if out.ndim == 0 else out


def _weight(k, m):
    """Lower/upper spinor weight k/(m + omega) for wave number k."""
    w = np.sqrt(np.asarray(k, dtype=complex) ** 2 + m * m)
    denom = m + w
    if abs(denom) == 0.0:
        raise ValueError("spinor weight undefined at k=0, m=0")
    return k / denom


def u_plus(k, m):
    """Positive-energy electron spinor (1, k/(m+omega)) for wave number k."""
    return np.array([1.0, _weight(k, m)], dtype=complex)


def v_plus(k, m):
    """Positive-energy positron spinor (k/(m+omega), 1) for wave number k."""
    return np.array([_weight(k, m), 1.0], dtype=complex)
