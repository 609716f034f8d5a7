"""Point-interaction matching matrices and free transfer matrices.

A delta potential at z0 with electric strength q and mass-spike strength
lam imposes Psi(z0+) = T Psi(z0-) with

    T = [[ C(x),            -i (q_eff - lam) S(x) ],
         [ -i (q_eff + lam) S(x),            C(x) ]],      x = q^2 - lam^2,

where C(x) = cos(sqrt(x)) and S(x) = sin(sqrt(x))/sqrt(x) continue to
cosh/sinh for x < 0 and q_eff is +q for electrons and -q for positrons
(the electric coupling changes sign with the charge, the mass spike does
not).  det T = C^2 + x S^2 = 1 identically.  Between deltas the spinor is
propagated by the free transfer matrix built from the plane-wave
fundamental system; the positron components use the charge-conjugate
fundamental system, which amounts to m -> -m in the free factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ParticleKind

__all__ = [
    "Coupling",
    "DeltaConfig",
    "entire_cs",
    "t_delta",
    "free_transfer",
    "compose_transfer",
]

# Below this |x| the trigonometric forms of C(x), S(x) switch to their
# truncated power series; the x^4 terms keep the error at the 1e-52 level.
_SERIES_CUTOVER = 1e-6


@dataclass(frozen=True)
class Coupling:
    """Electric (q) and mass-spike (lam) strengths of one delta."""

    q: float
    lam: float


@dataclass(frozen=True)
class DeltaConfig:
    """An ordered array of delta potentials on the line plus the fermion mass.

    ``deltas`` is a tuple of (position, Coupling) pairs with strictly
    increasing positions.  The two-delta constructors place the pair
    symmetrically at -a and +a.
    """

    deltas: tuple
    m: float

    def __post_init__(self):
        if self.m < 0:
            raise ValueError(f"mass must be nonnegative, got m={self.m}")
        zs = [z for z, _ in self.deltas]
        if any(z2 <= z1 for z1, z2 in zip(zs, zs[1:])):
            raise ValueError(f"delta positions must be strictly increasing, got {zs}")

    @staticmethod
    def single(q, lam, m, z0=0.0):
        return DeltaConfig(deltas=((float(z0), Coupling(q, lam)),), m=float(m))

    @staticmethod
    def double(c1: Coupling, c2: Coupling, a, m):
        if a <= 0:
            raise ValueError(f"half-separation must be positive, got a={a}")
        return DeltaConfig(deltas=((-float(a), c1), (float(a), c2)), m=float(m))

    @property
    def half_separation(self):
        """Half-separation a for a symmetric double configuration."""
        if len(self.deltas) != 2:
            raise ValueError("half_separation is defined for two-delta configurations")
        z1, z2 = self.deltas[0][0], self.deltas[1][0]
        if abs(z1 + z2) > 1e-12 * max(1.0, abs(z1), abs(z2)):
            raise ValueError(f"positions {z1}, {z2} are not symmetric about the origin")
        return z2


def entire_cs(x):
    """Entire-function pair C(x) = cos(sqrt(x)), S(x) = sin(sqrt(x))/sqrt(x).

    Both are entire in x (no branch point): for x < 0 they continue to
    cosh(sqrt(-x)) and sinh(sqrt(-x))/sqrt(-x).  Near x = 0 the truncated
    power series is used so the removable singularity of S never meets a
    0/0.  Accepts scalars or arrays.
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    C = np.empty_like(x)
    S = np.empty_like(x)

    small = np.abs(x) < _SERIES_CUTOVER
    xs = x[small]
    C[small] = 1.0 + xs * (-1.0 / 2 + xs * (1.0 / 24 + xs * (-1.0 / 720 + xs / 40320)))
    S[small] = 1.0 + xs * (-1.0 / 6 + xs * (1.0 / 120 + xs * (-1.0 / 5040 + xs / 362880)))

    pos = ~small & (x > 0)
    r = np.sqrt(x[pos])
    C[pos] = np.cos(r)
    S[pos] = np.sin(r) / r

    neg = ~small & (x < 0)
    r = np.sqrt(-x[neg])
    C[neg] = np.cosh(r)
    S[neg] = np.sinh(r) / r

    if scalar:
        return float(C[0]), float(S[0])
    return C, S


def t_delta(c: Coupling, kind: ParticleKind):
    """Matching matrix of a single delta for the given particle kind.

    Returns the 2x2 complex matrix T with Psi(z0+) = T Psi(z0-).
    det T = 1 holds identically, including at |q| = |lam| where the
    argument x = q^2 - lam^2 vanishes.
    """
    q_eff = c.q if kind is ParticleKind.ELECTRON else -c.q
    x = q_eff * q_eff - c.lam * c.lam
    C, S = entire_cs(x)
    return np.array(
        [
            [C, -1j * (q_eff - c.lam) * S],
            [-1j * (q_eff + c.lam) * S, C],
        ],
        dtype=complex,
    )


def free_transfer(omega, m, z_from, z_to):
    """Free propagation matrix P with Psi(z_to) = P Psi(z_from).

    Built from the plane-wave fundamental system at energy omega; with
    k = sqrt(omega^2 - m^2) (imaginary inside the mass gap) and
    c = k/(m + omega),

        P = [[ cos(k d),        i sin(k d)/c ],
             [ i c sin(k d),    cos(k d)     ]],       d = z_to - z_from.

    P does not depend on which fundamental spinor set is used to build it
    and has det P = 1; for gap energies the diagonal is real and the
    off-diagonal purely imaginary.  Written through sin(k d)/k the
    threshold k = 0 (omega = m) is a removable limit, P -> [[1, 2 i m d],
    [0, 1]].
    """
    if m < 0:
        raise ValueError(f"mass must be nonnegative, got m={m}")
    if m + omega == 0:
        raise ValueError("free transfer is parametrized for omega > -m")
    k = np.sqrt(complex(omega * omega - m * m))
    d = z_to - z_from
    kd = k * d
    snc = d * np.sinc(kd / np.pi)  # sin(k d)/k, regular at the threshold
    P = np.array(
        [
            [np.cos(kd), 1j * (m + omega) * snc],
            [1j * k * k * snc / (m + omega), np.cos(kd)],
        ],
        dtype=complex,
    )
    return P


def compose_transfer(cfg: DeltaConfig, omega, kind: ParticleKind):
    """Total transfer matrix of a delta array at energy omega.

    Composes matching and free-propagation factors left to right,

        M = T_N P(z_N, z_{N-1}) ... P(z_2, z_1) T_1,

    so that Psi just right of the last delta equals M times Psi just left
    of the first.  The kind enters twice: through the sign of the electric
    coupling in each matching factor, and through the fundamental system of
    the free factors -- positron components live in the charge-conjugate
    system (v-spinor basis), whose free matrix is the electron one with
    m -> -m, i.e. its transpose.  An empty configuration gives the
    identity.
    """
    M = np.eye(2, dtype=complex)
    prev_z = None
    for z, c in cfg.deltas:
        if prev_z is not None:
            P = free_transfer(omega, cfg.m, prev_z, z)
            if kind is ParticleKind.POSITRON:
                P = P.T
            M = P @ M
        M = t_delta(c, kind) @ M
        prev_z = z
    return M
