"""Closed-form single-chain probability amplitudes.

One chain is a three-level atom driven by a classical field (coupling
Omega) and a quantized cavity mode (coupling g), with detuning Delta and
cavity decay rate kappa.  In the high-detuning regime the excitation
oscillates between the atomic excited state and the cavity photon at the
effective Raman rate g_eff = g * Omega / Delta while leaking irreversibly
into the reservoir.

``amplitudes_exact`` gives the amplitudes E (atom), G (cavity) and R
(reservoir, real and non-negative) for arbitrary damping; the strong- and
weak-coupling approximations return the squared magnitudes directly.
"""

import warnings
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SystemParams:
    """Physical couplings of a single atom-cavity-reservoir chain.

    g      quantum-mode coupling (rad/time)
    Omega  classical-field coupling (rad/time)
    Delta  detuning of the cavity from the g-c transition (rad/time)
    kappa  cavity decay rate (1/time)

    Derived quantities (``delta``, ``g_eff``, ``omega_bar``, ``gamma``)
    are recomputed on access so they can never go stale.
    """

    g: float
    Omega: float
    Delta: float
    kappa: float = 1.0

    def __post_init__(self):
        if self.g <= 0 or self.Omega <= 0:
            raise ValueError("g and Omega must be positive")
        if self.kappa < 0:
            raise ValueError("kappa must be non-negative")
        if self.Delta == 0:
            raise ValueError("Delta must be nonzero")
        if self.Delta < 10.0 * max(self.g, self.Omega):
            warnings.warn(
                "Delta is not large compared to the couplings "
                f"(Delta={self.Delta}, g={self.g}, Omega={self.Omega}); "
                "the effective two-level description degrades",
                stacklevel=2,
            )

    @property
    def delta(self):
        """Stark-compensating two-photon detuning (g^2 - Omega^2) / Delta."""
        return (self.g**2 - self.Omega**2) / self.Delta

    @property
    def g_eff(self):
        """Effective Raman coupling g * Omega / Delta."""
        return self.g * self.Omega / self.Delta

    @property
    def omega_bar(self):
        """Damped Rabi frequency, kept complex so the overdamped branch
        continues analytically (4 omega_bar^2 = 4 g_eff^2 - kappa^2 / 4)."""
        return np.sqrt(complex(self.g_eff**2 - self.kappa**2 / 16.0))

    @property
    def gamma(self):
        """Coupling-to-decay ratio g_eff / kappa."""
        if self.kappa == 0:
            return np.inf
        return self.g_eff / self.kappa

    @classmethod
    def from_geff(cls, g_eff, kappa=1.0, Delta=None):
        """Build parameters realizing a given g_eff with g = Omega.

        Delta defaults to 500 * kappa, deep enough in the dispersive
        regime for the closed forms to apply at the percent level.
        """
        if g_eff <= 0:
            raise ValueError("g_eff must be positive")
        if Delta is None:
            Delta = 500.0 * (kappa if kappa > 0 else 1.0)
        g = np.sqrt(g_eff * Delta)
        return cls(g=g, Omega=g, Delta=Delta, kappa=kappa)


@dataclass(frozen=True)
class AmplitudeTriple:
    """Amplitudes of the single-excitation chain state.

    E is the atomic amplitude, G the cavity amplitude (carries an explicit
    factor i) and R the real, non-negative reservoir amplitude defined by
    R = sqrt(1 - |E|^2 - |G|^2).
    """

    E: complex
    G: complex
    R: float

    @property
    def squares(self):
        return np.abs(self.E) ** 2, np.abs(self.G) ** 2, np.asarray(self.R) ** 2


def _check_time(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("time must be non-negative")
    return t


def _eg(t, p):
    """E and G at time(s) t; array-aware."""
    t = _check_time(t)
    ob = p.omega_bar
    # sin(x)/x limit at critical damping
    x = ob * t
    small = np.abs(x) < 1e-12
    sinc = np.where(small, t, np.sin(np.where(small, 1.0, x)) / np.where(small, 1.0, ob))
    damp = np.exp(-p.kappa * t / 4.0)
    e = (np.cos(x) + (p.kappa / 4.0) * sinc) * damp
    g = 1j * p.g_eff * sinc * damp
    return e, g


def amplitudes_exact(t, p):
    """Exact amplitudes at time ``t`` (scalar or array).

    The overdamped regime 4 g_eff^2 < kappa^2 / 4 is handled by the
    analytic continuation of cos/sin to hyperbolic functions via the
    complex omega_bar; magnitudes stay real either way.
    """
    e, g = _eg(t, p)
    r = np.sqrt(np.clip(1.0 - np.abs(e) ** 2 - np.abs(g) ** 2, 0.0, None))
    if np.ndim(e) == 0:
        return AmplitudeTriple(E=complex(e), G=complex(g), R=float(r))
    return AmplitudeTriple(E=e, G=g, R=r)


def exact_squares(t, p):
    """(|E|^2, |G|^2, R^2) from the exact amplitudes; array-aware."""
    e, g = _eg(t, p)
    e2 = np.abs(e) ** 2
    g2 = np.abs(g) ** 2
    return e2, g2, np.clip(1.0 - e2 - g2, 0.0, None)


def amplitudes_strong(t, p):
    """Strong-coupling (g_eff >> kappa) squared magnitudes.

    Sum to one exactly by construction.
    """
    t = _check_time(t)
    damp = np.exp(-p.kappa * t / 2.0)
    e2 = np.cos(p.g_eff * t) ** 2 * damp
    g2 = np.sin(p.g_eff * t) ** 2 * damp
    return e2, g2, 1.0 - damp


def amplitudes_weak(t, p):
    """Weak-coupling (g_eff << kappa) squared magnitudes, second order in
    gamma = g_eff / kappa."""
    t = _check_time(t)
    gm2 = p.gamma**2
    kt = p.kappa * t
    e2 = (1.0 + 4.0 * gm2) * np.exp(-4.0 * gm2 * kt) - 4.0 * gm2 * np.exp(-kt + 4.0 * gm2 * kt)
    g2 = 4.0 * gm2 * (
        np.exp(-4.0 * gm2 * kt) + np.exp(-kt + 4.0 * gm2 * kt) - 2.0 * np.exp(-kt / 2.0)
    )
    r2 = 1.0 - (1.0 + 8.0 * gm2) * np.exp(-4.0 * gm2 * kt) + 8.0 * gm2 * np.exp(-kt / 2.0)
    return e2, g2, r2
