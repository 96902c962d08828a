"""Semiclassical layer: actions, trajectories, and the imaging-theorem limit.

The imaging theorem (IT) says a wavepacket propagated to a macroscopic
detector is, up to a known phase and the Jacobian mu/t, the initial
momentum wavefunction evaluated at the momentum of the classical
trajectory that reaches the detector.  This module holds the classical
actions that generate the propagator phases, the stationary-phase
momentum map and its inverse trajectory map, the IT asymptotic
wavefunction for each detection mode, and the closed-form ratio of
quantum current to classical flux.

Conventions: hbar = 1, fragmentation at z_i = 0 (default) and t_i = 0;
all times are elapsed times.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularRatioError, UnsupportedModeError
from .states import momentum_wavefunction

# principal sqrt(1/i): the IT prefactor is sqrt(mu/t) * e^(-i pi/4)
_SQRT_MINUS_I = complex(math.cos(-math.pi / 4.0), math.sin(-math.pi / 4.0))


@dataclass(frozen=True)
class Trajectory:
    """A classical fragment path: initial momentum, launch point, mode."""

    p_i: float
    z_i: float = 0.0
    mode: str = "free"

    def __post_init__(self):
        if not (math.isfinite(self.p_i) and math.isfinite(self.z_i)):
            raise DomainError("trajectory fields must be finite")


def action_free_position(z_f, z_i, t, mu):
    """Free-flight action between fixed endpoints, mu (z_f - z_i)^2 / (2t)."""
    if t <= 0:
        raise DomainError("position-space action needs t > 0")
    return mu * (z_f - z_i) ** 2 / (2.0 * t)


def action_free_mixed(z_f, p, t, mu):
    """Mixed-representation free action p z_f - p^2 t / (2 mu).

    Legendre transform of the position form: equals S(z_f, z_i, t) + p z_i
    with z_i = z_f - p t / mu the matching launch point.
    """
    if t < 0:
        raise DomainError("mixed action needs t >= 0")
    return p * z_f - p * p * t / (2.0 * mu)


def action_field_position(z_f, z_i, t, mu, F):
    """Action between fixed endpoints in a constant force F."""
    if t <= 0:
        raise DomainError("position-space action needs t > 0")
    drop = F * t * t / (2.0 * mu)
    return (
        F * t * z_f
        - F * F * t**3 / (6.0 * mu)
        + mu / (2.0 * t) * (z_f - z_i - drop) ** 2
    )


def action_field_mixed(z_f, p, t, mu, F):
    """Mixed-representation action in a constant force.

    (p + F t) z_f - p^2 t/(2 mu) - p F t^2/(2 mu) - F^2 t^3/(6 mu),
    the Legendre transform S(z_f, z_i, t) + p z_i with the launch point
    z_i = z_f - p t/mu - F t^2/(2 mu); reduces to the free mixed action
    at F = 0.  Its p-derivative is z_f - p t/mu - F t^2/(2 mu), whose
    zero is the stationary momentum below.
    """
    if t < 0:
        raise DomainError("mixed action needs t >= 0")
    return (
        (p + F * t) * z_f
        - p * p * t / (2.0 * mu)
        - p * F * t * t / (2.0 * mu)
        - F * F * t**3 / (6.0 * mu)
    )


def stationary_momentum(z_f, t, mu, F=0.0, p_c=0.0):
    """Initial momentum of the classical trajectory arriving at (z_f, t).

    p_i = (mu/t)(z_f - F t^2/(2 mu)) - p_c/2.  Boost and field are
    mutually exclusive; the combined action is not derived here.
    Broadcasts over t.
    """
    if F != 0.0 and p_c != 0.0:
        raise UnsupportedModeError("boost and field cannot combine")
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("stationary momentum needs t > 0")
    p = (mu / t) * (z_f - F * t**2 / (2.0 * mu)) - 0.5 * p_c
    return p[()] if p.ndim == 0 else p


def trajectory_position(p_i, t, mu, F=0.0, p_c=0.0):
    """Position at time t of the trajectory launched from z_i = 0.

    z(t) = (p_i + p_c/2) t/mu + F t^2/(2 mu); inverse of
    stationary_momentum at fixed t.  Broadcasts over p_i and t.
    """
    if F != 0.0 and p_c != 0.0:
        raise UnsupportedModeError("boost and field cannot combine")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("trajectory needs t >= 0")
    z = (np.asarray(p_i, dtype=float) + 0.5 * p_c) * t / mu + F * t**2 / (2.0 * mu)
    return z[()] if isinstance(z, np.ndarray) and z.ndim == 0 else z


def it_wavefunction(spec, config, t):
    """IT asymptotic amplitude at the detector for the configured mode.

    sqrt(mu/t) e^(-i pi/4) e^(i mu z_f^2/(2t)) PsiTilde_n(p_i), with the
    stationary momentum p_i of the mode; field mode carries the extra
    phase e^(i F t z_f/2 - i F^2 t^3/(24 mu)).  All mode phases are
    unimodular, so the density is (mu/t) |PsiTilde_n(p_i)|^2 exactly.
    Broadcasts over t.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("the IT form needs t > 0")
    mu = spec.mu
    z_f = config.z_f
    p_i = stationary_momentum(z_f, t, mu, F=config.F, p_c=config.p_c)
    psi = (
        np.sqrt(mu / t)
        * _SQRT_MINUS_I
        * np.exp(1j * mu * z_f**2 / (2.0 * t))
        * momentum_wavefunction(spec, p_i)
    )
    if config.mode == "field":
        F = config.F
        psi = psi * np.exp(1j * (F * t * z_f / 2.0 - F**2 * t**3 / (24.0 * mu)))
    return psi[()] if isinstance(psi, np.ndarray) and psi.ndim == 0 else psi


def detector_momentum(config, t, mu):
    """Classical momentum p_f = mu v_f at the detector.

    v_f = z_f/t in free and boost modes, z_f/t + F t/(2 mu) with the
    field on.  Broadcasts over t.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("detector momentum needs t > 0")
    p_f = mu * config.z_f / t + 0.5 * config.F * t
    return p_f[()] if p_f.ndim == 0 else p_f


def current_ratio(config, t, mu, omega):
    """Closed-form ratio of quantum current to classical flux |Psi|^2 v_f.

    Independent of the state index n:

      free   w^2 t^2 / (1 + w^2 t^2)
      boost  (p_0/p_f + w^2 t^2) / (1 + w^2 t^2)
      field  (F t/p_f + w^2 t^2) / (1 + w^2 t^2)

    with p_f = mu v_f as in detector_momentum.  Each tends to 1 for
    w t >> 1.  The field form is equivalently 1 - (p_i/p_f)/(1+w^2t^2)
    and reduces to the free one as F -> 0.  Broadcasts over t.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("current ratio needs t > 0")
    wt2 = (omega * t) ** 2
    p_f = detector_momentum(config, t, mu)
    if np.any(p_f == 0.0):
        raise SingularRatioError("classical detector momentum vanishes")
    if config.mode == "free":
        r = wt2 / (1.0 + wt2)
    elif config.mode == "boost":
        r = (config.p0 / p_f + wt2) / (1.0 + wt2)
    else:
        r = (config.F * t / p_f + wt2) / (1.0 + wt2)
    return r[()] if isinstance(r, np.ndarray) and r.ndim == 0 else r
