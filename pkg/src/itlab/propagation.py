"""Exact time evolution of the initial states, plus a quadrature cross-check.

Closed forms: free evolution of the oscillator eigenstates, a
center-of-mass boost (momentum kick p_c, entering as p0 = p_c/2 for the
detected fragment), and a constant extraction force F toward the detector.
``fourier_oracle`` evaluates the defining momentum integral by direct
quadrature and exists solely to validate the closed forms at microscopic
times; macroscopic times are the closed forms' job.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .errors import DomainError, OracleWindowError, UnsupportedModeError
from .states import I_MINUS, OscillatorSpec, hermite, momentum_wavefunction

MODES = ("free", "boost", "field")

# grid points the oracle may spend before refusing
_ORACLE_MAX_POINTS = 2 * 10**7


@dataclass(frozen=True)
class DetectionConfig:
    """Detector position z_f > 0 and the active extraction mode.

    Exactly one mode per run: free flight, a boost p_c >= 0 (fragment
    momentum shift p0 = p_c/2), or a constant force F > 0 toward the
    detector.  Boost and field are never combined; the mixed action has
    no derivation here.
    """

    z_f: float
    mode: str = "free"
    p_c: float = 0.0
    F: float = 0.0

    def __post_init__(self):
        if self.mode not in MODES:
            raise UnsupportedModeError(f"unknown detection mode {self.mode!r}")
        if not self.z_f > 0:
            raise DomainError(f"z_f must be positive, got {self.z_f}")
        if self.mode == "boost":
            if self.p_c < 0:
                raise DomainError(f"p_c must be nonnegative, got {self.p_c}")
            if self.F != 0.0:
                raise UnsupportedModeError("boost mode takes no field F")
        elif self.mode == "field":
            if not self.F > 0:
                raise DomainError(f"field mode needs F > 0, got {self.F}")
            if self.p_c != 0.0:
                raise UnsupportedModeError("field mode takes no boost p_c")
        else:
            if self.p_c != 0.0 or self.F != 0.0:
                raise UnsupportedModeError("free mode takes neither p_c nor F")

    @classmethod
    def free(cls, z_f):
        return cls(z_f=z_f)

    @classmethod
    def boost(cls, z_f, p_c):
        return cls(z_f=z_f, mode="boost", p_c=p_c)

    @classmethod
    def field(cls, z_f, F):
        return cls(z_f=z_f, mode="field", F=F)

    @property
    def p0(self):
        """Fragment momentum shift p_c/2 (zero outside boost mode)."""
        return 0.5 * self.p_c


@dataclass(frozen=True)
class EvolutionTimes:
    """Absolute release/detection times; every formula takes the elapsed t.

    The release point defaults to t_i = 0 (and z_i = 0), which loses no
    accuracy at macroscopic detector distances.
    """

    t_f: float
    t_i: float = 0.0

    def __post_init__(self):
        if self.t_f < self.t_i:
            raise DomainError("t_f must not precede t_i")

    @property
    def t(self):
        return self.t_f - self.t_i


def _maybe_scalar(a):
    return a[()] if isinstance(a, np.ndarray) and a.ndim == 0 else a


def evolve_free_exact(spec, z_f, t):
    """Free evolution of eigenstate n at (z_f, t), closed form, hbar = 1.

    Completing the square in the momentum integral gives a complex Gaussian
    envelope spreading as sqrt(1 + i w t) and a Hermite factor at the
    rescaled argument z_f sqrt(mu w / (1 + w^2 t^2)).  Broadcasts over z_f
    and t.

    Branch rules: the n-dependent quotient ((-1 + i w t)/(1 + i w t))^(n/2)
    is exp(i n theta/2) with theta = pi - 2 arctan(w t), continuous on
    t >= 0 and equal to pi at t = 0, so together with the i^(-n) of the
    initial state the t = 0 value is real.  sqrt(1 + i w t) is principal
    (positive real part).
    """
    z_f = np.asarray(z_f, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("elapsed time t must be >= 0")
    mu, w, n = spec.mu, spec.omega, spec.n
    wt = w * t
    theta = math.pi - 2.0 * np.arctan(wt)
    one_iwt = 1.0 + 1j * wt
    pref = I_MINUS[n % 4] * (mu * w / math.pi) ** 0.25 / math.sqrt(
        2.0**n * math.factorial(n)
    )
    psi = (
        pref
        * np.exp(0.5j * n * theta)
        * np.exp(-mu * w * z_f**2 / (2.0 * one_iwt))
        / np.sqrt(one_iwt)
        * hermite(n, np.sqrt(mu * w / (1.0 + wt**2)) * z_f)
    )
    return _maybe_scalar(psi)


def evolve_boosted(spec, z_f, t, p_c):
    """Boosted evolution: the momentum-shifted state seen in the lab frame.

    exp(i p0 z_f - i p0^2 t/(2 mu)) * Psi(z_f - p0 t/mu, t) with p0 = p_c/2,
    as follows from substituting the shifted momentum state into the free
    kernel.  The density is the free density at the shifted point.
    """
    if p_c < 0:
        raise DomainError(f"p_c must be nonnegative, got {p_c}")
    z_f = np.asarray(z_f, dtype=float)
    t = np.asarray(t, dtype=float)
    p0 = 0.5 * p_c
    phase = np.exp(1j * (p0 * z_f - p0 * p0 * t / (2.0 * spec.mu)))
    return _maybe_scalar(phase * evolve_free_exact(spec, z_f - p0 * t / spec.mu, t))


def evolve_field(spec, z_f, t, F):
    """Evolution under a constant force F > 0 toward the detector.

    exp(i F t z_f - i F^2 t^3/(6 mu)) * Psi(z_f - F t^2/(2 mu), t), the
    accelerated-frame transform of the free evolution; the prefactor is
    unimodular so the density is the free one at the fallen point.
    """
    if not F > 0:
        raise DomainError(f"field evolution needs F > 0, got {F}")
    z_f = np.asarray(z_f, dtype=float)
    t = np.asarray(t, dtype=float)
    mu = spec.mu
    phase = np.exp(1j * (F * t * z_f - F**2 * t**3 / (6.0 * mu)))
    return _maybe_scalar(phase * evolve_free_exact(spec, z_f - F * t**2 / (2.0 * mu), t))


def evolve(spec, config, t):
    """Exact amplitude at the detector for the configured mode."""
    if config.mode == "free":
        return evolve_free_exact(spec, config.z_f, t)
    if config.mode == "boost":
        return evolve_boosted(spec, config.z_f, t, config.p_c)
    return evolve_field(spec, config.z_f, t, config.F)


def fourier_oracle(spec, z_f, t, p_shift=0.0):
    """Direct Simpson quadrature of the defining momentum integral.

    Psi(z_f, t) = (2 pi)^(-1/2) Int dp exp(i p z_f - i p^2 t/(2 mu))
                  PsiTilde_n(p - p_shift)

    Independent of all closed forms above (no completed square, no branch
    choices), so it serves as their oracle.  The grid spans [-P, P] with
    P = 8 sqrt(mu w) + |p_shift|; the step keeps the kernel phase advance
    under pi/16 per point and resolves the Gaussian envelope.  Calls that
    would need more than 2e7 points are refused.
    """
    if t < 0:
        raise DomainError("elapsed time t must be >= 0")
    mu, w = spec.mu, spec.omega
    half_width = 8.0 * math.sqrt(mu * w) + abs(p_shift)
    # max |d/dp (p z_f - p^2 t/(2 mu))| over the grid
    dphi_max = abs(z_f) + half_width * t / mu
    step = min(
        math.pi / 16.0 / max(dphi_max, 1e-30),
        math.sqrt(mu * w) / 64.0,
    )
    npts = int(math.ceil(2.0 * half_width / step)) + 1
    if npts > _ORACLE_MAX_POINTS:
        raise OracleWindowError(
            f"oracle would need {npts} quadrature points at t={t} "
            f"(limit {_ORACLE_MAX_POINTS}); use the closed forms there"
        )
    if npts % 2 == 0:
        npts += 1
    p = np.linspace(-half_width, half_width, npts)
    integrand = (
        np.exp(1j * (p * z_f - p**2 * t / (2.0 * mu)))
        * momentum_wavefunction(spec, p - p_shift)
    )
    value = simpson(integrand, dx=2.0 * half_width / (npts - 1))
    return complex(value / math.sqrt(2.0 * math.pi))


def _width_sigma(spec, t):
    # exact second moment of eigenstate n under free spreading
    return math.sqrt((spec.n + 0.5) / (spec.mu * spec.omega)) * math.sqrt(
        1.0 + (spec.omega * t) ** 2
    )


def spatial_width(spec, t, points=8193):
    """Standard deviation of the free-evolution density by quadrature.

    Composite Simpson on [-12 sigma, 12 sigma] around the (parity-fixed)
    center; sigma is the known analytic scale, used only to size the grid.
    """
    if t < 0:
        raise DomainError("elapsed time t must be >= 0")
    sigma = _width_sigma(spec, t)
    z = np.linspace(-12.0 * sigma, 12.0 * sigma, points)
    rho = np.abs(evolve_free_exact(spec, z, t)) ** 2
    dz = z[1] - z[0]
    m0 = simpson(rho, dx=dz)
    m1 = simpson(rho * z, dx=dz) / m0
    m2 = simpson(rho * z**2, dx=dz) / m0
    return math.sqrt(m2 - m1 * m1)
