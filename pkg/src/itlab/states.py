"""Initial vibrational states of the fragment relative motion.

Harmonic oscillator eigenstates in the momentum representation.  The
global phase i**(-n) is kept so that the corresponding position-space
state at t = 0 comes out real.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# The upward recurrence in double precision is safe well past n = 30, but the
# 2^n n! normalization factors start to deserve log-space care beyond that.
N_MAX = 30

# i**(-n) cycles with period 4; a table avoids complex-power rounding drift.
I_MINUS = (1.0 + 0.0j, -1.0j, -1.0 + 0.0j, 1.0j)


@dataclass(frozen=True)
class OscillatorSpec:
    """State label: quantum number n, reduced mass mu, frequency omega (au)."""

    n: int
    mu: float = 918.0
    omega: float = 0.01

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise DomainError(f"n must be an integer, got {self.n!r}")
        if self.n < 0 or self.n > N_MAX:
            raise DomainError(f"n must be in [0, {N_MAX}], got {self.n}")
        if not self.mu > 0:
            raise DomainError(f"mu must be positive, got {self.mu}")
        if not self.omega > 0:
            raise DomainError(f"omega must be positive, got {self.omega}")

    @property
    def momentum_scale(self):
        """sqrt(mu*omega), the natural momentum width of the state family."""
        return math.sqrt(self.mu * self.omega)


def hermite(n, x):
    """Physicists' Hermite polynomial H_n(x), vectorized over x.

    Upward recurrence H_0 = 1, H_1 = 2x, H_n = 2x H_{n-1} - 2(n-1) H_{n-2}.
    n above N_MAX is refused (overflow risk in the downstream factors).
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"hermite order must be an integer, got {n!r}")
    if n < 0:
        raise DomainError(f"hermite order must be nonnegative, got {n}")
    if n > N_MAX:
        raise DomainError(f"hermite order {n} exceeds supported maximum {N_MAX}")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    h = np.ones(x.shape)
    if n >= 1:
        h_prev = h
        h = 2.0 * x
        for k in range(1, n):
            h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return float(h) if scalar else h


def _norm(spec):
    # (2^n n!)^(-1/2), shared by both representations
    return 1.0 / math.sqrt(2.0**spec.n * math.factorial(spec.n))


def momentum_wavefunction(spec, p):
    """Momentum-space eigenstate at p (au), hbar = 1.

    i^(-n) (2^n n!)^(-1/2) (pi mu omega)^(-1/4) exp(-p^2/(2 mu omega))
    H_n(p / sqrt(mu omega)).  Broadcasts over p; returns complex values.
    """
    p = np.asarray(p, dtype=float)
    scalar = p.ndim == 0
    s2 = spec.mu * spec.omega
    psi = (
        I_MINUS[spec.n % 4]
        * _norm(spec)
        * (math.pi * s2) ** -0.25
        * np.exp(-(p**2) / (2.0 * s2))
        * hermite(spec.n, p / math.sqrt(s2))
    )
    return complex(psi) if scalar else psi


def position_wavefunction(spec, z):
    """Position-space eigenstate at t = 0; real by the phase convention.

    The exact free evolution reduces to this at t = 0.
    """
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    b2 = spec.mu * spec.omega
    val = (
        (b2 / math.pi) ** 0.25
        * _norm(spec)
        * np.exp(-b2 * z**2 / 2.0)
        * hermite(spec.n, math.sqrt(b2) * z)
    )
    return float(val) if scalar else val
