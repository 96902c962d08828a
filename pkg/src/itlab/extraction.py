"""Detector-side inversion: time spectra at fixed z_f to momentum densities.

The measured quantity is the arrival-time density at a fixed detector
plane.  Dividing it by the classical density mu/t and reading it at the
arrival time of each initial momentum inverts the imaging map and
recovers the initial momentum distribution, up to corrections that die
off as the detector moves out.  Also here: the quantum probability
current at the detector (the actual click rate) in closed form, its
finite-difference oracle, and its time integral.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .errors import DomainError, NoArrivalError
from .propagation import evolve, evolve_boosted, evolve_field, evolve_free_exact
from .states import momentum_wavefunction


@dataclass(frozen=True)
class TimeSpectrum:
    """Arrival-time density samples at one detector position."""

    z_f: float
    mode: str
    t: np.ndarray
    density: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        d = np.asarray(self.density, dtype=float)
        if t.shape != d.shape or t.ndim != 1:
            raise DomainError("time spectrum needs matching 1D t and density")
        if not np.all(np.diff(t) > 0):
            raise DomainError("time samples must be strictly increasing")
        if np.any(d < 0):
            raise DomainError("densities must be nonnegative")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "density", d)


@dataclass(frozen=True)
class MomentumDistribution:
    """Extracted momentum density on a grid, with explicit coverage.

    density is nan wherever covered is False: those momenta produce no
    detector arrival in the active mode, and pretending they carry zero
    probability would misstate one-sided free-flight spectra.
    normalization is the integrated probability over the covered range.
    """

    p: np.ndarray
    density: np.ndarray
    covered: np.ndarray
    normalization: float

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        d = np.asarray(self.density, dtype=float)
        c = np.asarray(self.covered, dtype=bool)
        if not (p.shape == d.shape == c.shape) or p.ndim != 1:
            raise DomainError("momentum distribution needs matching 1D arrays")
        if not np.all(np.diff(p) > 0):
            raise DomainError("momentum grid must be strictly increasing")
        if np.any(d[c] < 0) or not np.all(np.isfinite(d[c])):
            raise DomainError("covered densities must be finite and nonnegative")
        if not 0.0 < self.normalization <= 1.05:
            raise DomainError(
                f"covered-range probability {self.normalization} outside (0, 1.05]"
            )
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "density", d)
        object.__setattr__(self, "covered", c)

    @property
    def samples(self):
        """(p_i, density) pairs over the covered part of the grid."""
        return list(zip(self.p[self.covered], self.density[self.covered]))


def arrival_time(p_i, config, mu):
    """Arrival time at the detector for initial momentum p_i.

    Free and boost: t = mu z_f/(p_i + p_c/2), requiring a forward
    effective momentum.  Field: the positive root
    t = (-p_i + sqrt(p_i^2 + 2 mu F z_f))/F; the other root is negative
    whenever the discriminant allows an arrival at all.
    """
    if config.mode == "field":
        disc = p_i * p_i + 2.0 * mu * config.F * config.z_f
        if disc < 0:
            raise NoArrivalError(f"p_i={p_i} never reaches the detector")
        t = (-p_i + math.sqrt(disc)) / config.F
        if t <= 0:
            raise NoArrivalError(f"p_i={p_i} has no forward crossing")
        return t
    p_eff = p_i + config.p0
    if p_eff <= 0:
        raise NoArrivalError(f"effective momentum {p_eff} is not forward")
    return mu * config.z_f / p_eff


def classical_density(t, mu):
    """Trajectory-map Jacobian dp_i/dz_f = mu/t, common to all modes."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("classical density needs t > 0")
    d = mu / t
    return d[()] if d.ndim == 0 else d


def time_spectrum(spec, config, t_grid):
    """Exact arrival-time density |Psi(z_f, t)|^2 on a grid."""
    t_grid = np.asarray(t_grid, dtype=float)
    dens = np.abs(evolve(spec, config, t_grid)) ** 2
    return TimeSpectrum(z_f=config.z_f, mode=config.mode, t=t_grid, density=dens)


def _covered_runs(p, covered):
    """Maximal index runs of consecutive covered grid points."""
    runs = []
    start = None
    for i, c in enumerate(covered):
        if c and start is None:
            start = i
        elif not c and start is not None:
            runs.append((start, i))
            start = None
    if start is not None:
        runs.append((start, len(covered)))
    return runs


def extract_momentum_density(spectrum_source, config, mu, p_grid):
    """Invert a time spectrum into an initial momentum density.

    For each covered p_i the estimate is (t/mu) * source(t) at
    t = arrival_time(p_i); uncovered momenta (no classical arrival, or
    outside the source's stated window) are reported as missing, never
    as zero.  spectrum_source must accept a 1D array of times.
    """
    p_grid = np.asarray(p_grid, dtype=float)
    covered = np.zeros(p_grid.shape, dtype=bool)
    t_arr = np.zeros(p_grid.shape, dtype=float)
    for i, p in enumerate(p_grid):
        try:
            t_arr[i] = arrival_time(float(p), config, mu)
        except NoArrivalError:
            continue
        covered[i] = True
    window = getattr(spectrum_source, "window", None)
    if window is not None:
        covered &= (t_arr >= window[0]) & (t_arr <= window[1])
    density = np.full(p_grid.shape, np.nan)
    if np.any(covered):
        t_cov = t_arr[covered]
        density[covered] = (t_cov / mu) * np.asarray(
            spectrum_source(t_cov), dtype=float
        )
    norm = 0.0
    for a, b in _covered_runs(p_grid, covered):
        if b - a >= 2:
            norm += np.trapezoid(density[a:b], p_grid[a:b])
    if norm <= 0.0:
        raise NoArrivalError("no covered momentum range on this grid")
    return MomentumDistribution(
        p=p_grid, density=density, covered=covered, normalization=float(norm)
    )


def _local_momentum(spec, config, t):
    # Im d/dz ln Psi; the Hermite factor is real and drops out
    mu, w = spec.mu, spec.omega
    wt2 = (w * t) ** 2
    if config.mode == "free":
        center = 0.0
        drift = 0.0
    elif config.mode == "boost":
        center = config.p0 * t / mu
        drift = config.p0
    else:
        center = config.F * t**2 / (2.0 * mu)
        drift = config.F * t
    return drift + mu * w**2 * t * (config.z_f - center) / (1.0 + wt2)


def current_density(spec, config, t):
    """Probability current at the detector, j = |Psi|^2 k(z_f, t)/mu.

    k is the local momentum Im d(ln Psi)/dz of the evolved state; for
    these closed forms the Hermite factor is real, so k is the Gaussian
    phase gradient plus the mode drift and j needs no finite differences.
    Broadcasts over t.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("current density needs t > 0")
    k = _local_momentum(spec, config, t)
    j = np.abs(evolve(spec, config, t)) ** 2 * k / spec.mu
    return j[()] if isinstance(j, np.ndarray) and j.ndim == 0 else j


def current_density_fd(spec, config, t):
    """Finite-difference oracle for current_density (tests only).

    Central difference with step 1e-4 of the local wavelength, floored
    at the packet momentum scale so nodes cannot zero the step.
    """
    mu = spec.mu
    k = abs(_local_momentum(spec, config, t))
    h = 1e-4 * 2.0 * math.pi / max(k, math.sqrt(mu * spec.omega))

    def amp(z):
        if config.mode == "free":
            return evolve_free_exact(spec, z, t)
        if config.mode == "boost":
            return evolve_boosted(spec, z, t, config.p_c)
        return evolve_field(spec, z, t, config.F)

    psi0 = amp(config.z_f)
    dpsi = (amp(config.z_f + h) - amp(config.z_f - h)) / (2.0 * h)
    return float((np.conj(psi0) * dpsi).imag / mu)


def integrated_current(spec, config, rel_eps=1e-4, points=16385):
    """Total probability ever crossing the detector, Int_0^inf j dt.

    The time integral is folded onto a momentum grid through the
    classical arrival map (t = mu z_f/p for free and boost, the field
    root otherwise), which turns the slowly decaying tail in t into a
    compactly supported integrand in p.  Equals 1/2 in free mode (the
    backward half never arrives), 1 with a boost exceeding the packet's
    momentum spread, and 1 in field mode.
    """
    mu = spec.mu
    scale = math.sqrt(mu * spec.omega)
    if config.mode == "field":
        half = 12.0 * scale
        p_i = np.linspace(-half, half, points)
        t = (-p_i + np.sqrt(p_i**2 + 2.0 * mu * config.F * config.z_f)) / config.F
        jac = t / (p_i + config.F * t)
    else:
        p_hi = 12.0 * scale + config.p0
        p_i = np.linspace(rel_eps * scale, p_hi, points)
        t = mu * config.z_f / p_i
        jac = mu * config.z_f / p_i**2
    j = current_density(spec, config, t)
    return float(simpson(j * jac, x=p_i))


def analytic_momentum_density(spec, p):
    """|PsiTilde_n(p)|^2, the exact initial momentum density."""
    return np.abs(momentum_wavefunction(spec, p)) ** 2


def covered_mass(spec, p_lo, p_hi, points=4097):
    """Integrated analytic momentum probability over [p_lo, p_hi]."""
    if not p_hi > p_lo:
        raise DomainError("covered range must have positive length")
    p = np.linspace(p_lo, p_hi, points)
    return float(simpson(analytic_momentum_density(spec, p), x=p))
