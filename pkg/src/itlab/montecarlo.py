"""Simulated time-of-flight experiment: clicks, histograms, reconstruction.

Rejection-samples detector arrival times from the exact |Psi(z_f, t)|^2,
bins them as a real acquisition would, fits the histogram with a
piecewise-linear density, and pushes the fit through the extraction
inversion to recover the initial momentum distribution.

Reproducibility contract: sampling uses numpy's default PCG64 generator
seeded explicitly, drawing fixed batches of 8192 proposal times followed
by 8192 acceptance uniforms per batch.  The accepted sequence for a
given (seed, parameters) is therefore bit-stable across runs and count
values (a shorter run is a prefix of a longer one).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import golden

from .errors import DomainError, EmptySupportError, InsufficientDataError
from .extraction import (
    covered_mass,
    extract_momentum_density,
    MomentumDistribution,
    _covered_runs,
)
from .propagation import evolve

BATCH = 8192

# sampling mass fraction the window must keep in field mode
_WINDOW_MASS = 0.9999

# free/boost spectra fall off only like 1/t, so no finite window holds
# 99.99% of their (logarithmically divergent) mass; the acquisition gate
# instead runs to the arrival time of this momentum, in packet units
_SLOWEST_MOMENTUM_FRACTION = 0.12


@dataclass(frozen=True)
class EventList:
    """Simulated detector clicks for one seeded acquisition run."""

    seed: int
    z_f: float
    mode: str
    window: tuple
    times: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        lo, hi = self.window
        if t.size and (t.min() < lo or t.max() > hi):
            raise DomainError("event outside the sampling window")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "window", (float(lo), float(hi)))

    def __len__(self):
        return self.times.size


@dataclass(frozen=True)
class Histogram:
    """Left-closed bins over the acquisition window with count density."""

    bin_edges: np.ndarray
    counts: np.ndarray
    normalized_density: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "bin_edges", np.asarray(self.bin_edges, dtype=float))
        object.__setattr__(self, "counts", np.asarray(self.counts))
        object.__setattr__(
            self, "normalized_density", np.asarray(self.normalized_density, dtype=float)
        )

    @property
    def bin_width(self):
        return float(self.bin_edges[1] - self.bin_edges[0])

    @property
    def centers(self):
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])


def target_density(spec, config):
    """The sampled quantity: exact |Psi(z_f, t)|^2 as a vectorized callable."""

    def density(t):
        return np.abs(evolve(spec, config, t)) ** 2

    return density


def default_window(spec, config, points=32769):
    """Acquisition window for the configured mode.

    Field mode: [0, t_9999] with t_9999 from a numerical CDF scan, so the
    window provably holds 99.99% of the arrival mass (the field spectrum
    has finite mass).  Free and boost spectra decay like 1/t with
    divergent total mass, so the window is a measurement gate ending at
    the arrival time of the slowest collected momentum, a fixed fraction
    of the packet momentum scale.
    """
    mu = spec.mu
    scale = math.sqrt(mu * spec.omega)
    if config.mode != "field":
        p_slow = _SLOWEST_MOMENTUM_FRACTION * scale
        return (0.0, mu * config.z_f / (p_slow + config.p0))
    # latest time with any support: arrival of a deep backward momentum
    p_back = 12.0 * scale
    t_hi = (p_back + math.sqrt(p_back**2 + 2.0 * mu * config.F * config.z_f)) / config.F
    t = np.linspace(0.0, t_hi, points)
    d = target_density(spec, config)(t)
    cdf = np.concatenate([[0.0], np.cumsum(0.5 * (d[1:] + d[:-1]) * np.diff(t))])
    if cdf[-1] <= 0.0:
        raise EmptySupportError("no arrival density below the scan horizon")
    return (0.0, float(t[np.searchsorted(cdf, _WINDOW_MASS * cdf[-1])]))


def _envelope_height(density, window, points=10001):
    """1.05 x the window maximum, grid-scanned then golden-refined."""
    t = np.linspace(window[0], window[1], points)
    d = density(t)
    i = int(np.argmax(d))
    best = d[i]
    if best <= 0.0:
        raise EmptySupportError("density vanishes on the sampling window")
    if 0 < i < points - 1 and d[i] > d[i - 1] and d[i] > d[i + 1]:
        t_ref = golden(lambda x: -density(x), brack=(t[i - 1], t[i], t[i + 1]))
        best = max(best, float(density(t_ref)))
    return 1.05 * best


def sample_arrival_times(spec, config, count, seed, window=None):
    """Draw `count` arrival times from the exact spectrum, reproducibly.

    Uniform-envelope rejection over the window; see the module docstring
    for the fixed batch structure that makes runs bit-stable.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    if window is None:
        window = default_window(spec, config)
    lo, hi = float(window[0]), float(window[1])
    if not hi > lo:
        raise DomainError("window must have positive length")
    density = target_density(spec, config)
    height = _envelope_height(density, (lo, hi))
    rng = np.random.default_rng(seed)
    chunks = []
    have = 0
    idle = 0
    while have < count:
        u = rng.random(BATCH)
        v = rng.random(BATCH)
        proposal = lo + (hi - lo) * u
        kept = proposal[v * height < density(proposal)]
        chunks.append(kept)
        have += kept.size
        idle = idle + 1 if kept.size == 0 else 0
        if idle >= 64:
            raise EmptySupportError("rejection sampling is not accepting events")
    times = np.concatenate(chunks)[:count]
    return EventList(seed=seed, z_f=config.z_f, mode=config.mode,
                     window=(lo, hi), times=times)


def build_histogram(events, bin_width):
    """Count density over the event window: counts/(N bin_width)."""
    if not bin_width > 0:
        raise DomainError("bin width must be positive")
    lo, hi = events.window
    nbins = int(math.ceil((hi - lo) / bin_width))
    edges = lo + bin_width * np.arange(nbins + 1)
    counts, _ = np.histogram(events.times, bins=edges)
    density = counts / (len(events) * bin_width)
    return Histogram(bin_edges=edges, counts=counts, normalized_density=density)


class PiecewiseLinearDensity:
    """Linear interpolation through bin centers, zero beyond the ends.

    Callable on arrays of times; exposes `window` so extraction can mark
    momenta arriving outside the fitted span as uncovered instead of
    silently reading the clamped zero.
    """

    def __init__(self, centers, values, window):
        self.centers = np.asarray(centers, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self.window = (float(window[0]), float(window[1]))

    def __call__(self, t):
        return np.interp(np.asarray(t, dtype=float), self.centers, self.values,
                         left=0.0, right=0.0)


def piecewise_linear_density(hist):
    """Fit the histogram; needs at least two nonempty bins to carry shape."""
    if int(np.count_nonzero(hist.counts)) < 2:
        raise InsufficientDataError("need >= 2 nonempty bins to fit")
    return PiecewiseLinearDensity(
        hist.centers, hist.normalized_density,
        (hist.bin_edges[0], hist.bin_edges[-1]),
    )


def reconstruct_momentum(hist, spec, config, p_grid):
    """Extraction applied to the fitted spectrum, with absolute rescaling.

    The histogram only fixes the time density up to the unknown total
    arrival mass, so the extracted curve is rescaled to make its
    covered-range integral equal the analytic covered-range momentum
    probability (about 1 in field mode, about 1/2 for one-sided free
    flight).
    """
    fit = piecewise_linear_density(hist)
    raw = extract_momentum_density(fit, config, spec.mu, p_grid)
    analytic = 0.0
    for a, b in _covered_runs(raw.p, raw.covered):
        if b - a >= 2:
            analytic += covered_mass(spec, float(raw.p[a]), float(raw.p[b - 1]))
    scale = analytic / raw.normalization
    return MomentumDistribution(
        p=raw.p,
        density=raw.density * scale,
        covered=raw.covered,
        normalization=analytic,
    )
