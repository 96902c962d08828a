"""Fast end-to-end identity checks, runnable from the CLI and the service.

Each check exercises a cross-module identity with an explicit numeric
bound; together they catch wiring regressions (phases, prefactors,
Jacobians, seeding) in about a second, without the statistical load of
the full test suite.
"""

import math
from dataclasses import dataclass

import numpy as np

from .extraction import current_density
from .imaging import (
    action_field_mixed,
    action_field_position,
    current_ratio,
    it_wavefunction,
    stationary_momentum,
)
from .montecarlo import sample_arrival_times
from .propagation import (
    DetectionConfig,
    evolve,
    evolve_free_exact,
    fourier_oracle,
    spatial_width,
)
from .states import OscillatorSpec, momentum_wavefunction
from .units import field_eVcm_to_au, length_cm_to_au

MU, OMEGA = 918.0, 0.01


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    bound: float


def _configs():
    return (
        DetectionConfig.free(2.0),
        DetectionConfig.boost(5.0, 25.0),
        DetectionConfig.field(2.0, 1e-3),
    )


def _check_locus():
    worst = 0.0
    spec = OscillatorSpec(n=2, mu=MU, omega=OMEGA)
    for config in _configs():
        for t in (800.0, 2000.0, 10000.0):
            p_i = stationary_momentum(config.z_f, t, MU, F=config.F, p_c=config.p_c)
            lhs = abs(it_wavefunction(spec, config, t)) ** 2 * t / MU
            rhs = abs(momentum_wavefunction(spec, p_i)) ** 2
            worst = max(worst, abs(lhs - rhs) / rhs)
    return CheckResult("locus-relation", worst < 1e-12, worst, 1e-12)


def _check_legendre():
    worst = 0.0
    for F in (0.0, 1e-3):
        for p in (-3.0, 0.0, 0.918, 4.7):
            for t in (150.0, 2000.0, 8e4):
                z_f = 2.0
                z_i = z_f - p * t / MU - F * t * t / (2.0 * MU)
                lhs = action_field_mixed(z_f, p, t, MU, F)
                rhs = action_field_position(z_f, z_i, t, MU, F) + p * z_i
                worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-12))
    return CheckResult("legendre-transform", worst < 1e-10, worst, 1e-10)


def _check_stationary_phase():
    worst = 0.0
    h = 1e-6
    for F in (0.0, 1e-3):
        for p in (-2.0, 0.5, 3.0):
            for t in (500.0, 5000.0):
                z_f = 5.0
                fd = (
                    action_field_mixed(z_f, p + h, t, MU, F)
                    - action_field_mixed(z_f, p - h, t, MU, F)
                ) / (2.0 * h)
                closed = z_f - p * t / MU - F * t * t / (2.0 * MU)
                worst = max(worst, abs(fd - closed) / max(abs(closed), 1e-9))
    return CheckResult("stationary-phase", worst < 1e-6, worst, 1e-6)


def _check_current_ratio():
    worst = 0.0
    spec = OscillatorSpec(n=2, mu=MU, omega=OMEGA)
    for config in _configs():
        for wt in (1.0, 5.0, 20.0):
            t = wt / OMEGA
            v_f = config.z_f / t + config.F * t / (2.0 * MU)
            computed = current_density(spec, config, t) / (
                abs(evolve(spec, config, t)) ** 2 * v_f
            )
            closed = current_ratio(config, t, MU, OMEGA)
            worst = max(worst, abs(computed - closed) / abs(closed))
    return CheckResult("current-ratio", worst < 1e-6, worst, 1e-6)


def _check_oracle():
    spec = OscillatorSpec(n=2, mu=MU, omega=OMEGA)
    closed = abs(evolve_free_exact(spec, 2.0, 2000.0)) ** 2
    oracle = abs(fourier_oracle(spec, 2.0, 2000.0)) ** 2
    rel = abs(closed - oracle) / oracle
    return CheckResult("fourier-oracle", rel < 1e-6, rel, 1e-6)


def _check_width_product():
    spec = OscillatorSpec(n=0, mu=MU, omega=OMEGA)
    t = 20.0 / OMEGA
    product = spatial_width(spec, t) * math.sqrt(MU * OMEGA / 2.0)
    target = 0.5 * math.sqrt(1.0 + (OMEGA * t) ** 2)
    rel = abs(product - target) / target
    return CheckResult("width-product", rel < 1e-4, rel, 1e-4)


def _check_sampling_determinism():
    spec = OscillatorSpec(n=2, mu=MU, omega=OMEGA)
    config = DetectionConfig.field(length_cm_to_au(20.0), field_eVcm_to_au(1.0))
    a = sample_arrival_times(spec, config, 200, seed=7)
    b = sample_arrival_times(spec, config, 200, seed=7)
    same = np.array_equal(a.times, b.times)
    return CheckResult("sampling-determinism", same, 0.0 if same else 1.0, 0.0)


def run_selfcheck():
    """Run every check; returns the list of CheckResult."""
    return [
        _check_locus(),
        _check_legendre(),
        _check_stationary_phase(),
        _check_current_ratio(),
        _check_oracle(),
        _check_width_product(),
        _check_sampling_determinism(),
    ]


def selfcheck_ok(results):
    return all(r.passed for r in results)
