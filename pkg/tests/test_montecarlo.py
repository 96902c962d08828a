import numpy as np
import pytest

from itlab.errors import DomainError, EmptySupportError, InsufficientDataError
from itlab.extraction import covered_mass
from itlab.montecarlo import (
    BATCH,
    EventList,
    Histogram,
    build_histogram,
    default_window,
    piecewise_linear_density,
    reconstruct_momentum,
    sample_arrival_times,
    target_density,
)
from itlab.propagation import DetectionConfig
from itlab.units import US_IN_AU

# first draws of the seed-7 acquisition at 20 cm, 1 eV/cm (microseconds)
FROZEN_FIRST_TIMES_US = (
    4.998697101751549,
    5.052378958641393,
    5.358452883728181,
    5.156479472052872,
)


def test_default_window_field(excited, lab_field_config):
    lo, hi = default_window(excited, lab_field_config)
    assert lo == 0.0
    assert hi / US_IN_AU == pytest.approx(6.0868535353360205, rel=1e-10)


def test_default_window_free_is_the_acquisition_gate(excited, lab_free_config):
    lo, hi = default_window(excited, lab_free_config)
    assert lo == 0.0
    assert hi / US_IN_AU == pytest.approx(230.82564496675693, rel=1e-10)
    # gate formula: mu z_f / (0.12 sqrt(mu omega))
    lo, hi = default_window(excited, DetectionConfig.free(2.0))
    assert hi == pytest.approx(918.0 * 2.0 / (0.12 * excited.momentum_scale), rel=1e-12)


def test_default_window_boost(excited):
    lo, hi = default_window(excited, DetectionConfig.boost(5.0, 25.0))
    assert hi == pytest.approx(
        918.0 * 5.0 / (0.12 * excited.momentum_scale + 12.5), rel=1e-12
    )


def test_target_density_is_vectorized(excited, lab_field_config):
    f = target_density(excited, lab_field_config)
    t = np.linspace(3.5, 6.0, 7) * US_IN_AU
    out = f(t)
    assert out.shape == t.shape
    assert (out > 0.0).all()


def test_sampling_is_deterministic(excited, lab_field_config):
    a = sample_arrival_times(excited, lab_field_config, 400, 7)
    b = sample_arrival_times(excited, lab_field_config, 400, 7)
    assert np.array_equal(a.times, b.times)
    assert a.seed == 7
    assert a.mode == "field"
    assert len(a) == 400
    assert np.allclose(
        a.times[:4] / US_IN_AU, FROZEN_FIRST_TIMES_US, rtol=0, atol=1e-12
    )


def test_shorter_run_is_a_prefix(excited, lab_field_config):
    # fixed-size proposal batches make the accepted stream count-independent
    short = sample_arrival_times(excited, lab_field_config, 100, 7)
    long = sample_arrival_times(excited, lab_field_config, 400, 7)
    assert np.array_equal(short.times, long.times[:100])


def test_batch_size_is_pinned():
    # the reproducibility contract depends on this literal
    assert BATCH == 8192


def test_sampling_empty_support(ground):
    config = DetectionConfig.free(40.0)
    with pytest.raises(EmptySupportError):
        sample_arrival_times(ground, config, 10, 1, window=(1e-3, 2e-3))


def test_event_list_validates_window():
    with pytest.raises(DomainError):
        EventList(
            seed=1,
            z_f=2.0,
            mode="free",
            window=(0.0, 10.0),
            times=np.array([5.0, 11.0]),
        )


def test_histogram_construction(excited, lab_field_config):
    events = sample_arrival_times(excited, lab_field_config, 2000, 3)
    width = 0.01 * US_IN_AU
    hist = build_histogram(events, width)
    assert isinstance(hist, Histogram)
    assert len(hist.counts) == 609  # ceil(window / width)
    assert hist.counts.sum() == 2000
    assert hist.bin_width == pytest.approx(width, rel=1e-12)
    assert hist.centers.shape == hist.counts.shape
    # normalized_density integrates to one by construction
    assert hist.normalized_density.sum() * width == pytest.approx(1.0, rel=1e-12)


def test_piecewise_fit_interpolates_bin_centers(excited, lab_field_config):
    events = sample_arrival_times(excited, lab_field_config, 2000, 3)
    hist = build_histogram(events, 0.01 * US_IN_AU)
    fit = piecewise_linear_density(hist)
    assert np.allclose(fit(hist.centers), hist.normalized_density, rtol=1e-12)
    lo, hi = fit.window
    assert fit(lo - 1.0) == 0.0
    assert fit(hi + 1.0) == 0.0


def test_piecewise_fit_needs_two_bins():
    events = EventList(
        seed=0,
        z_f=2.0,
        mode="free",
        window=(0.0, 10.0),
        times=np.array([1.0, 1.5, 2.0]),
    )
    hist = build_histogram(events, 5.0)
    with pytest.raises(InsufficientDataError):
        piecewise_linear_density(hist)


def test_ks_distance_against_target(excited, lab_field_config):
    events = sample_arrival_times(excited, lab_field_config, 2000, 11)
    lo, hi = events.window
    grid = np.linspace(1e-3 * hi, hi, 32769)
    f = target_density(excited, lab_field_config)(grid)
    cdf = np.concatenate(([0.0], np.cumsum((f[1:] + f[:-1]) * 0.5 * np.diff(grid))))
    cdf /= cdf[-1]
    u = np.interp(np.sort(events.times), grid, cdf)
    n = len(events.times)
    d = np.max(np.maximum(np.arange(1, n + 1) / n - u, u - np.arange(n) / n))
    assert d < 1.63 / np.sqrt(n)  # alpha = 0.01


def _chi2_reduced(hist, spec, config, count):
    # merge adjacent bins until every expectation reaches 5
    lo, hi = hist.bin_edges[0], hist.bin_edges[-1]
    grid = np.linspace(max(lo, 1e-3 * hi), hi, 65537)
    f = target_density(spec, config)(grid)
    cdf = np.concatenate(([0.0], np.cumsum((f[1:] + f[:-1]) * 0.5 * np.diff(grid))))
    cdf /= cdf[-1]
    expected = count * np.diff(np.interp(hist.bin_edges, grid, cdf, left=0.0, right=1.0))
    merged_obs, merged_exp = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(hist.counts, expected):
        acc_o += o
        acc_e += e
        if acc_e >= 5.0:
            merged_obs.append(acc_o)
            merged_exp.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0.0 and merged_exp:
        merged_obs[-1] += acc_o
        merged_exp[-1] += acc_e
    merged_obs = np.array(merged_obs)
    merged_exp = np.array(merged_exp)
    dof = len(merged_exp) - 1
    return float(np.sum((merged_obs - merged_exp) ** 2 / merged_exp)) / dof, dof


def test_histogram_chi_square_field(excited, lab_field_config):
    events = sample_arrival_times(excited, lab_field_config, 10000, 7)
    hist = build_histogram(events, 0.01 * US_IN_AU)
    red, dof = _chi2_reduced(hist, excited, lab_field_config, 10000)
    assert dof == 212
    assert 0.7 < red < 1.4
    assert red == pytest.approx(0.9690763628646253, rel=1e-6)


def test_histogram_chi_square_free(excited, lab_free_config):
    events = sample_arrival_times(excited, lab_free_config, 10000, 7)
    hist = build_histogram(events, 1.0 * US_IN_AU)
    red, dof = _chi2_reduced(hist, excited, lab_free_config, 10000)
    assert dof == 214
    assert 0.7 < red < 1.4
    assert red == pytest.approx(1.0243807909427411, rel=1e-6)


def test_reconstruction_normalization_and_coverage(excited, lab_field_config):
    events = sample_arrival_times(excited, lab_field_config, 10000, 7)
    hist = build_histogram(events, 0.01 * US_IN_AU)
    p = np.linspace(-8.0, 8.0, 321)
    dist = reconstruct_momentum(hist, excited, lab_field_config, p)
    assert dist.covered.all()
    assert dist.normalization == pytest.approx(
        covered_mass(excited, -8.0, 8.0), rel=1e-12
    )
    # the fit is rescaled so its covered mass matches the analytic mass
    assert np.trapezoid(dist.density, p) == pytest.approx(
        dist.normalization, rel=1e-10
    )


def test_reconstruction_free_is_one_sided(excited, lab_free_config):
    events = sample_arrival_times(excited, lab_free_config, 4000, 7)
    hist = build_histogram(events, 1.0 * US_IN_AU)
    p = np.linspace(-8.0, 8.0, 321)
    dist = reconstruct_momentum(hist, excited, lab_free_config, p)
    assert not dist.covered[p <= 0.0].any()
    assert np.isnan(dist.density[p <= 0.0]).all()
    assert dist.covered[p >= 0.5].all()
