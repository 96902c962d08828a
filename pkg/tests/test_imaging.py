import numpy as np
import pytest

from itlab.errors import DomainError, SingularRatioError, UnsupportedModeError
from itlab.imaging import (
    Trajectory,
    action_field_mixed,
    action_field_position,
    action_free_mixed,
    action_free_position,
    current_ratio,
    detector_momentum,
    it_wavefunction,
    stationary_momentum,
    trajectory_position,
)
from itlab.propagation import DetectionConfig
from itlab.states import momentum_wavefunction


def test_action_values():
    # free: mu (z_f - z_i)^2 / (2t)
    assert action_free_position(2.0, 0.0, 1000.0, 918.0) == pytest.approx(
        1.836, rel=1e-14
    )
    assert action_free_mixed(2.0, 1.5, 1000.0, 918.0) == pytest.approx(
        1.7745098039215685, rel=1e-14
    )
    assert action_field_position(2.0, 0.0, 1000.0, 918.0, 1e-3) == pytest.approx(
        2.7906114742193173, rel=1e-14
    )
    assert action_field_mixed(2.0, 1.5, 1000.0, 918.0, 1e-3) == pytest.approx(
        2.7759622367465506, rel=1e-14
    )


def test_actions_reject_bad_times():
    with pytest.raises(DomainError):
        action_free_position(2.0, 0.0, 0.0, 918.0)
    with pytest.raises(DomainError):
        action_field_position(2.0, 0.0, -5.0, 918.0, 1e-3)


@pytest.mark.parametrize("F", [0.0, 1e-3, 2.4e-3])
def test_mixed_action_is_the_legendre_transform(F):
    # S~(z_f, p, t) = S(z_f, z_i*, t) + p z_i* at the z_i* conjugate to p
    mu, t, z_f = 918.0, 1300.0, 2.0
    for p in (-2.0, 0.0, 0.7, 3.1):
        z_i = z_f - p * t / mu - F * t**2 / (2.0 * mu)
        if F == 0.0:
            direct = action_free_position(z_f, z_i, t, mu)
            mixed = action_free_mixed(z_f, p, t, mu)
        else:
            direct = action_field_position(z_f, z_i, t, mu, F)
            mixed = action_field_mixed(z_f, p, t, mu, F)
        assert mixed == pytest.approx(direct + p * z_i, abs=1e-10)


def test_stationary_momentum_values():
    assert stationary_momentum(2.0, 1000.0, 918.0) == pytest.approx(1.836, rel=1e-14)
    assert stationary_momentum(2.0, 1000.0, 918.0, F=1e-3) == pytest.approx(
        1.336, rel=1e-14
    )
    assert stationary_momentum(2.0, 1000.0, 918.0, p_c=25.0) == pytest.approx(
        -10.664, rel=1e-14
    )


def test_stationary_momentum_errors():
    with pytest.raises(UnsupportedModeError):
        stationary_momentum(2.0, 1000.0, 918.0, F=1e-3, p_c=25.0)
    with pytest.raises(DomainError):
        stationary_momentum(2.0, 0.0, 918.0)


@pytest.mark.parametrize("F,p_c", [(0.0, 0.0), (1e-3, 0.0), (0.0, 25.0)])
def test_trajectory_round_trip(F, p_c):
    # launch momentum -> position -> stationary momentum closes exactly
    t = np.linspace(200.0, 3000.0, 15)
    for p_i in (-3.0, 0.4, 2.2):
        z = trajectory_position(p_i, t, 918.0, F=F, p_c=p_c)
        back = stationary_momentum(z, t, 918.0, F=F, p_c=p_c)
        assert np.allclose(back, p_i, rtol=0, atol=1e-12)


def test_trajectory_position_at_origin():
    assert trajectory_position(1.336, 1000.0, 918.0) == pytest.approx(
        1.4553376906318083, rel=1e-14
    )
    assert trajectory_position(0.5, 0.0, 918.0) == 0.0


def test_trajectory_record():
    traj = Trajectory(p_i=1.5)
    assert traj.z_i == 0.0
    assert traj.mode == "free"
    with pytest.raises(DomainError):
        Trajectory(p_i=float("nan"))


def test_it_density_equals_transported_momentum_density(excited):
    # |Psi_IT|^2 * t / mu = |psi~(p_i)|^2, the locus relation
    t = 2000.0
    config = DetectionConfig.free(2.0)
    density = abs(it_wavefunction(excited, config, t)) ** 2
    assert density == pytest.approx(0.025985086782415727, rel=1e-12)
    p_i = 918.0 * 2.0 / t
    target = abs(momentum_wavefunction(excited, p_i)) ** 2
    assert density * t / 918.0 == pytest.approx(target, rel=1e-12)


def test_it_density_locus_boost_and_field(excited):
    t = 1500.0
    boost = DetectionConfig.boost(5.0, 25.0)
    density = abs(it_wavefunction(excited, boost, t)) ** 2
    p_i = 918.0 * 5.0 / t - 12.5
    target = abs(momentum_wavefunction(excited, p_i)) ** 2
    assert density * t / 918.0 == pytest.approx(target, rel=1e-12)

    field = DetectionConfig.field(2.0, 1e-3)
    density = abs(it_wavefunction(excited, field, t)) ** 2
    p_i = 918.0 * 2.0 / t - 0.5 * 1e-3 * t
    target = abs(momentum_wavefunction(excited, p_i)) ** 2
    assert density * t / 918.0 == pytest.approx(target, rel=1e-12)


def test_it_wavefunction_broadcasts(excited):
    t = np.linspace(500.0, 3000.0, 12)
    out = it_wavefunction(excited, DetectionConfig.free(2.0), t)
    assert out.shape == t.shape


def test_current_ratio_closed_forms():
    # free ratio at omega*t = 1 is exactly 1/2
    free = DetectionConfig.free(2.0)
    assert current_ratio(free, 100.0, 918.0, 0.01) == pytest.approx(0.5, rel=1e-14)
    boost = DetectionConfig.boost(2.0, 25.0)
    assert current_ratio(boost, 100.0, 918.0, 0.01) == pytest.approx(
        0.8404139433551199, rel=1e-12
    )
    field = DetectionConfig.field(2.0, 1e-3)
    assert current_ratio(field, 100.0, 918.0, 0.01) == pytest.approx(
        0.5027159152634438, rel=1e-12
    )


def test_current_ratio_tends_to_one():
    t = 1e8
    for config in (
        DetectionConfig.free(2.0),
        DetectionConfig.boost(5.0, 25.0),
        DetectionConfig.field(2.0, 1e-3),
    ):
        assert current_ratio(config, t, 918.0, 0.01) == pytest.approx(1.0, abs=1e-6)


def test_current_ratio_singular_at_zero_detector_momentum():
    # z_f > 0 is enforced at construction, so force the degenerate geometry
    config = DetectionConfig.free(2.0)
    object.__setattr__(config, "z_f", 0.0)
    with pytest.raises(SingularRatioError):
        current_ratio(config, 100.0, 918.0, 0.01)


def test_detector_momentum():
    field = DetectionConfig.field(2.0, 1e-3)
    assert detector_momentum(field, 100.0, 918.0) == pytest.approx(18.41, rel=1e-14)
    free = DetectionConfig.free(2.0)
    assert detector_momentum(free, 100.0, 918.0) == pytest.approx(18.36, rel=1e-14)
