import numpy as np
import pytest

from itlab.errors import DomainError
from itlab.states import (
    I_MINUS,
    N_MAX,
    OscillatorSpec,
    hermite,
    momentum_wavefunction,
    position_wavefunction,
)


def test_spec_validation():
    with pytest.raises(DomainError):
        OscillatorSpec(n=-1)
    with pytest.raises(DomainError):
        OscillatorSpec(n=N_MAX + 1)
    with pytest.raises(DomainError):
        OscillatorSpec(n=1.5)
    with pytest.raises(DomainError):
        OscillatorSpec(n=0, mu=0.0)
    with pytest.raises(DomainError):
        OscillatorSpec(n=0, omega=-0.01)


def test_momentum_scale():
    assert OscillatorSpec(n=0).momentum_scale == pytest.approx(
        3.0298514815086235, rel=1e-14
    )


def test_phase_table():
    assert I_MINUS == (1.0 + 0.0j, -1.0j, -1.0 + 0.0j, 1.0j)
    for n in range(8):
        # i**(-n) without complex-power rounding
        assert I_MINUS[n % 4] == pytest.approx(1.0j ** (-n), abs=1e-15)


def test_hermite_against_polynomial_module():
    x = np.linspace(-3.0, 3.0, 41)
    for n in range(7):
        coeffs = np.zeros(n + 1)
        coeffs[n] = 1.0
        ref = np.polynomial.hermite.hermval(x, coeffs)
        assert np.allclose(hermite(n, x), ref, rtol=1e-12, atol=1e-9)


def test_momentum_density_values():
    s0 = OscillatorSpec(n=0)
    s2 = OscillatorSpec(n=2)
    # |psi_0(0)|^2 = 1/sqrt(pi*mu*omega)
    assert abs(momentum_wavefunction(s0, 0.0)) ** 2 == pytest.approx(
        0.18621030997428134, rel=1e-12
    )
    assert abs(momentum_wavefunction(s2, 0.0)) ** 2 == pytest.approx(
        0.09310515498714067, rel=1e-12
    )
    # the n=2 outer maxima sit at p = +-sqrt(2.5)*sqrt(mu*omega)
    p_peak = np.sqrt(2.5) * s2.momentum_scale
    assert p_peak == pytest.approx(4.790615826801394, rel=1e-12)
    assert abs(momentum_wavefunction(s2, p_peak)) ** 2 == pytest.approx(
        0.12228058430395715, rel=1e-12
    )


def test_n2_node_position():
    s2 = OscillatorSpec(n=2)
    p_node = np.sqrt(918.0 * 0.01 / 2.0)
    assert p_node == pytest.approx(2.142428528562855, rel=1e-12)
    assert abs(momentum_wavefunction(s2, p_node)) ** 2 < 1e-30


def test_momentum_normalization():
    grid = np.linspace(-18.0, 18.0, 100001)
    for n in (0, 1, 2, 5):
        spec = OscillatorSpec(n=n)
        rho = np.abs(momentum_wavefunction(spec, grid)) ** 2
        assert np.trapezoid(rho, grid) == pytest.approx(1.0, abs=1e-4)


def test_momentum_phase_parity():
    p = np.linspace(-6.0, 6.0, 101)
    for n in range(5):
        amp = momentum_wavefunction(OscillatorSpec(n=n), p)
        if n % 2 == 0:
            assert np.max(np.abs(amp.imag)) == 0.0
        else:
            assert np.max(np.abs(amp.real)) == 0.0


def test_position_state_is_real_and_normalized():
    s0 = OscillatorSpec(n=0)
    assert position_wavefunction(s0, 0.0) == pytest.approx(
        (918.0 * 0.01 / np.pi) ** 0.25, rel=1e-14
    )
    # display value of the n=0 normalization prefactor
    assert position_wavefunction(s0, 0.0) == pytest.approx(1.30745, abs=1e-5)
    z = np.linspace(-4.0, 4.0, 40001)
    for n in (0, 2):
        psi = position_wavefunction(OscillatorSpec(n=n), z)
        assert np.trapezoid(np.abs(psi) ** 2, z) == pytest.approx(1.0, abs=1e-8)
