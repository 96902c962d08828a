import pytest

from itlab.propagation import DetectionConfig
from itlab.states import OscillatorSpec
from itlab.units import field_eVcm_to_au, length_cm_to_au


@pytest.fixture
def ground():
    return OscillatorSpec(n=0)


@pytest.fixture
def excited():
    return OscillatorSpec(n=2)


@pytest.fixture
def lab_field_config():
    # the laboratory acquisition geometry: 20 cm drift, 1 eV/cm extraction
    return DetectionConfig.field(length_cm_to_au(20.0), field_eVcm_to_au(1.0))


@pytest.fixture
def lab_free_config():
    return DetectionConfig.free(length_cm_to_au(20.0))
