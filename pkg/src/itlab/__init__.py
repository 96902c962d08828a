"""Numerical laboratory for the imaging theorem in one dimension.

Exact quantum evolution of diatomic-fragmentation wavepackets, their
semiclassical (imaging-theorem) limits, momentum reconstruction from
detector time spectra, and a seeded Monte Carlo emulation of a
field-extraction experiment.  Everything internal runs in Hartree
atomic units with hbar = 1.
"""

__version__ = "0.1.0"

from .states import OscillatorSpec
from .propagation import DetectionConfig

__all__ = ["OscillatorSpec", "DetectionConfig", "__version__"]
