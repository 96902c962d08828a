"""Atomic-unit conversions for the laboratory-facing quantities.

All physics in this package runs in Hartree atomic units with hbar = 1.
Laboratory units appear only at the I/O boundaries: detector distances
(cm), extraction fields (eV/cm) and arrival times (microseconds).
"""

import re
from dataclasses import dataclass

from .errors import DomainError

# CODATA 2018, pinned as literals so serialized datasets do not drift when
# the installed scipy moves to a newer CODATA table.
AU_TIME_IN_SECONDS = 2.4188843265857e-17   # 1 au of time
BOHR_IN_METERS = 5.29177210903e-11         # a0
BOHR_VELOCITY_IN_MPS = 2.18769126364e6     # v0 = alpha * c
HARTREE_IN_EV = 27.211386245988

CM_IN_BOHR = 1e-2 / BOHR_IN_METERS
US_IN_AU = 1e-6 / AU_TIME_IN_SECONDS       # 1 microsecond in au of time


@dataclass(frozen=True)
class PhysicalConstants:
    """Constant bundle echoed by the version/introspection interfaces."""

    au_time_in_seconds: float = AU_TIME_IN_SECONDS
    bohr_in_meters: float = BOHR_IN_METERS
    bohr_velocity_in_mps: float = BOHR_VELOCITY_IN_MPS
    hartree_in_eV: float = HARTREE_IN_EV

    def as_dict(self):
        return {
            "au_time_in_seconds": self.au_time_in_seconds,
            "bohr_in_meters": self.bohr_in_meters,
            "bohr_velocity_in_mps": self.bohr_velocity_in_mps,
            "hartree_in_eV": self.hartree_in_eV,
        }


CONSTANTS = PhysicalConstants()


def time_au_to_seconds(t):
    return t * AU_TIME_IN_SECONDS


def seconds_to_time_au(t):
    return t / AU_TIME_IN_SECONDS


def time_au_to_us(t):
    return t * AU_TIME_IN_SECONDS * 1e6


def us_to_time_au(t):
    return t * US_IN_AU


def length_cm_to_au(z):
    return z * CM_IN_BOHR


def length_au_to_cm(z):
    return z / CM_IN_BOHR


def field_eVcm_to_au(F):
    # (eV -> hartree) / (cm -> bohr)
    return F * (1.0 / HARTREE_IN_EV) / CM_IN_BOHR


def field_au_to_eVcm(F):
    return F * HARTREE_IN_EV * CM_IN_BOHR


# ---------------------------------------------------------------------------
# unit-tagged input parsing
#
# Dimensioned CLI/service inputs must carry an explicit tag ("2a0", "20cm",
# "1eV/cm", "25au", "0.01us"); bare numbers are rejected.  Conversions all
# go through the constants above.

LENGTH_TAGS = {"a0": 1.0, "cm": CM_IN_BOHR, "m": 1e2 * CM_IN_BOHR}
FIELD_TAGS = {"au": 1.0, "eV/cm": field_eVcm_to_au(1.0)}
MOMENTUM_TAGS = {"au": 1.0}
TIME_TAGS = {"au": 1.0, "us": US_IN_AU, "s": 1.0 / AU_TIME_IN_SECONDS}

_QUANTITY_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(\S.*?)?\s*$")


def parse_quantity(text, tags, kind):
    """Parse '<number><tag>' into au using the given tag table.

    Raises DomainError for bare numbers, unknown tags, or unparseable text.
    """
    m = _QUANTITY_RE.match(str(text))
    if m is None:
        raise DomainError(f"cannot parse {kind} quantity {text!r}")
    value, tag = m.groups()
    if not tag:
        allowed = ", ".join(sorted(tags))
        raise DomainError(
            f"{kind} {text!r} needs an explicit unit tag (one of: {allowed})"
        )
    if tag not in tags:
        allowed = ", ".join(sorted(tags))
        raise DomainError(f"unknown {kind} unit {tag!r} (expected one of: {allowed})")
    return float(value) * tags[tag]


def parse_length(text):
    return parse_quantity(text, LENGTH_TAGS, "length")


def parse_field(text):
    return parse_quantity(text, FIELD_TAGS, "field")


def parse_momentum(text):
    return parse_quantity(text, MOMENTUM_TAGS, "momentum")


def parse_time(text):
    return parse_quantity(text, TIME_TAGS, "time")
