"""Request and response models for the HTTP service.

Dimensioned inputs are unit-tagged strings ("2a0", "20cm", "1eV/cm",
"25au", "0.01us"); bare numbers are only accepted for dimensionless or
conventionally-au fields (n, mu, omega, momentum grid bounds, counts).
Defaults reproduce the standard figure parameters per endpoint.
"""

from typing import Optional, Union

from pydantic import BaseModel, Field


class TimespectrumRequest(BaseModel):
    n: int = 0
    mu: float = 918.0
    omega: float = 0.01
    zf: str = "2a0"
    boost: Optional[str] = None
    field: Optional[str] = None
    tmin: str = "10au"
    tmax: str = "6000au"
    points: int = Field(default=1200, ge=2, le=2_000_000)


class MomentumRequest(BaseModel):
    n: int = 0
    mu: float = 918.0
    omega: float = 0.01
    zf: str = "2a0"
    boost: Optional[str] = None
    field: Optional[str] = None
    pmin: float = -8.0
    pmax: float = 8.0
    points: int = Field(default=321, ge=2, le=2_000_000)


class SimulateRequest(BaseModel):
    n: int = 2
    mu: float = 918.0
    omega: float = 0.01
    zf: str = "20cm"
    boost: Optional[str] = None
    field: Optional[str] = "1eV/cm"
    count: int = Field(default=10_000, ge=1, le=10_000_000)
    seed: int = 7
    bins: Optional[str] = None
    pmin: float = -8.0
    pmax: float = 8.0
    points: int = Field(default=321, ge=2, le=2_000_000)


class TrajectoriesRequest(BaseModel):
    mu: float = 918.0
    t: str = "2000au"
    tmax: str = "4000au"
    tpoints: int = Field(default=81, ge=2, le=100_000)
    pfan_min: float = 0.25
    pfan_max: float = 2.0
    pfan_count: int = Field(default=8, ge=2, le=1000)
    zfan_min: str = "0.5a0"
    zfan_max: str = "4a0"
    zfan_count: int = Field(default=8, ge=2, le=1000)


Cell = Union[float, int, str, None]


class DatasetPayload(BaseModel):
    name: str
    provenance: dict[str, str]
    columns: dict[str, list[Cell]]


class SimulatePayload(BaseModel):
    events: DatasetPayload
    histogram: DatasetPayload
    reconstruction: DatasetPayload


class CheckPayload(BaseModel):
    name: str
    passed: bool
    measured: float
    bound: float


class SelfcheckPayload(BaseModel):
    ok: bool
    checks: list[CheckPayload]


class VersionPayload(BaseModel):
    package: str
    version: str
