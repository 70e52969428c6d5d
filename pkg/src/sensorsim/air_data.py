"""
Air data channels (static pressure, temperature, true airspeed, angle of
attack, angle of sideslip) and compressible Pitot relations.

Each channel is ``truth + B0 * N0 + sigma * N_s``: one offset draw at start-up
and one noise draw per sample, from the channel's own run stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .seedstream import GaussianStream

__all__ = [
    "CHANNELS",
    "KAPPA_AIR",
    "R_AIR",
    "ChannelSpec",
    "AirDataSpec",
    "AirDataChannel",
    "AirData",
    "measure_channel",
    "InvalidMeasurementError",
    "tas_from_pressures",
    "total_pressure_from_tas",
    "density_from_p_T",
]

CHANNELS = ("osp", "oat", "tas", "aoa", "aos")
KAPPA_AIR = 1.4
R_AIR = 287.05
_DEG = math.pi / 180.0


class InvalidMeasurementError(ValueError):
    pass


@dataclass(frozen=True)
class ChannelSpec:
    B0: float
    sigma: float

    def __post_init__(self):
        if self.B0 < 0 or self.sigma < 0:
            raise ValueError("B0 and sigma must be non-negative")


@dataclass(frozen=True)
class AirDataSpec:
    """Channel specs in SI units (Pa, K, m/s, rad, rad)."""

    osp: ChannelSpec
    oat: ChannelSpec
    tas: ChannelSpec
    aoa: ChannelSpec
    aos: ChannelSpec
    kappa: float = KAPPA_AIR
    R_gas: float = R_AIR

    def __post_init__(self):
        if not self.kappa > 1:
            raise ValueError("kappa must exceed 1")

    @classmethod
    def baseline(cls) -> "AirDataSpec":
        third = 1.0 / 3.0
        return cls(
            osp=ChannelSpec(100.0, 100.0),
            oat=ChannelSpec(0.05, 0.05),
            tas=ChannelSpec(third, third),
            aoa=ChannelSpec(third * _DEG, third * _DEG),
            aos=ChannelSpec(third * _DEG, third * _DEG),
        )

    @classmethod
    def zero(cls) -> "AirDataSpec":
        z = ChannelSpec(0.0, 0.0)
        return cls(z, z, z, z, z)

    def channel(self, name: str) -> ChannelSpec:
        if name not in CHANNELS:
            raise KeyError(name)
        return getattr(self, name)


class AirDataChannel:
    def __init__(self, spec: ChannelSpec, stream: GaussianStream):
        self.spec = spec
        self._stream = stream
        self.offset = spec.B0 * stream.normal()

    def measure(self, truth: float) -> float:
        return measure_channel(self.spec, truth, self.offset, self._stream)


def measure_channel(spec: ChannelSpec, truth: float, offset: float, stream: GaussianStream) -> float:
    """``truth + offset + sigma * N``; one draw."""
    return truth + offset + spec.sigma * stream.normal()


class AirData:
    def __init__(self, spec: AirDataSpec, streams: dict[str, GaussianStream]):
        self.spec = spec
        self.channels = {name: AirDataChannel(spec.channel(name), streams[name]) for name in CHANNELS}

    def measure(self, p: float, T: float, v_tas: float, aoa: float, aos: float) -> tuple[float, ...]:
        truth = (p, T, v_tas, aoa, aos)
        return tuple(self.channels[name].measure(x) for name, x in zip(CHANNELS, truth))

    @property
    def offsets(self) -> dict[str, float]:
        return {name: ch.offset for name, ch in self.channels.items()}


def tas_from_pressures(p: float, p_t: float, rho: float, kappa: float = KAPPA_AIR) -> float:
    """True airspeed from static pressure, total pressure and density (isentropic Pitot)."""
    if p <= 0 or rho <= 0:
        raise ValueError("static pressure and density must be positive")
    if p_t < p:
        raise InvalidMeasurementError(f"total pressure {p_t} below static pressure {p}")
    e = (kappa - 1.0) / kappa
    term = math.expm1(e * math.log1p((p_t - p) / p))
    return math.sqrt(2.0 * kappa / (kappa - 1.0) * (p / rho) * term)


def total_pressure_from_tas(p: float, rho: float, v: float, kappa: float = KAPPA_AIR) -> float:
    if p <= 0 or rho <= 0:
        raise ValueError("static pressure and density must be positive")
    """Total (Pitot) pressure for true airspeed v; inverse of tas_from_pressures."""
    x = (kappa - 1.0) / (2.0 * kappa) * rho * v * v / p
    return p + p * math.expm1(kappa / (kappa - 1.0) * math.log1p(x))


def density_from_p_T(p: float, T: float, R_gas: float = R_AIR) -> float:
    if T <= 0:
        raise ValueError("temperature must be positive")
    return p / (R_gas * T)
