"""
Run configuration from an INI file with one section per sensor.

Every value is SI with angles in radians. Inertial and magnetic ``s``/``m``
(and ``B_hi``) are the raw, uncalibrated figures; the ``[calibration]``
reductions are applied when the specs are built. Unknown sections or keys
are rejected.

Example::

    [run]
    aircraft_index = 0
    flight_index = 0
    master_seed = 1

    [camera]
    T_full = 1.2, 0.0, 0.3
    T_empty = 1.2, 0.0, 0.3
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .air_data import AirDataSpec, ChannelSpec, CHANNELS
from .calibration import INERTIAL_REDUCTION, MAGNETIC_REDUCTION, derate_spec
from .camera import CameraIntrinsics, CameraMounting
from .gnss import GnssSpec
from .imu import PlatformMounting, TriadSpec
from .magnetometer import MagSpec
from .seedstream import build_catalog
from .single_axis import SingleAxisSpec

__all__ = ["ConfigError", "Rates", "RunConfig", "SingleAxisConfig", "load_config", "parse_config"]


class ConfigError(ValueError):
    pass


RATE_TOL = 1e-9


@dataclass(frozen=True)
class Rates:
    dt_truth: float = 0.002
    dt_sensed: float = 0.01
    dt_img: float = 0.1
    dt_gnss: float = 1.0

    def __post_init__(self):
        for name in ("dt_truth", "dt_sensed", "dt_img", "dt_gnss"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        self.ratio(self.dt_sensed, self.dt_truth, "dt_sensed", "dt_truth")
        self.ratio(self.dt_img, self.dt_sensed, "dt_img", "dt_sensed")
        self.ratio(self.dt_gnss, self.dt_sensed, "dt_gnss", "dt_sensed")

    @staticmethod
    def ratio(a: float, b: float, name_a: str = "a", name_b: str = "b") -> int:
        r = a / b
        k = round(r)
        if k < 1 or abs(r - k) > RATE_TOL * max(1.0, r):
            raise ConfigError(f"{name_a}={a} is not an integer multiple of {name_b}={b}")
        return int(k)

    @property
    def truth_per_sensed(self) -> int:
        return self.ratio(self.dt_sensed, self.dt_truth)

    @property
    def sensed_per_img(self) -> int:
        return self.ratio(self.dt_img, self.dt_sensed)

    @property
    def sensed_per_gnss(self) -> int:
        return self.ratio(self.dt_gnss, self.dt_sensed)


@dataclass(frozen=True)
class SingleAxisConfig:
    spec: SingleAxisSpec = field(default_factory=lambda: SingleAxisSpec(1.6e-2, 4e-3, 1e-3, 0.01))
    f0: float = 0.0
    g0: float = 0.0


@dataclass(frozen=True)
class RunConfig:
    """Everything a simulation needs besides the truth data."""

    aircraft_index: int = 0
    flight_index: int = 0
    master_seed: int = 1
    aircraft_seed: int | None = None
    flight_seed: int | None = None
    rates: Rates = field(default_factory=Rates)
    acc: TriadSpec = field(default_factory=TriadSpec.acc_baseline)
    gyr: TriadSpec = field(default_factory=TriadSpec.gyr_baseline)
    mag: MagSpec = field(default_factory=MagSpec.baseline)
    gnss: GnssSpec = field(default_factory=GnssSpec.baseline)
    air_data: AirDataSpec = field(default_factory=AirDataSpec.baseline)
    platform: PlatformMounting = field(default_factory=PlatformMounting)
    camera: CameraMounting | None = None
    intrinsics: CameraIntrinsics = field(default_factory=CameraIntrinsics)
    single_axis: SingleAxisConfig = field(default_factory=SingleAxisConfig)
    truth_path: str | None = None
    out_dir: str | None = None

    def __post_init__(self):
        if self.aircraft_index < 0 or self.flight_index < 0:
            raise ConfigError("aircraft and flight indices must be non-negative")
        if (self.aircraft_seed is None) != (self.flight_seed is None):
            raise ConfigError("aircraft_seed and flight_seed must be given together")
        if not math.isclose(self.acc.dt, self.rates.dt_sensed) or not math.isclose(self.gyr.dt, self.rates.dt_sensed):
            raise ConfigError("IMU sample period must equal dt_sensed")
        if not math.isclose(self.mag.dt, self.rates.dt_sensed):
            raise ConfigError("magnetometer sample period must equal dt_sensed")
        if not math.isclose(self.gnss.dt_gnss, self.rates.dt_gnss):
            raise ConfigError("GNSS spec period must equal dt_gnss")

    def seed_pair(self) -> tuple[int, int]:
        if self.aircraft_seed is not None:
            return int(self.aircraft_seed), int(self.flight_seed)
        capacity = max(self.aircraft_index, self.flight_index) + 1
        return build_catalog(self.master_seed, capacity).pair(self.aircraft_index, self.flight_index)


_SCHEMA: dict[str, dict[str, type]] = {
    "run": {
        "aircraft_index": int,
        "flight_index": int,
        "master_seed": int,
        "aircraft_seed": int,
        "flight_seed": int,
        "truth": str,
        "out": str,
    },
    "rates": {"dt_truth": float, "dt_sensed": float, "dt_img": float, "dt_gnss": float},
    "calibration": {"inertial_reduction": float, "magnetic_reduction": float},
    "acc": {"B0": float, "sigma_u": float, "sigma_v": float, "s": float, "m": float, "clamp_factor": float},
    "gyr": {"B0": float, "sigma_u": float, "sigma_v": float, "s": float, "m": float, "clamp_factor": float},
    "mag": {"sigma_v": float, "s": float, "m": float, "B_hi": float, "B0": float},
    "gnss": {
        "sigma_pos_hor": float,
        "sigma_pos_ver": float,
        "sigma_ion": float,
        "B0_ion": float,
        "sigma_vel": float,
        "f_ion": int,
    },
    "air_data": {f"{c}_{k}": float for c in CHANNELS for k in ("B0", "sigma")},
    "platform": {
        "T_full": "vec3",
        "T_empty": "vec3",
        "m_full": float,
        "m_empty": float,
        "sigma_psi": float,
        "sigma_theta": float,
        "sigma_xi": float,
        "sigma_T_est": float,
        "sigma_phi_est": float,
    },
    "camera": {
        "T_full": "vec3",
        "T_empty": "vec3",
        "m_full": float,
        "m_empty": float,
        "sigma_psi": float,
        "sigma_theta": float,
        "sigma_xi": float,
        "sigma_T_est": float,
        "sigma_phi_est": float,
        "f": float,
        "S_h": int,
        "S_v": int,
        "s_px": float,
        "c_i": float,
        "c_ii": float,
    },
    "single_axis": {
        "B0": float,
        "sigma_u": float,
        "sigma_v": float,
        "dt": float,
        "clamp_factor": float,
        "f0": float,
        "g0": float,
    },
}
_INTRINSIC_KEYS = ("f", "S_h", "S_v", "s_px", "c_i", "c_ii")


def _convert(section: str, key: str, raw: str):
    kind = _SCHEMA[section][key]
    try:
        if kind == "vec3":
            vec = np.array([float(x) for x in raw.split(",")])
            if vec.shape != (3,):
                raise ValueError("expected three comma-separated numbers")
            return vec
        return kind(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key}: {exc}") from None


def _read(parser: configparser.ConfigParser) -> dict[str, dict]:
    out: dict[str, dict] = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        out[section] = {}
        for key, raw in parser.items(section):
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
            out[section][key] = _convert(section, key, raw)
    return out


def _triad(kind: str, raw: dict, dt: float, reduction: float) -> TriadSpec:
    base = TriadSpec.acc_baseline(calibrated=False, dt=dt) if kind == "ACC" else TriadSpec.gyr_baseline(
        calibrated=False, dt=dt
    )
    fields_ = {k: raw.get(k, getattr(base, k)) for k in ("B0", "sigma_u", "sigma_v", "s", "m", "clamp_factor")}
    return derate_spec(TriadSpec(kind=kind, dt=dt, **fields_), reduction)


def parse_config(text: str) -> RunConfig:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    sec = _read(parser)
    try:
        return _build(sec)
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None


def _build(sec: dict[str, dict]) -> RunConfig:
    run = sec.get("run", {})
    rates = Rates(**sec.get("rates", {}))
    cal = sec.get("calibration", {})
    inertial = cal.get("inertial_reduction", INERTIAL_REDUCTION)
    magnetic = cal.get("magnetic_reduction", MAGNETIC_REDUCTION)
    dt = rates.dt_sensed

    acc = _triad("ACC", sec.get("acc", {}), dt, inertial)
    gyr = _triad("GYR", sec.get("gyr", {}), dt, inertial)

    mag_base = MagSpec.baseline(swung=False, dt=dt)
    mag_raw = sec.get("mag", {})
    mag = MagSpec(dt=dt, **{k: mag_raw.get(k, getattr(mag_base, k)) for k in ("sigma_v", "s", "m", "B_hi", "B0")})
    mag = derate_spec(mag, magnetic)

    g_base = GnssSpec.baseline(dt_gnss=rates.dt_gnss)
    g_raw = sec.get("gnss", {})
    gnss = GnssSpec(
        dt_gnss=rates.dt_gnss,
        **{k: g_raw.get(k, getattr(g_base, k)) for k in ("sigma_pos_hor", "sigma_pos_ver", "sigma_ion", "B0_ion", "sigma_vel", "f_ion")},
    )

    a_base = AirDataSpec.baseline()
    a_raw = sec.get("air_data", {})
    channels = {
        c: ChannelSpec(a_raw.get(f"{c}_B0", a_base.channel(c).B0), a_raw.get(f"{c}_sigma", a_base.channel(c).sigma))
        for c in CHANNELS
    }
    air = AirDataSpec(**channels)

    platform = PlatformMounting(**sec.get("platform", {}))

    cam_raw = dict(sec.get("camera", {}))
    intrinsics = CameraIntrinsics(**{k: cam_raw.pop(k) for k in _INTRINSIC_KEYS if k in cam_raw})
    camera = None
    if cam_raw:
        if "T_full" not in cam_raw or "T_empty" not in cam_raw:
            raise ConfigError("[camera] needs both T_full and T_empty")
        camera = CameraMounting(**cam_raw)

    sa_raw = dict(sec.get("single_axis", {}))
    sa_default = SingleAxisConfig()
    sa_spec = SingleAxisSpec(
        **{k: sa_raw.get(k, getattr(sa_default.spec, k)) for k in ("B0", "sigma_u", "sigma_v", "dt", "clamp_factor")}
    )
    single = SingleAxisConfig(sa_spec, sa_raw.get("f0", 0.0), sa_raw.get("g0", 0.0))

    return RunConfig(
        aircraft_index=run.get("aircraft_index", 0),
        flight_index=run.get("flight_index", 0),
        master_seed=run.get("master_seed", 1),
        aircraft_seed=run.get("aircraft_seed"),
        flight_seed=run.get("flight_seed"),
        rates=rates,
        acc=acc,
        gyr=gyr,
        mag=mag,
        gnss=gnss,
        air_data=air,
        platform=platform,
        camera=camera,
        intrinsics=intrinsics,
        single_axis=single,
        truth_path=run.get("truth"),
        out_dir=run.get("out"),
    )


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    return parse_config(text)
