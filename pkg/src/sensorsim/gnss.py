"""
GNSS receiver: white position and velocity noise plus a slow ionospheric
random walk sampled every ``f_ion`` ticks and linearly interpolated between
nodes.

Position errors are realized in local NED metres and mapped to geodetic
increments with the WGS-84 radii of curvature at the true position. Geodetic
positions are ``(longitude, latitude, height)`` in rad, rad, m.

Draw-order contract for the run GNSS stream: three draws for the initial
ionospheric node at start-up; on every tick that opens a new node window,
three draws for the next node; then three position and three velocity draws.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .seedstream import GaussianStream

__all__ = [
    "WGS84_A",
    "WGS84_E2",
    "CEP_TO_SIGMA",
    "MEDIAN_TO_SIGMA",
    "GnssSpec",
    "IonosphericState",
    "GnssReceiver",
    "radii_of_curvature",
    "ned_to_geodetic_increment",
    "init_ion_state",
    "advance_ion_node",
    "ionospheric_error",
    "step_position",
    "step_velocity",
]

WGS84_A = 6378137.0
WGS84_F = 1.0 / 298.257223563
WGS84_E2 = WGS84_F * (2.0 - WGS84_F)

CEP_TO_SIGMA = 1.18
MEDIAN_TO_SIGMA = 0.67448


@dataclass(frozen=True)
class GnssSpec:
    sigma_pos_hor: float
    sigma_pos_ver: float
    sigma_ion: float
    B0_ion: float
    sigma_vel: float
    dt_gnss: float = 1.0
    f_ion: int = 60

    def __post_init__(self):
        if int(self.f_ion) != self.f_ion or self.f_ion < 1:
            raise ValueError(f"f_ion must be a positive integer, got {self.f_ion}")
        for name in ("sigma_pos_hor", "sigma_pos_ver", "sigma_ion", "B0_ion", "sigma_vel"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @classmethod
    def baseline(cls, dt_gnss: float = 1.0) -> "GnssSpec":
        """u-blox NEO-M8 class receiver: 2.5 m CEP horizontal, 0.05 m/s median velocity."""
        hor = 2.5 / CEP_TO_SIGMA
        return cls(
            sigma_pos_hor=hor,
            sigma_pos_ver=2.0 * hor,
            sigma_ion=0.16,
            B0_ion=8.0,
            sigma_vel=0.05 / MEDIAN_TO_SIGMA,
            dt_gnss=dt_gnss,
        )

    @classmethod
    def zero(cls, dt_gnss: float = 1.0) -> "GnssSpec":
        return cls(0.0, 0.0, 0.0, 0.0, 0.0, dt_gnss)


@dataclass
class IonosphericState:
    node_index: int
    e_node_current: np.ndarray
    e_node_next: np.ndarray | None = None


def radii_of_curvature(lat: float) -> tuple[float, float]:
    """Meridian and prime-vertical radii (m) at geodetic latitude ``lat``."""
    s2 = np.sin(lat) ** 2
    den = 1.0 - WGS84_E2 * s2
    r_meridian = WGS84_A * (1.0 - WGS84_E2) / den**1.5
    r_normal = WGS84_A / np.sqrt(den)
    return float(r_meridian), float(r_normal)


def ned_to_geodetic_increment(x_gdt, d_ned) -> np.ndarray:
    """Small NED displacement at ``x_gdt`` as ``(d_lon, d_lat, d_h)``."""
    _, lat, h = x_gdt
    r_m, r_n = radii_of_curvature(lat)
    dn, de, dd = d_ned
    return np.array([de / ((r_n + h) * np.cos(lat)), dn / (r_m + h), -dd])


def init_ion_state(spec: GnssSpec, stream: GaussianStream) -> IonosphericState:
    return IonosphericState(0, spec.B0_ion * stream.normals(3))


def advance_ion_node(spec: GnssSpec, ion: IonosphericState, stream: GaussianStream) -> IonosphericState:
    """Draw the node following ``ion.e_node_current`` (random-walk step of ``sigma_ion``)."""
    nxt = ion.e_node_current + spec.sigma_ion * stream.normals(3)
    return IonosphericState(ion.node_index, ion.e_node_current, nxt)


def ionospheric_error(ion: IonosphericState, r: int, f_ion: int) -> np.ndarray:
    if ion.e_node_next is None:
        raise ValueError("next ionospheric node not drawn yet")
    return ion.e_node_current + (r / f_ion) * (ion.e_node_next - ion.e_node_current)


def step_position(
    spec: GnssSpec, ion: IonosphericState, truth_gdt, g: int, stream: GaussianStream
) -> tuple[np.ndarray, IonosphericState, np.ndarray]:
    """
    Measured geodetic position at tick ``g``.

    Returns ``(x_meas, ion, error_ned)`` where ``ion`` is the possibly advanced
    ionospheric state. On a window-opening tick the next node is drawn first,
    then the three white-noise draws.
    """
    if g < 0:
        raise ValueError("tick index must be non-negative")
    i, r = divmod(g, spec.f_ion)
    if r == 0:
        if i > 0:
            if ion.e_node_next is None:
                raise ValueError("ionospheric state skipped a window")
            ion = IonosphericState(i, ion.e_node_next)
        ion = advance_ion_node(spec, ion, stream)
    sig = np.array([spec.sigma_pos_hor, spec.sigma_pos_hor, spec.sigma_pos_ver])
    err = sig * stream.normals(3) + ionospheric_error(ion, r, spec.f_ion)
    truth_gdt = np.asarray(truth_gdt, dtype=float)
    return truth_gdt + ned_to_geodetic_increment(truth_gdt, err), ion, err


def step_velocity(spec: GnssSpec, truth_vN, stream: GaussianStream) -> np.ndarray:
    return np.asarray(truth_vN, dtype=float) + spec.sigma_vel * stream.normals(3)


class GnssReceiver:
    """Stateful receiver; call :meth:`measure` once per GNSS tick, in order."""

    def __init__(self, spec: GnssSpec, run_stream: GaussianStream):
        self.spec = spec
        self._stream = run_stream
        self.ion = init_ion_state(spec, run_stream)
        self.tick = 0
        self.last_position_error = np.zeros(3)
        self.last_ion_error = np.zeros(3)

    def measure(self, x_gdt, v_N) -> tuple[np.ndarray, np.ndarray]:
        """Return measured ``(x_gdt, v_N)`` for the next tick."""
        x_meas, self.ion, err = step_position(self.spec, self.ion, x_gdt, self.tick, self._stream)
        r = self.tick % self.spec.f_ion
        self.last_ion_error = ionospheric_error(self.ion, r, self.spec.f_ion)
        self.last_position_error = err
        self.tick += 1
        return x_meas, step_velocity(self.spec, v_N, self._stream)
