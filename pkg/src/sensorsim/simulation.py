"""
One simulated flight: truth in, sensed files out.

Sensor ticks sit on the truth grid. Sensed sample ``s`` (``s = 1, 2, ...``)
is taken at ``t0 + s * dt_sensed``, GNSS tick ``g`` at ``t0 + (g + 1) * dt_gnss``
and camera tick ``i`` at ``t0 + i * dt_img`` (``i >= 1``), so every family has
``floor(span / dt)`` rows.

Outputs written to the output directory:

* ``sensed.csv``        IMU, magnetometer and air data at ``dt_sensed``
* ``gnss.csv``          GNSS position and velocity at ``dt_gnss``
* ``camera_pose.csv``   true and believed camera pose at ``dt_img``
* ``realization.json``  seeds and the sampled fixed and per-flight quantities
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .air_data import AirData
from .camera import camera_pose_stream, resample_poses, sample_camera_mounting
from .config import ConfigError, RunConfig
from .gnss import GnssReceiver
from .imu import Imu
from .kinematics import quat_to_rotmat
from .magnetometer import Magnetometer
from .seedstream import derive_sensor_seeds, gaussian_stream
from .trajectory import DataError, Trajectory, format_float

__all__ = [
    "SENSED_COLUMNS",
    "GNSS_COLUMNS",
    "CAMERA_COLUMNS",
    "SimulationResult",
    "run_simulation",
    "write_outputs",
    "tick_count",
]

SENSED_COLUMNS = (
    "t",
    "f_x", "f_y", "f_z",
    "w_x", "w_y", "w_z",
    "B_x", "B_y", "B_z",
    "p", "T", "v_tas", "aoa_deg", "aos_deg",
)  # fmt: skip
GNSS_COLUMNS = ("t", "lon_deg", "lat_deg", "h_m", "v_n", "v_e", "v_d")
CAMERA_COLUMNS = (
    "t",
    "lon_deg", "lat_deg", "h_m", "q_w", "q_x", "q_y", "q_z",
    "lon_est_deg", "lat_est_deg", "h_est_m", "q_est_w", "q_est_x", "q_est_y", "q_est_z",
)  # fmt: skip

GRID_TOL = 1e-6


@dataclass
class SimulationResult:
    sensed: np.ndarray
    gnss: np.ndarray
    camera: np.ndarray
    realization: dict


def tick_count(span: float, dt: float) -> int:
    return int(math.floor(span / dt + 1e-9))


def _check_grid(truth: Trajectory, dt_truth: float) -> None:
    k = (truth.t - truth.t[0]) / dt_truth
    off = np.nonzero(np.abs(k - np.arange(len(truth))) > GRID_TOL)[0]
    if off.size:
        raise DataError(f"truth sample {off[0]} (t={truth.t[off[0]]!r}) is off the {dt_truth} s grid")


def _listify(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, dict):
        return {k: _listify(v) for k, v in x.items()}
    return x


def run_simulation(config: RunConfig, truth: Trajectory) -> SimulationResult:
    """Deterministic in ``(truth, seed pair, config)``."""
    if config.camera is None:
        raise ConfigError("camera mounting (T_full, T_empty) must be configured")
    rates = config.rates
    _check_grid(truth, rates.dt_truth)
    step = rates.truth_per_sensed
    span = truth.t[-1] - truth.t[0]
    n_sensed = tick_count(span, rates.dt_sensed)
    n_gnss = tick_count(span, rates.dt_gnss)
    n_img = tick_count(span, rates.dt_img)
    if n_sensed < 1:
        raise DataError("truth span shorter than one sensed period")

    aircraft_seed, flight_seed = config.seed_pair()
    seeds = derive_sensor_seeds(aircraft_seed, flight_seed)
    imu = Imu.from_seeds(config.acc, config.gyr, config.platform, seeds)
    mag = Magnetometer(config.mag, gaussian_stream(seeds.fixed["mag"]), gaussian_stream(seeds.run["mag"]))
    air = AirData(config.air_data, {c: gaussian_stream(seeds.run[c]) for c in ("osp", "oat", "tas", "aoa", "aos")})
    gnss = GnssReceiver(config.gnss, gaussian_stream(seeds.run["gnss"]))
    cam_pose = sample_camera_mounting(config.camera, gaussian_stream(seeds.fixed["cam"]))
    ion_initial = gnss.ion.e_node_current.copy()

    per_gnss = rates.sensed_per_gnss
    sensed = np.empty((n_sensed, len(SENSED_COLUMNS)))
    gnss_rows = np.empty((n_gnss, len(GNSS_COLUMNS)))
    for s in range(1, n_sensed + 1):
        k = s * step
        f_meas, w_meas = imu.measure(truth.f[k], truth.w[k], truth.alpha[k], truth.mass[k])
        R_NB = quat_to_rotmat(truth.q_NB[k])
        B_meas = mag.measure(truth.B_N[k], R_NB.T)
        p, T, v, aoa, aos = air.measure(truth.p[k], truth.T[k], truth.v_tas[k], truth.aoa[k], truth.aos[k])
        sensed[s - 1] = (truth.t[k], *f_meas, *w_meas, *B_meas, p, T, v, math.degrees(aoa), math.degrees(aos))
        if s % per_gnss == 0:
            g = s // per_gnss - 1
            x_meas, v_meas = gnss.measure(truth.x_gdt[k], truth.v_N[k])
            lon, lat, h = x_meas
            gnss_rows[g] = (truth.t[k], math.degrees(lon), math.degrees(lat), h, *v_meas)

    t_img = truth.t[np.arange(1, n_img + 1) * step * rates.sensed_per_img]
    q, x, m = resample_poses(truth.t, truth.q_NB, truth.x_gdt, truth.mass, t_img)
    poses = camera_pose_stream(q, x, m, config.camera, cam_pose)
    for key in ("x_gdt", "x_gdt_est"):
        poses[key][:, :2] = np.degrees(poses[key][:, :2])
    camera = np.column_stack([t_img, poses["x_gdt"], poses["q_NC"], poses["x_gdt_est"], poses["q_NC_est"]])

    realization = {
        "aircraft_seed": str(aircraft_seed),
        "flight_seed": str(flight_seed),
        "fixed": {
            "M_acc": imu.acc_matrices.M,
            "N_acc": imu.acc_matrices.N,
            "M_gyr": imu.gyr_matrices.M,
            "phi_BP": imu.pose.phi,
            "phi_BP_est": imu.pose.phi_est,
            "T_BP_est_offset": imu.pose.T_est_offset,
            "M_mag": mag.model.M,
            "hard_iron": mag.model.hard_iron,
            "phi_BC": cam_pose.phi,
            "phi_BC_est": cam_pose.phi_est,
            "T_BC_est_offset": cam_pose.T_est_offset,
        },
        "flight": {
            "acc_offset": np.array([st.offset_term for st in imu.acc_axes]),
            "gyr_offset": np.array([st.offset_term for st in imu.gyr_axes]),
            "mag_offset": mag.model.offset,
            "air_data_offset": air.offsets,
            "ion_initial": ion_initial,
        },
    }
    return SimulationResult(sensed, gnss_rows, camera, _listify(realization))


def _write_table(path: Path, columns, table: np.ndarray) -> None:
    with path.open("w", newline="") as fh:
        fh.write(",".join(columns) + "\n")
        for row in table:
            fh.write(",".join(format_float(x) for x in row) + "\n")


def write_outputs(result: SimulationResult, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "sensed.csv", out / "gnss.csv", out / "camera_pose.csv", out / "realization.json"]
    _write_table(paths[0], SENSED_COLUMNS, result.sensed)
    _write_table(paths[1], GNSS_COLUMNS, result.gnss)
    _write_table(paths[2], CAMERA_COLUMNS, result.camera)
    paths[3].write_text(json.dumps(result.realization, indent=2, sort_keys=True) + "\n")
    return paths
