"""
Accelerometer and gyroscope triads mounted on the aircraft body.

Internal units are SI with angles in radians. The ``baseline`` constructors
take the data-sheet style values (deg based for gyroscopes) and convert.

Draw-order contract
-------------------
fixed ACC stream   : 3 scale draws, then 3 misalignment draws (alpha_1..3)
fixed GYR stream   : 3 scale draws, then 6 cross-coupling draws (12,13,21,23,31,32)
fixed PLAT stream  : psi, theta, xi; then estimate errors psi, theta, xi; then T x, y, z
run ACC/GYR stream : 3 offset draws at start-up; per step, axis by axis, drift then noise
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import single_axis
from .kinematics import euler_to_rotmat
from .seedstream import GaussianStream, SensorSeedSet, gaussian_stream
from .single_axis import SingleAxisSpec, SingleAxisState

__all__ = [
    "STANDARD_GRAVITY",
    "TriadSpec",
    "AccMatrices",
    "GyrMatrices",
    "PlatformMounting",
    "PlatformPose",
    "Imu",
    "sample_acc_matrices",
    "sample_gyr_matrices",
    "platform_displacement",
    "sample_platform_pose",
]

STANDARD_GRAVITY = 9.80665
DEG = math.pi / 180.0


@dataclass(frozen=True)
class TriadSpec:
    kind: str
    B0: float
    sigma_u: float
    sigma_v: float
    s: float
    m: float
    dt: float = 0.01
    clamp_factor: float = 100.0

    def __post_init__(self):
        if self.kind not in ("ACC", "GYR"):
            raise ValueError(f"kind must be 'ACC' or 'GYR', got {self.kind!r}")
        for name in ("B0", "sigma_u", "sigma_v", "s", "m"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def axis_spec(self) -> SingleAxisSpec:
        return SingleAxisSpec(self.B0, self.sigma_u, self.sigma_v, self.dt, self.clamp_factor)

    @classmethod
    def gyr_baseline(cls, calibrated: bool = True, dt: float = 0.01) -> "TriadSpec":
        """ADIS16488A-class gyroscopes; ``calibrated=False`` gives pre-calibration s and m."""
        s, m = (1.50e-5, 4.35e-5) if calibrated else (3.00e-4, 8.70e-4)
        return cls("GYR", B0=2.00e-1 * DEG, sigma_u=1.42e-4 * DEG, sigma_v=4.30e-3 * DEG, s=s, m=m, dt=dt)

    @classmethod
    def acc_baseline(cls, calibrated: bool = True, dt: float = 0.01) -> "TriadSpec":
        """ADIS16488A-class accelerometers; ``calibrated=False`` gives pre-calibration s and m."""
        s, m = (5.00e-5, 3.05e-5) if calibrated else (1.00e-3, 6.11e-4)
        return cls("ACC", B0=1.57e-1, sigma_u=6.86e-5, sigma_v=4.83e-4, s=s, m=m, dt=dt)

    @classmethod
    def zero(cls, kind: str, dt: float = 0.01) -> "TriadSpec":
        return cls(kind, 0.0, 0.0, 0.0, 0.0, 0.0, dt)


@dataclass(frozen=True)
class AccMatrices:
    M: np.ndarray
    N: np.ndarray


@dataclass(frozen=True)
class GyrMatrices:
    M: np.ndarray


def sample_acc_matrices(spec: TriadSpec, fixed_stream: GaussianStream) -> AccMatrices:
    """
    Lower-triangular scale/cross-coupling matrix and error transformation matrix.

    Both share the same three scale draws and three misalignment draws. The
    misalignment std is ``spec.m`` and is used directly as the off-diagonal std.
    """
    if spec.kind != "ACC":
        raise ValueError("sample_acc_matrices needs an ACC spec")
    s1, s2, s3 = 1.0 + spec.s * fixed_stream.normals(3)
    a1, a2, a3 = spec.m * fixed_stream.normals(3)
    M = np.array([[s1, 0.0, 0.0], [a3, s2, 0.0], [-a2, a1, s3]])
    N = np.array([[s1, 0.0, 0.0], [a3 * s1, s2, 0.0], [-a2 * s1, a1 * s2, s3]])
    return AccMatrices(M, N)


def sample_gyr_matrices(spec: TriadSpec, fixed_stream: GaussianStream) -> GyrMatrices:
    if spec.kind != "GYR":
        raise ValueError("sample_gyr_matrices needs a GYR spec")
    M = np.empty((3, 3))
    M[np.diag_indices(3)] = 1.0 + spec.s * fixed_stream.normals(3)
    off = ~np.eye(3, dtype=bool)
    M[off] = spec.m * fixed_stream.normals(6)
    return GyrMatrices(M)


@dataclass(frozen=True)
class PlatformMounting:
    """
    Nominal IMU installation and the accuracy of its knowledge.

    Lever arms are from the centre of mass to the IMU reference point, in body
    axes, for full and empty fuel tanks.
    """

    T_full: np.ndarray = field(default_factory=lambda: np.zeros(3))
    T_empty: np.ndarray = field(default_factory=lambda: np.zeros(3))
    m_full: float = 1.0
    m_empty: float = 0.0
    sigma_psi: float = 0.5 * DEG
    sigma_theta: float = 2.0 * DEG
    sigma_xi: float = 0.1 * DEG
    sigma_T_est: float = 0.01
    sigma_phi_est: float = 0.03 * DEG

    def __post_init__(self):
        object.__setattr__(self, "T_full", np.asarray(self.T_full, dtype=float))
        object.__setattr__(self, "T_empty", np.asarray(self.T_empty, dtype=float))
        if not self.m_full > self.m_empty:
            raise ValueError("m_full must exceed m_empty")

    @classmethod
    def exact(cls, T_full=(0.0, 0.0, 0.0), T_empty=None, m_full=1.0, m_empty=0.0) -> "PlatformMounting":
        """Perfectly aligned and perfectly known installation."""
        T_empty = T_full if T_empty is None else T_empty
        return cls(np.asarray(T_full, float), np.asarray(T_empty, float), m_full, m_empty, 0.0, 0.0, 0.0, 0.0, 0.0)


def platform_displacement(mount: PlatformMounting, mass: float) -> np.ndarray:
    """Lever arm at ``mass``, linear in fuel fraction; mass is clamped to the tank range."""
    mass = min(max(mass, mount.m_empty), mount.m_full)
    frac = (mount.m_full - mass) / (mount.m_full - mount.m_empty)
    return mount.T_full + frac * (mount.T_empty - mount.T_full)


@dataclass(frozen=True)
class PlatformPose:
    """Realized platform attitude plus what the navigation system believes."""

    phi: np.ndarray
    phi_est: np.ndarray
    T_est_offset: np.ndarray

    @property
    def R(self) -> np.ndarray:
        return euler_to_rotmat(*self.phi)

    @property
    def R_est(self) -> np.ndarray:
        return euler_to_rotmat(*self.phi_est)


def sample_platform_pose(mount: PlatformMounting, fixed_stream: GaussianStream) -> PlatformPose:
    z = fixed_stream.normals(9)
    phi = np.array([mount.sigma_psi, mount.sigma_theta, mount.sigma_xi]) * z[0:3]
    phi_est = phi + mount.sigma_phi_est * z[3:6]
    return PlatformPose(phi, phi_est, mount.sigma_T_est * z[6:9])


class Imu:
    """
    Strapdown IMU producing body-frame angular rate and specific force.

    Call :meth:`measure` once per sensed step, or :meth:`measure_angular_rate`
    followed by :meth:`measure_specific_force`.
    """

    def __init__(
        self,
        acc_spec: TriadSpec,
        gyr_spec: TriadSpec,
        mounting: PlatformMounting,
        acc_fixed: GaussianStream,
        gyr_fixed: GaussianStream,
        plat_fixed: GaussianStream,
        acc_run: GaussianStream,
        gyr_run: GaussianStream,
    ):
        if acc_spec.dt != gyr_spec.dt:
            raise ValueError("accelerometer and gyroscope must share one sample period")
        self.acc_spec = acc_spec
        self.gyr_spec = gyr_spec
        self.mounting = mounting
        self.dt = acc_spec.dt
        self.acc_matrices = sample_acc_matrices(acc_spec, acc_fixed)
        self.gyr_matrices = sample_gyr_matrices(gyr_spec, gyr_fixed)
        self.pose = sample_platform_pose(mounting, plat_fixed)
        self._acc_run = acc_run
        self._gyr_run = gyr_run
        self._acc_axis = acc_spec.axis_spec()
        self._gyr_axis = gyr_spec.axis_spec()
        self.acc_axes = [single_axis.init_state(self._acc_axis, acc_run) for _ in range(3)]
        self.gyr_axes = [single_axis.init_state(self._gyr_axis, gyr_run) for _ in range(3)]
        R, R_est = self.pose.R, self.pose.R_est
        self._gyr_sandwich = R_est @ self.gyr_matrices.M @ R.T
        self._acc_sandwich = R_est @ self.acc_matrices.M @ R.T
        self.prev_w_meas: np.ndarray | None = None
        self.w_meas: np.ndarray | None = None
        self.alpha_meas = np.zeros(3)
        self.last_acc_noise = np.zeros(3)
        self.last_gyr_noise = np.zeros(3)

    @classmethod
    def from_seeds(
        cls, acc_spec: TriadSpec, gyr_spec: TriadSpec, mounting: PlatformMounting, seeds: SensorSeedSet
    ) -> "Imu":
        return cls(
            acc_spec,
            gyr_spec,
            mounting,
            gaussian_stream(seeds.fixed["acc"]),
            gaussian_stream(seeds.fixed["gyr"]),
            gaussian_stream(seeds.fixed["plat"]),
            gaussian_stream(seeds.run["acc"]),
            gaussian_stream(seeds.run["gyr"]),
        )

    @staticmethod
    def _triad_error(axes: list[SingleAxisState], spec: SingleAxisSpec, stream: GaussianStream):
        err = np.array([single_axis.step(st, spec, 0.0, stream) for st in axes])
        noise = np.array([st.last_noise for st in axes])
        return err, noise

    def lever_arm(self, mass: float) -> np.ndarray:
        return platform_displacement(self.mounting, mass)

    def lever_arm_estimate(self, mass: float) -> np.ndarray:
        return self.lever_arm(mass) + self.pose.T_est_offset

    def measure_angular_rate(self, w_IBB) -> np.ndarray:
        w_IBB = np.asarray(w_IBB, dtype=float)
        err, self.last_gyr_noise = self._triad_error(self.gyr_axes, self._gyr_axis, self._gyr_run)
        w_meas = self._gyr_sandwich @ w_IBB + err
        self.prev_w_meas = self.w_meas
        self.w_meas = w_meas
        if self.prev_w_meas is None:
            self.alpha_meas = np.zeros(3)
        else:
            self.alpha_meas = (w_meas - self.prev_w_meas) / self.dt
        return w_meas

    def measure_specific_force(self, f_IBB, w_IBB, alpha_IBB, mass: float) -> np.ndarray:
        if self.w_meas is None:
            raise RuntimeError("measure_angular_rate must run before measure_specific_force")
        f_IBB, w_IBB, alpha_IBB = (np.asarray(x, dtype=float) for x in (f_IBB, w_IBB, alpha_IBB))
        T = self.lever_arm(mass)
        T_est = T + self.pose.T_est_offset
        f_at_imu = f_IBB + np.cross(alpha_IBB, T) + np.cross(w_IBB, np.cross(w_IBB, T))
        w_m, alpha_m = self.w_meas, self.alpha_meas
        lever_removed = np.cross(alpha_m, T_est) + np.cross(w_m, np.cross(w_m, T_est))
        err, self.last_acc_noise = self._triad_error(self.acc_axes, self._acc_axis, self._acc_run)
        return self._acc_sandwich @ f_at_imu - lever_removed + err

    def measure(self, f_IBB, w_IBB, alpha_IBB, mass: float) -> tuple[np.ndarray, np.ndarray]:
        """One sensed step; returns ``(f_meas, w_meas)``."""
        w_meas = self.measure_angular_rate(w_IBB)
        f_meas = self.measure_specific_force(f_IBB, w_IBB, alpha_IBB, mass)
        return f_meas, w_meas

    def full_errors(self, f_true, w_true, f_meas, w_meas) -> tuple[np.ndarray, np.ndarray]:
        """Everything except the white noise of the latest step: ``(E_ACC, E_GYR)``."""
        E_acc = np.asarray(f_meas) - np.asarray(f_true) - self.last_acc_noise
        E_gyr = np.asarray(w_meas) - np.asarray(w_true) - self.last_gyr_noise
        return E_acc, E_gyr

    def drift_states(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.array([st.walk_sum for st in self.acc_axes]),
            np.array([st.walk_sum for st in self.gyr_axes]),
        )
