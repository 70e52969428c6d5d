"""
Fixed, downward looking camera: intrinsics, stochastic mounting and the
camera-to-Earth pose stream that an external renderer would consume.

The camera frame has its z axis along the boresight. Draw-order contract for
the fixed CAM stream: yaw, pitch, roll mounting errors; then the three
estimate errors on those angles; then the three lever-arm estimate errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.transform import Rotation, Slerp

from .gnss import ned_to_geodetic_increment
from .kinematics import compose_rotation, euler_to_rotmat, quat_to_rotmat, rotmat_to_quat
from .seedstream import GaussianStream

__all__ = [
    "CameraIntrinsics",
    "CameraMounting",
    "CameraPose",
    "BehindCameraError",
    "fov_deg",
    "project_point",
    "camera_displacement",
    "sample_camera_mounting",
    "camera_pose_stream",
    "resample_poses",
]

DEG = math.pi / 180.0


class BehindCameraError(ValueError):
    pass


def fov_deg(size_px: int, pixel_mm: float, focal_mm: float) -> float:
    return 2.0 * math.degrees(math.atan(size_px * pixel_mm / (2.0 * focal_mm)))


@dataclass(frozen=True)
class CameraIntrinsics:
    f: float = 19.0
    S_h: int = 768
    S_v: int = 1024
    s_px: float = 0.017
    c_i: float = 384.5
    c_ii: float = 511.5

    def __post_init__(self):
        if not (self.f > 0 and self.s_px > 0 and self.S_h > 0 and self.S_v > 0):
            raise ValueError("focal length, pixel size and image size must be positive")

    @property
    def fov_h(self) -> float:
        return fov_deg(self.S_h, self.s_px, self.f)

    @property
    def fov_v(self) -> float:
        return fov_deg(self.S_v, self.s_px, self.f)

    @property
    def focal_px(self) -> float:
        return self.f / self.s_px


def project_point(intrinsics: CameraIntrinsics, p_C) -> tuple[float, float]:
    """Pinhole projection of a point given in camera axes (m); no distortion."""
    x, y, z = (float(c) for c in p_C)
    if z <= 0:
        raise BehindCameraError(f"point depth {z} is not in front of the camera")
    k = intrinsics.focal_px
    return intrinsics.c_i + k * x / z, intrinsics.c_ii + k * y / z


@dataclass(frozen=True)
class CameraMounting:
    """Nominal camera installation; ``T_full``/``T_empty`` have no defaults in the source data."""

    T_full: np.ndarray
    T_empty: np.ndarray
    m_full: float = 1.0
    m_empty: float = 0.0
    sigma_psi: float = 0.1 * DEG
    sigma_theta: float = 0.1 * DEG
    sigma_xi: float = 0.1 * DEG
    sigma_T_est: float = 0.002
    sigma_phi_est: float = 0.01 * DEG
    yaw_offset: float = 90.0 * DEG

    def __post_init__(self):
        object.__setattr__(self, "T_full", np.asarray(self.T_full, dtype=float))
        object.__setattr__(self, "T_empty", np.asarray(self.T_empty, dtype=float))
        if not self.m_full > self.m_empty:
            raise ValueError("m_full must exceed m_empty")
        for name in ("sigma_psi", "sigma_theta", "sigma_xi", "sigma_T_est", "sigma_phi_est"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @classmethod
    def exact(cls, T_full=(0.0, 0.0, 0.0), T_empty=None, m_full=1.0, m_empty=0.0) -> "CameraMounting":
        T_empty = T_full if T_empty is None else T_empty
        return cls(T_full, T_empty, m_full, m_empty, 0.0, 0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class CameraPose:
    phi: np.ndarray
    phi_est: np.ndarray
    T_est_offset: np.ndarray = field(default_factory=lambda: np.zeros(3))

    @property
    def R_BC(self) -> np.ndarray:
        return euler_to_rotmat(*self.phi)

    @property
    def R_BC_est(self) -> np.ndarray:
        return euler_to_rotmat(*self.phi_est)


def camera_displacement(mount: CameraMounting, mass: float) -> np.ndarray:
    mass = min(max(mass, mount.m_empty), mount.m_full)
    frac = (mount.m_full - mass) / (mount.m_full - mount.m_empty)
    return mount.T_full + frac * (mount.T_empty - mount.T_full)


def sample_camera_mounting(mount: CameraMounting, fixed_stream: GaussianStream) -> CameraPose:
    z = fixed_stream.normals(9)
    sig = np.array([mount.sigma_psi, mount.sigma_theta, mount.sigma_xi])
    phi = np.array([mount.yaw_offset, 0.0, 0.0]) + sig * z[0:3]
    phi_est = phi + mount.sigma_phi_est * z[3:6]
    return CameraPose(phi, phi_est, mount.sigma_T_est * z[6:9])


def resample_poses(t_src, q_NB, x_gdt, mass, t_dst) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Truth attitude, position and mass at ``t_dst``.

    Exact picks when every target time is on the source grid, otherwise linear
    interpolation of position and mass and slerp of attitude.
    """
    t_src = np.asarray(t_src, dtype=float)
    t_dst = np.asarray(t_dst, dtype=float)
    q_NB = np.asarray(q_NB, dtype=float)
    x_gdt = np.asarray(x_gdt, dtype=float)
    mass = np.asarray(mass, dtype=float)
    if t_dst.size and (t_dst[0] < t_src[0] or t_dst[-1] > t_src[-1]):
        raise ValueError("requested camera times fall outside the truth span")
    idx = np.searchsorted(t_src, t_dst)
    idx_c = np.clip(idx, 0, t_src.size - 1)
    if np.array_equal(t_src[idx_c], t_dst):
        return q_NB[idx_c], x_gdt[idx_c], mass[idx_c]
    rot = Rotation.from_quat(q_NB[:, [1, 2, 3, 0]])
    q = Slerp(t_src, rot)(t_dst).as_quat()[:, [3, 0, 1, 2]]
    q *= np.where(q[:, :1] < 0, -1.0, 1.0)
    x = np.column_stack([np.interp(t_dst, t_src, x_gdt[:, k]) for k in range(3)])
    return q, x, np.interp(t_dst, t_src, mass)


def camera_pose_stream(q_NB, x_gdt, mass, mount: CameraMounting, pose: CameraPose) -> dict[str, np.ndarray]:
    """
    Camera position and camera-to-NED attitude per tick, true and believed.

    Inputs are already on the camera grid. Returns arrays keyed ``x_gdt``,
    ``q_NC``, ``x_gdt_est`` and ``q_NC_est``.
    """
    q_NB = np.atleast_2d(np.asarray(q_NB, dtype=float))
    x_gdt = np.atleast_2d(np.asarray(x_gdt, dtype=float))
    mass = np.atleast_1d(np.asarray(mass, dtype=float))
    n = q_NB.shape[0]
    out = {k: np.empty((n, 3 if k.startswith("x") else 4)) for k in ("x_gdt", "q_NC", "x_gdt_est", "q_NC_est")}
    R_BC, R_BC_est = pose.R_BC, pose.R_BC_est
    for k in range(n):
        R_NB = quat_to_rotmat(q_NB[k])
        T = camera_displacement(mount, mass[k])
        for suffix, R_BC_k, T_k in (("", R_BC, T), ("_est", R_BC_est, T + pose.T_est_offset)):
            out["x_gdt" + suffix][k] = x_gdt[k] + ned_to_geodetic_increment(x_gdt[k], R_NB @ T_k)
            out["q_NC" + suffix][k] = rotmat_to_quat(compose_rotation(R_NB, R_BC_k))
    return out
