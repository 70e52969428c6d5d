"""
Rigid-body motion algebra for three frames F0, F1, F2.

Every composition takes its vector inputs already expressed in one common
frame; rotating them there is the caller's job. Subscript ``01`` reads "of
frame 1 with respect to frame 0", so ``w01`` is the angular velocity of F1
relative to F0.

Euler angles follow the aeronautical 3-2-1 (yaw, pitch, roll) sequence and
``euler_to_rotmat(psi, theta, xi)`` returns the matrix that maps components in
the rotated frame to components in the reference frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.spatial.transform import Rotation

__all__ = [
    "DegenerateAttitudeError",
    "FrameMotion",
    "PointKinematics",
    "skew",
    "euler_to_rotmat",
    "rotmat_to_euler",
    "quat_to_rotmat",
    "rotmat_to_quat",
    "rotation_angle",
    "orthonormalize",
    "compose_rotation",
    "compose_position",
    "compose_linear_velocity",
    "compose_linear_acceleration",
    "compose_angular_velocity",
    "compose_angular_acceleration",
    "imu_point_kinematics",
]

GIMBAL_LOCK_COS = 1e-9


class DegenerateAttitudeError(ValueError):
    """Euler extraction requested too close to pitch = +/-90 deg."""


def skew(v) -> np.ndarray:
    """Skew-symmetric matrix such that ``skew(v) @ w == np.cross(v, w)``."""
    x, y, z = np.asarray(v, dtype=float)
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def euler_to_rotmat(psi: float, theta: float, xi: float) -> np.ndarray:
    cps, sps = np.cos(psi), np.sin(psi)
    cth, sth = np.cos(theta), np.sin(theta)
    cxi, sxi = np.cos(xi), np.sin(xi)
    rz = np.array([[cps, -sps, 0.0], [sps, cps, 0.0], [0.0, 0.0, 1.0]])
    ry = np.array([[cth, 0.0, sth], [0.0, 1.0, 0.0], [-sth, 0.0, cth]])
    rx = np.array([[1.0, 0.0, 0.0], [0.0, cxi, -sxi], [0.0, sxi, cxi]])
    return rz @ ry @ rx


def rotmat_to_euler(R) -> np.ndarray:
    """Inverse of :func:`euler_to_rotmat`; returns ``[psi, theta, xi]``."""
    R = np.asarray(R, dtype=float)
    cos_theta = np.hypot(R[0, 0], R[1, 0])
    if cos_theta < GIMBAL_LOCK_COS:
        raise DegenerateAttitudeError(f"pitch too close to +/-90 deg (cos = {cos_theta:.3e})")
    theta = np.arctan2(-R[2, 0], cos_theta)
    psi = np.arctan2(R[1, 0], R[0, 0])
    xi = np.arctan2(R[2, 1], R[2, 2])
    return np.array([psi, theta, xi])


def quat_to_rotmat(q) -> np.ndarray:
    """Scalar-first unit quaternion to rotation matrix."""
    q = np.asarray(q, dtype=float)
    return Rotation.from_quat([q[1], q[2], q[3], q[0]]).as_matrix()


def rotmat_to_quat(R) -> np.ndarray:
    """Rotation matrix to scalar-first quaternion with non-negative scalar part."""
    x, y, z, w = Rotation.from_matrix(np.asarray(R, dtype=float)).as_quat()
    q = np.array([w, x, y, z])
    return -q if w < 0 else q


def rotation_angle(R) -> float:
    """Angle in radians of the rotation represented by ``R``."""
    return float(Rotation.from_matrix(np.asarray(R, dtype=float)).magnitude())


def orthonormalize(R) -> np.ndarray:
    u, _, vt = np.linalg.svd(np.asarray(R, dtype=float))
    return u @ vt


def compose_rotation(R01, R12) -> np.ndarray:
    return np.asarray(R01) @ np.asarray(R12)


def compose_position(T01, R01, T12_in_1) -> np.ndarray:
    """Position of F2 relative to F0, viewed in F0, from ``T12`` viewed in F1."""
    return np.asarray(R01) @ np.asarray(T12_in_1, dtype=float) + np.asarray(T01, dtype=float)


def compose_linear_velocity(v01, v12, w01, T12) -> np.ndarray:
    v01, v12, w01, T12 = (np.asarray(x, dtype=float) for x in (v01, v12, w01, T12))
    return v12 + v01 + np.cross(w01, T12)


def compose_linear_acceleration(a01, a12, alpha01, w01, T12, v12) -> np.ndarray:
    """Relative + transport + Coriolis accelerations, all in one common frame."""
    a01, a12, alpha01, w01, T12, v12 = (
        np.asarray(x, dtype=float) for x in (a01, a12, alpha01, w01, T12, v12)
    )
    transport = a01 + np.cross(alpha01, T12) + np.cross(w01, np.cross(w01, T12))
    coriolis = 2.0 * np.cross(w01, v12)
    return a12 + transport + coriolis


def compose_angular_velocity(w01, w12) -> np.ndarray:
    return np.asarray(w12, dtype=float) + np.asarray(w01, dtype=float)


def compose_angular_acceleration(alpha01, alpha12, w01, w12) -> np.ndarray:
    alpha01, alpha12, w01, w12 = (np.asarray(x, dtype=float) for x in (alpha01, alpha12, w01, w12))
    return alpha12 + alpha01 + np.cross(w01, w12)


@dataclass
class FrameMotion:
    """
    Motion of one frame with respect to another.

    ``frame`` names the frame in which ``v``, ``a``, ``w`` and ``alpha`` are
    viewed. ``R`` maps components in the moving frame to the reference frame.
    """

    T: np.ndarray = field(default_factory=lambda: np.zeros(3))
    R: np.ndarray = field(default_factory=lambda: np.eye(3))
    v: np.ndarray = field(default_factory=lambda: np.zeros(3))
    a: np.ndarray = field(default_factory=lambda: np.zeros(3))
    w: np.ndarray = field(default_factory=lambda: np.zeros(3))
    alpha: np.ndarray = field(default_factory=lambda: np.zeros(3))
    frame: str = "B"

    def __post_init__(self):
        for name in ("T", "v", "a", "w", "alpha"):
            vec = np.asarray(getattr(self, name), dtype=float)
            if vec.shape != (3,) or not np.all(np.isfinite(vec)):
                raise ValueError(f"FrameMotion.{name} must be a finite 3-vector")
            setattr(self, name, vec)
        self.R = np.asarray(self.R, dtype=float)


class PointKinematics(NamedTuple):
    w: np.ndarray
    alpha: np.ndarray
    v: np.ndarray
    a: np.ndarray


def imu_point_kinematics(body_motion: FrameMotion, T_BP, frame: str = "B") -> PointKinematics:
    """
    Motion of a point rigidly attached to the body at lever arm ``T_BP``.

    The lever arm is constant, so the point shares the body rotation and only
    picks up the transport terms.
    """
    if body_motion.frame != frame:
        raise ValueError(f"body motion viewed in {body_motion.frame!r}, lever arm in {frame!r}")
    zero = np.zeros(3)
    w = compose_angular_velocity(body_motion.w, zero)
    alpha = compose_angular_acceleration(body_motion.alpha, zero, body_motion.w, zero)
    v = compose_linear_velocity(body_motion.v, zero, body_motion.w, T_BP)
    a = compose_linear_acceleration(body_motion.a, zero, body_motion.alpha, body_motion.w, T_BP, zero)
    return PointKinematics(w, alpha, v, a)
