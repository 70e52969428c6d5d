"""
Correction operators applied after laboratory calibration and swinging, and
the derating that folds those procedures into the sensor specs.

The simulator itself uses derated specs; the correction operators are for
users who want to model an explicit calibration step.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .imu import TriadSpec
from .magnetometer import MagSpec

__all__ = [
    "INERTIAL_REDUCTION",
    "MAGNETIC_REDUCTION",
    "MAX_CONDITION",
    "CalibrationEstimate",
    "apply_imu_correction",
    "apply_swinging_correction",
    "derate_spec",
]

INERTIAL_REDUCTION = 0.95
MAGNETIC_REDUCTION = 0.90
MAX_CONDITION = 10.0


def _eye():
    return np.eye(3)


def _zeros():
    return np.zeros(3)


@dataclass(frozen=True)
class CalibrationEstimate:
    M_acc: np.ndarray = field(default_factory=_eye)
    M_gyr: np.ndarray = field(default_factory=_eye)
    M_mag: np.ndarray = field(default_factory=_eye)
    B0_acc: np.ndarray = field(default_factory=_zeros)
    B0_gyr: np.ndarray = field(default_factory=_zeros)
    B_hi_mag: np.ndarray = field(default_factory=_zeros)
    B0_mag: np.ndarray = field(default_factory=_zeros)

    def __post_init__(self):
        for name in ("M_acc", "M_gyr", "M_mag"):
            M = np.asarray(getattr(self, name), dtype=float)
            if M.shape != (3, 3):
                raise ValueError(f"{name} must be 3x3")
            cond = np.linalg.cond(M)
            if not cond < MAX_CONDITION:
                raise ValueError(f"{name} is ill-conditioned (cond={cond:.3g})")
            object.__setattr__(self, name, M)
        for name in ("B0_acc", "B0_gyr", "B_hi_mag", "B0_mag"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector")
            object.__setattr__(self, name, v)


def apply_imu_correction(est: CalibrationEstimate, f_meas, w_meas) -> tuple[np.ndarray, np.ndarray]:
    f = np.linalg.solve(est.M_acc, np.asarray(f_meas, dtype=float)) - est.B0_acc
    w = np.linalg.solve(est.M_gyr, np.asarray(w_meas, dtype=float)) - est.B0_gyr
    return f, w


def apply_swinging_correction(est: CalibrationEstimate, B_meas) -> np.ndarray:
    return np.linalg.solve(est.M_mag, np.asarray(B_meas, dtype=float)) - est.B_hi_mag - est.B0_mag


def derate_spec(raw, reduction: float):
    """
    Scale the fixed error parameters of ``raw`` by ``1 - reduction``.

    Scale factor and cross coupling are reduced for inertial triads; the
    magnetometer hard iron is reduced as well. Offsets, drift and noise stay.
    """
    if not 0.0 <= reduction <= 1.0:
        raise ValueError(f"reduction must lie in [0, 1], got {reduction}")
    k = 1.0 - reduction
    if isinstance(raw, TriadSpec):
        return replace(raw, s=raw.s * k, m=raw.m * k)
    if isinstance(raw, MagSpec):
        return replace(raw, s=raw.s * k, m=raw.m * k, B_hi=raw.B_hi * k)
    raise TypeError(f"cannot derate {type(raw).__name__}")
