"""
Triaxial magnetometer with hard iron, soft iron, offset and white noise.

All fields are in nT. Draw-order contract: the fixed MAG stream yields three
hard-iron draws then nine matrix draws (row major); the run MAG stream yields
three offset draws at start-up and three noise draws per sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .seedstream import GaussianStream

__all__ = [
    "MagSpec",
    "MagModel",
    "Magnetometer",
    "sample_mag_fixed",
    "measure_field",
    "mag_full_error",
]


@dataclass(frozen=True)
class MagSpec:
    sigma_v: float
    s: float
    m: float
    B_hi: float
    B0: float
    dt: float = 0.01

    def __post_init__(self):
        for name in ("sigma_v", "s", "m", "B_hi", "B0"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if not self.dt > 0:
            raise ValueError("dt must be positive")

    @classmethod
    def baseline(cls, swung: bool = True, dt: float = 0.01) -> "MagSpec":
        """Baseline magnetometers, after swinging or with only the +50% compensation."""
        if swung:
            return cls(sigma_v=5.0, s=7.50e-4, m=9.16e-4, B_hi=1.75e2, B0=5.00e2, dt=dt)
        return cls(sigma_v=5.0, s=7.50e-3, m=9.16e-3, B_hi=1.75e3, B0=5.00e2, dt=dt)

    @classmethod
    def zero(cls, dt: float = 0.01) -> "MagSpec":
        return cls(0.0, 0.0, 0.0, 0.0, 0.0, dt)

    @property
    def noise_scale(self) -> float:
        return self.sigma_v / math.sqrt(self.dt)


@dataclass(frozen=True)
class MagModel:
    M: np.ndarray
    hard_iron: np.ndarray
    offset: np.ndarray


def sample_mag_fixed(spec: MagSpec, fixed_stream: GaussianStream) -> tuple[np.ndarray, np.ndarray]:
    """
    Soft-iron/scale/cross-coupling matrix and hard-iron vector.

    The matrix is the identity plus the element-wise product of the
    ``[[s, m, m], [m, s, m], [m, m, s]]`` pattern with nine normal draws.
    """
    hard_iron = spec.B_hi * fixed_stream.normals(3)
    pattern = np.full((3, 3), spec.m)
    np.fill_diagonal(pattern, spec.s)
    M = np.eye(3) + pattern * fixed_stream.normals(9).reshape(3, 3)
    return M, hard_iron


class Magnetometer:
    def __init__(self, spec: MagSpec, fixed_stream: GaussianStream, run_stream: GaussianStream):
        self.spec = spec
        M, hard_iron = sample_mag_fixed(spec, fixed_stream)
        offset = spec.B0 * run_stream.normals(3)
        self.model = MagModel(M, hard_iron, offset)
        self._run = run_stream
        self.last_noise = np.zeros(3)

    def measure(self, B_N, R_BN) -> np.ndarray:
        """Field in body axes from the NED field ``B_N`` and the NED-to-body matrix ``R_BN``."""
        out, self.last_noise = measure_field(self.model, self.spec, B_N, R_BN, self._run)
        return out

    def full_error(self, B_N, R_BN, measurement) -> np.ndarray:
        return mag_full_error(B_N, R_BN, measurement, self.last_noise)


def measure_field(model: MagModel, spec: MagSpec, B_N, R_BN, run_stream: GaussianStream):
    """One sample; returns ``(measurement, white_noise)``."""
    noise = spec.noise_scale * run_stream.normals(3)
    B_body = np.asarray(R_BN) @ np.asarray(B_N, dtype=float)
    return model.hard_iron + model.offset + model.M @ B_body + noise, noise


def mag_full_error(B_N, R_BN, measurement, noise) -> np.ndarray:
    return np.asarray(measurement) - np.asarray(R_BN) @ np.asarray(B_N, dtype=float) - np.asarray(noise)
