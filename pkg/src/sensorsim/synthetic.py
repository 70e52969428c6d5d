"""
Kinematically consistent synthetic truth for tests and demonstrations.

This is not a flight-dynamics model: it produces a wings-level turn at a
constant yaw rate (a straight line when the rate is zero) over a flat-Earth
patch, with constant atmosphere and field and a linearly burning fuel load.
"""

from __future__ import annotations

import math

import numpy as np

from .gnss import radii_of_curvature
from .imu import STANDARD_GRAVITY
from .kinematics import euler_to_rotmat, rotmat_to_quat
from .trajectory import Trajectory

__all__ = ["constant_turn_truth"]


def constant_turn_truth(
    duration: float = 10.0,
    dt: float = 0.002,
    yaw_rate: float = 0.05,
    speed: float = 50.0,
    heading0: float = 0.0,
    lon0: float = math.radians(-3.7),
    lat0: float = math.radians(40.4),
    h0: float = 1500.0,
    B_N=(25000.0, -200.0, 38000.0),
    p: float = 84556.0,
    T: float = 278.4,
    mass0: float = 25.0,
    burn_rate: float = 0.001,
    aoa: float = math.radians(2.0),
    aos: float = 0.0,
) -> Trajectory:
    n = int(round(duration / dt)) + 1
    t = dt * np.arange(n)
    psi = heading0 + yaw_rate * t
    if yaw_rate == 0.0:
        north = speed * t * math.cos(heading0)
        east = speed * t * math.sin(heading0)
    else:
        rad = speed / yaw_rate
        north = rad * (np.sin(psi) - math.sin(heading0))
        east = -rad * (np.cos(psi) - math.cos(heading0))
    r_m, r_n = radii_of_curvature(lat0)
    lat = lat0 + north / (r_m + h0)
    lon = lon0 + east / ((r_n + h0) * math.cos(lat0))
    x_gdt = np.column_stack([lon, lat, np.full(n, h0)])
    v_N = np.column_stack([speed * np.cos(psi), speed * np.sin(psi), np.zeros(n)])
    q_NB = np.array([rotmat_to_quat(euler_to_rotmat(a, 0.0, 0.0)) for a in psi])
    # body axes coincide with the turning heading frame, so f_B is constant
    f = np.tile([0.0, speed * yaw_rate, -STANDARD_GRAVITY], (n, 1))
    w = np.tile([0.0, 0.0, yaw_rate], (n, 1))
    alpha = np.zeros((n, 3))
    mass = mass0 - burn_rate * t
    return Trajectory(
        t=t,
        f=f,
        w=w,
        alpha=alpha,
        q_NB=q_NB,
        x_gdt=x_gdt,
        v_N=v_N,
        B_N=np.tile(np.asarray(B_N, dtype=float), (n, 1)),
        p=np.full(n, float(p)),
        T=np.full(n, float(T)),
        v_tas=np.full(n, float(speed)),
        aoa=np.full(n, float(aoa)),
        aos=np.full(n, float(aos)),
        mass=mass,
    )
