"""
Discrete error model of one inertial sensor axis.

The measurement at step ``s`` is::

    x~(s dt) = x(s dt) + B0 Nu0 + sigma_u dt^(1/2) sum_{i=1..s} Nu_i + sigma_v / dt^(1/2) Nv_s

The bias-drift walk is saturated at ``+/- clamp_factor * sigma_u * dt^(1/2)``.
Closed-form mean and variance of the error and of its first and second
rectangular-rule integrals are provided as oracles. The oracles describe the
unclamped process.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .seedstream import GaussianStream

__all__ = [
    "SingleAxisSpec",
    "SingleAxisState",
    "ErrorStats",
    "init_state",
    "step",
    "simulate_errors",
    "saturated_walk",
    "theory_error_stats",
    "theory_first_integral_stats",
    "theory_second_integral_stats",
    "sigma_u_from_stability",
    "sigma_v_from_random_walk_spec",
]


@dataclass(frozen=True)
class SingleAxisSpec:
    B0: float
    sigma_u: float
    sigma_v: float
    dt: float
    clamp_factor: float = 100.0

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.B0 < 0 or self.sigma_u < 0 or self.sigma_v < 0:
            raise ValueError("B0, sigma_u and sigma_v must be non-negative")
        if not self.clamp_factor > 0:
            raise ValueError(f"clamp_factor must be positive, got {self.clamp_factor}")

    @property
    def walk_bound(self) -> float:
        return self.clamp_factor * self.sigma_u * math.sqrt(self.dt)

    @property
    def drift_scale(self) -> float:
        return self.sigma_u * math.sqrt(self.dt)

    @property
    def noise_scale(self) -> float:
        return self.sigma_v / math.sqrt(self.dt)

    def unclamped(self) -> "SingleAxisSpec":
        return SingleAxisSpec(self.B0, self.sigma_u, self.sigma_v, self.dt, math.inf)


@dataclass
class SingleAxisState:
    s: int = 0
    offset_term: float = 0.0
    walk_sum: float = 0.0
    last_noise: float = 0.0


def init_state(spec: SingleAxisSpec, stream: GaussianStream) -> SingleAxisState:
    """Sample the turn-on bias. Always consumes one draw, even when ``B0 == 0``."""
    return SingleAxisState(offset_term=spec.B0 * stream.normal())


def _saturate(value: float, bound: float) -> float:
    if value > bound:
        return bound
    if value < -bound:
        return -bound
    return value


def step(state: SingleAxisState, spec: SingleAxisSpec, true_value: float, stream: GaussianStream) -> float:
    """Advance one sample and return the measurement. Draw order: drift, then noise."""
    drift_draw, noise_draw = stream.normals(2)
    state.walk_sum = _saturate(state.walk_sum + spec.drift_scale * drift_draw, spec.walk_bound)
    state.last_noise = spec.noise_scale * noise_draw
    state.s += 1
    return true_value + state.offset_term + state.walk_sum + state.last_noise


def saturated_walk(increments: np.ndarray, bound: float, start: float = 0.0) -> np.ndarray:
    """Running sum of ``increments`` saturated to ``[-bound, bound]`` after every step."""
    increments = np.asarray(increments, dtype=float)
    if math.isinf(bound):
        return start + np.cumsum(increments)
    out = np.empty_like(increments)
    w = start
    for k, d in enumerate(increments.tolist()):
        w += d
        if w > bound:
            w = bound
        elif w < -bound:
            w = -bound
        out[k] = w
    return out


def simulate_errors(spec: SingleAxisSpec, stream: GaussianStream, n_steps: int) -> np.ndarray:
    """
    Errors ``e(dt), ..., e(n dt)`` of a freshly initialized axis.

    Consumes draws in exactly the order of :func:`init_state` followed by
    ``n_steps`` calls to :func:`step`, so both paths agree bit for bit.
    """
    offset = spec.B0 * stream.normal()
    draws = stream.normals(2 * n_steps).reshape(n_steps, 2)
    walk = saturated_walk(spec.drift_scale * draws[:, 0], spec.walk_bound)
    return offset + walk + spec.noise_scale * draws[:, 1]


@dataclass(frozen=True)
class ErrorStats:
    """Mean and variance split by source; ``variance`` is the sum of the parts."""

    mean: float
    components: dict = field(default_factory=dict)

    @property
    def variance(self) -> float:
        return float(sum(self.components.values()))

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)


def _steps(spec: SingleAxisSpec, t: float) -> int:
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    return int(round(t / spec.dt))


def theory_error_stats(spec: SingleAxisSpec, t: float) -> ErrorStats:
    s = _steps(spec, t)
    return ErrorStats(
        0.0,
        {
            "offset": spec.B0**2,
            "drift": spec.sigma_u**2 * s * spec.dt,
            "noise": spec.sigma_v**2 / spec.dt,
        },
    )


def theory_first_integral_stats(spec: SingleAxisSpec, f0: float, t: float, exact: bool = True) -> ErrorStats:
    """
    Statistics of ``f0 + dt * sum_{i=1..s} e(i dt)``.

    ``exact=True`` gives the variance of the discrete sum; ``exact=False``
    gives the large-``s`` power-law approximation.
    """
    s = _steps(spec, t)
    dt = spec.dt
    ts = s * dt
    if exact:
        drift = spec.sigma_u**2 * dt**3 * s * (s + 1) * (2 * s + 1) / 6.0
    else:
        drift = spec.sigma_u**2 * ts**3 / 3.0
    return ErrorStats(
        float(f0),
        {"offset": spec.B0**2 * ts**2, "drift": drift, "noise": spec.sigma_v**2 * ts},
    )


def theory_second_integral_stats(
    spec: SingleAxisSpec, f0: float, g0: float, t: float, exact: bool = True
) -> ErrorStats:
    """Statistics of ``g0 + dt * sum_{k=1..s} f(k dt)`` with ``f`` the first integral."""
    s = _steps(spec, t)
    dt = spec.dt
    ts = s * dt
    if exact:
        offset = spec.B0**2 * dt**4 * (s * (s + 1) / 2.0) ** 2
        drift = spec.sigma_u**2 * dt**5 * s * (s + 1) * (s + 2) * (3 * s * s + 6 * s + 1) / 60.0
        noise = spec.sigma_v**2 * dt**3 * s * (s + 1) * (2 * s + 1) / 6.0
    else:
        offset = spec.B0**2 * ts**4 / 4.0
        drift = spec.sigma_u**2 * ts**5 / 20.0
        noise = spec.sigma_v**2 * ts**3 / 3.0
    return ErrorStats(float(g0 + f0 * ts), {"offset": offset, "drift": drift, "noise": noise})


def sigma_u_from_stability(x: float, t: float) -> float:
    """Bias drift from a 1-sigma bias change ``x`` observed over ``t`` seconds."""
    if t <= 0:
        raise ValueError(f"stability period must be positive, got {t}")
    return x / math.sqrt(t)


def sigma_v_from_random_walk_spec(value: float, unit_kind: str, dt: float | None = None) -> float:
    """
    White-noise level from a data-sheet figure.

    ``unit_kind`` is one of:

    * ``"per_sqrt_hour"``: angle/velocity random walk per sqrt(hr), e.g. deg/hr^0.5
    * ``"root_psd"``: root PSD, already in the target units
    * ``"psd"``: PSD of the white noise (square root is taken)
    * ``"random_walk_psd"``: PSD of the random walk, scaled by sqrt(dt)
    """
    if unit_kind == "per_sqrt_hour":
        return value / 60.0
    if unit_kind == "root_psd":
        return value
    if unit_kind == "psd":
        if value < 0:
            raise ValueError("PSD must be non-negative")
        return math.sqrt(value)
    if unit_kind == "random_walk_psd":
        if dt is None or dt <= 0:
            raise ValueError("random_walk_psd conversion needs a positive dt")
        return value * math.sqrt(dt)
    raise ValueError(f"unknown unit kind {unit_kind!r}")
