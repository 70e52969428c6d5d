"""
Monte-Carlo validation of the single-axis model against its closed forms.

Each run owns the accelerometer run stream derived from catalog pair
``(0, r)`` of the master seed, so results do not depend on the number of
worker processes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .seedstream import build_catalog, derive_sensor_seeds, gaussian_stream
from .single_axis import (
    SingleAxisSpec,
    simulate_errors,
    theory_error_stats,
    theory_first_integral_stats,
    theory_second_integral_stats,
)

__all__ = [
    "QUANTITIES",
    "MonteCarloTable",
    "CheckResult",
    "TheoryReport",
    "run_seeds",
    "single_run",
    "monte_carlo_single_axis",
    "compare_to_theory",
    "theory_table",
]

QUANTITIES = ("error", "first", "second")


@dataclass(frozen=True)
class MonteCarloTable:
    """Per-run values at each checkpoint; ``samples[q]`` has shape ``(runs, checkpoints)``."""

    checkpoints: np.ndarray
    samples: dict
    f0: float = 0.0
    g0: float = 0.0

    @property
    def runs(self) -> int:
        return self.samples["error"].shape[0]

    def mean(self, quantity: str) -> np.ndarray:
        return self.samples[quantity].mean(axis=0)

    def std(self, quantity: str) -> np.ndarray:
        ddof = 1 if self.runs > 1 else 0
        return self.samples[quantity].std(axis=0, ddof=ddof)


def run_seeds(master_seed: int, runs: int) -> list[int]:
    catalog = build_catalog(master_seed, runs)
    return [derive_sensor_seeds(*catalog.pair(0, r)).run["acc"] for r in range(runs)]


def single_run(spec: SingleAxisSpec, seed: int, idx: np.ndarray, f0: float, g0: float) -> np.ndarray:
    """Error, first and second integral of one run at step indices ``idx`` (1-based)."""
    n = int(idx.max())
    e = simulate_errors(spec, gaussian_stream(seed), n)
    f = f0 + spec.dt * np.cumsum(e)
    g = g0 + spec.dt * np.cumsum(f)
    k = idx - 1
    return np.stack([e[k], f[k], g[k]])


def _single_run_args(args):
    return single_run(*args)


def monte_carlo_single_axis(
    spec: SingleAxisSpec,
    runs: int,
    horizon: float,
    checkpoints=None,
    f0: float = 0.0,
    g0: float = 0.0,
    master_seed: int = 1,
    workers: int = 1,
) -> MonteCarloTable:
    """
    Simulate ``runs`` independent axes up to ``horizon`` seconds.

    Integrals use the rectangular rule. ``checkpoints`` defaults to ten
    evenly spaced times ending at the horizon.
    """
    if runs < 1:
        raise ValueError("need at least one run")
    if checkpoints is None:
        checkpoints = horizon * np.arange(1, 11) / 10.0
    checkpoints = np.asarray(checkpoints, dtype=float)
    idx = np.rint(checkpoints / spec.dt).astype(int)
    if idx.min() < 1 or checkpoints.max() > horizon + spec.dt / 2:
        raise ValueError("checkpoints must lie in (0, horizon]")
    seeds = run_seeds(master_seed, runs)
    jobs = [(spec, seed, idx, f0, g0) for seed in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_single_run_args, jobs))
    else:
        results = [_single_run_args(job) for job in jobs]
    stacked = np.stack(results)
    samples = {q: stacked[:, i, :] for i, q in enumerate(QUANTITIES)}
    return MonteCarloTable(idx * spec.dt, samples, f0, g0)


def theory_table(spec: SingleAxisSpec, checkpoints, f0: float = 0.0, g0: float = 0.0, exact: bool = True) -> dict:
    """Theoretical mean and variance for each quantity at each checkpoint."""
    out = {}
    for q in QUANTITIES:
        rows = []
        for t in checkpoints:
            if q == "error":
                st = theory_error_stats(spec, t)
            elif q == "first":
                st = theory_first_integral_stats(spec, f0, t, exact)
            else:
                st = theory_second_integral_stats(spec, f0, g0, t, exact)
            rows.append((st.mean, st.variance))
        arr = np.array(rows)
        out[q] = {"mean": arr[:, 0], "variance": arr[:, 1]}
    return out


@dataclass(frozen=True)
class CheckResult:
    quantity: str
    t: float
    mean: float
    variance: float
    theory_mean: float
    theory_variance: float
    band_low: float
    band_high: float
    z: float

    @property
    def variance_ok(self) -> bool:
        return self.band_low <= self.variance <= self.band_high

    @property
    def mean_ok(self) -> bool:
        return abs(self.z) <= stats.norm.ppf(0.995)


@dataclass(frozen=True)
class TheoryReport:
    checks: list

    def for_quantity(self, quantity: str) -> list:
        return [c for c in self.checks if c.quantity == quantity]

    def variance_passes(self, quantity: str) -> int:
        return sum(c.variance_ok for c in self.for_quantity(quantity))

    def mean_passes(self, quantity: str) -> int:
        return sum(c.mean_ok for c in self.for_quantity(quantity))

    @property
    def passed(self) -> bool:
        return all(c.variance_ok and c.mean_ok for c in self.checks)


def compare_to_theory(table: MonteCarloTable, spec: SingleAxisSpec, confidence: float = 0.99) -> TheoryReport:
    """
    Chi-square band on each empirical variance and a z-test on each mean.

    Needs at least two runs.
    """
    n = table.runs
    if n < 2:
        raise ValueError("comparison needs at least two runs")
    lo_q = stats.chi2.ppf((1 - confidence) / 2, n - 1) / (n - 1)
    hi_q = stats.chi2.ppf((1 + confidence) / 2, n - 1) / (n - 1)
    theory = theory_table(spec, table.checkpoints, table.f0, table.g0)
    checks = []
    for q in QUANTITIES:
        mean, std = table.mean(q), table.std(q)
        th_m, th_v = theory[q]["mean"], theory[q]["variance"]
        for k, t in enumerate(table.checkpoints):
            se = np.sqrt(th_v[k] / n)
            z = (mean[k] - th_m[k]) / se if se > 0 else (0.0 if mean[k] == th_m[k] else np.inf)
            checks.append(
                CheckResult(
                    q, float(t), float(mean[k]), float(std[k] ** 2), float(th_m[k]), float(th_v[k]),
                    float(th_v[k] * lo_q), float(th_v[k] * hi_q), float(z),
                )  # fmt: skip
            )
    return TheoryReport(checks)
