"""
Two-level seed hierarchy and the Gaussian draw streams it feeds.

A master seed produces a catalog of (aircraft, flight) seed pairs. Each pair
expands into five fixed sensor seeds (aircraft dependent) and nine run sensor
seeds (flight dependent). Every sensor owns its streams, so adding or removing
a sensor never shifts the draws seen by another one.

All generators are PCG64. Normal variates come from the inverse normal CDF of
one 53-bit uniform per variate, which keeps the draw count per variate fixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.special import ndtri

__all__ = [
    "FIXED_SENSORS",
    "RUN_SENSORS",
    "SeedCatalog",
    "SensorSeedSet",
    "GaussianStream",
    "build_catalog",
    "derive_sensor_seeds",
    "gaussian_stream",
]

FIXED_SENSORS = ("acc", "gyr", "mag", "plat", "cam")
RUN_SENSORS = ("acc", "gyr", "mag", "osp", "oat", "tas", "aoa", "aos", "gnss")

_SEED_HIGH = 2**64


def _uniform_integers(seed: int, count: int) -> list[int]:
    gen = np.random.Generator(np.random.PCG64(int(seed)))
    draws = gen.integers(0, _SEED_HIGH, size=count, dtype=np.uint64, endpoint=False)
    return [int(d) for d in draws]


@dataclass(frozen=True)
class SeedCatalog:
    master_seed: int
    aircraft_seeds: tuple[int, ...]
    flight_seeds: tuple[int, ...]

    @property
    def capacity(self) -> int:
        return len(self.aircraft_seeds)

    def pair(self, aircraft_index: int, flight_index: int) -> tuple[int, int]:
        """Seed pair for aircraft ``i`` flying flight ``j`` (both zero based)."""
        if not 0 <= aircraft_index < self.capacity:
            raise IndexError(f"aircraft index {aircraft_index} outside catalog of {self.capacity}")
        if not 0 <= flight_index < self.capacity:
            raise IndexError(f"flight index {flight_index} outside catalog of {self.capacity}")
        return self.aircraft_seeds[aircraft_index], self.flight_seeds[flight_index]

    def save(self, path: str | Path) -> None:
        lines = [f"# master_seed {self.master_seed}", "# aircraft_seed flight_seed"]
        lines += [f"{a} {f}" for a, f in zip(self.aircraft_seeds, self.flight_seeds)]
        Path(path).write_text("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "SeedCatalog":
        master = None
        aircraft, flight = [], []
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if len(parts) == 2 and parts[0] == "master_seed":
                    master = int(parts[1])
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected two seeds, got {line!r}")
            aircraft.append(int(parts[0]))
            flight.append(int(parts[1]))
        if not aircraft:
            raise ValueError(f"{path}: no seed pairs found")
        return cls(master if master is not None else -1, tuple(aircraft), tuple(flight))


def build_catalog(master_seed: int, capacity: int) -> SeedCatalog:
    """
    Draw ``2 * capacity`` uniform 64-bit integers from ``master_seed``.

    Draws are split into two equal groups by alternating position (even draws
    are aircraft seeds, odd draws flight seeds), so a small catalog is always
    a prefix of a larger one built from the same master seed.
    """
    if capacity < 1:
        raise ValueError(f"capacity must be >= 1, got {capacity}")
    draws = _uniform_integers(master_seed, 2 * capacity)
    return SeedCatalog(int(master_seed), tuple(draws[0::2]), tuple(draws[1::2]))


@dataclass(frozen=True)
class SensorSeedSet:
    fixed: dict[str, int]
    run: dict[str, int]

    def __post_init__(self):
        if tuple(self.fixed) != FIXED_SENSORS:
            raise ValueError(f"fixed seeds must be keyed {FIXED_SENSORS}")
        if tuple(self.run) != RUN_SENSORS:
            raise ValueError(f"run seeds must be keyed {RUN_SENSORS}")


def derive_sensor_seeds(aircraft_seed: int, flight_seed: int) -> SensorSeedSet:
    fixed = _uniform_integers(aircraft_seed, len(FIXED_SENSORS))
    run = _uniform_integers(flight_seed, len(RUN_SENSORS))
    return SensorSeedSet(dict(zip(FIXED_SENSORS, fixed)), dict(zip(RUN_SENSORS, run)))


class GaussianStream:
    """
    Standard normal variates from one seed.

    Draws are buffered internally; the sequence does not depend on how the
    caller batches its requests, so ``normals(3)`` followed by ``normal()``
    yields the same four numbers as ``normals(4)``.
    """

    _CHUNK = 4096

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.draws_emitted = 0
        self._bitgen = np.random.PCG64(self.seed)
        self._buffer = np.empty(0)
        self._pos = 0

    def _produce(self, n: int) -> np.ndarray:
        raw = self._bitgen.random_raw(n) >> np.uint64(11)
        u = (raw.astype(np.float64) + 0.5) * 2.0**-53
        return ndtri(u)

    def normals(self, n: int) -> np.ndarray:
        if n < 0:
            raise ValueError("n must be non-negative")
        available = self._buffer.size - self._pos
        if n <= available:
            out = self._buffer[self._pos : self._pos + n].copy()
            self._pos += n
        else:
            head = self._buffer[self._pos :]
            fresh = self._produce(max(n - available, self._CHUNK))
            need = n - available
            out = np.concatenate([head, fresh[:need]])
            self._buffer = fresh
            self._pos = need
        self.draws_emitted += n
        return out

    def normal(self) -> float:
        return float(self.normals(1)[0])

    def __repr__(self) -> str:
        return f"GaussianStream(seed={self.seed}, draws_emitted={self.draws_emitted})"


def gaussian_stream(seed: int) -> GaussianStream:
    return GaussianStream(seed)
