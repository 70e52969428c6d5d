"""
Truth trajectory container and its comma-separated file format.

Columns (header names, SI units unless the name says otherwise)::

    t
    f_x f_y f_z            specific force in body axes, m/s^2
    w_x w_y w_z            body angular rate, rad/s
    alpha_x alpha_y alpha_z  (optional) body angular acceleration, rad/s^2
    q_w q_x q_y q_z        body-to-NED attitude quaternion, scalar first
    lon_deg lat_deg h_m    geodetic position
    v_n v_e v_d            ground velocity in NED, m/s
    B_n B_e B_d            magnetic field in NED, nT
    p T v_tas              static pressure Pa, temperature K, true airspeed m/s
    aoa_deg aos_deg        flow angles
    mass                   kg
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

__all__ = [
    "TRUTH_COLUMNS",
    "OPTIONAL_COLUMNS",
    "DataError",
    "Trajectory",
    "load_truth",
    "save_truth",
    "format_float",
]

QUAT_TOL = 1e-9


class DataError(ValueError):
    """Malformed truth data."""


_GROUPS = {
    "f": ("f_x", "f_y", "f_z"),
    "w": ("w_x", "w_y", "w_z"),
    "alpha": ("alpha_x", "alpha_y", "alpha_z"),
    "q_NB": ("q_w", "q_x", "q_y", "q_z"),
    "x_gdt": ("lon_deg", "lat_deg", "h_m"),
    "v_N": ("v_n", "v_e", "v_d"),
    "B_N": ("B_n", "B_e", "B_d"),
    "p": ("p",),
    "T": ("T",),
    "v_tas": ("v_tas",),
    "aoa": ("aoa_deg",),
    "aos": ("aos_deg",),
    "mass": ("mass",),
}
OPTIONAL_COLUMNS = _GROUPS["alpha"]
TRUTH_COLUMNS = ("t",) + tuple(c for cols in _GROUPS.values() for c in cols)
_DEG_COLUMNS = {"lon_deg", "lat_deg", "aoa_deg", "aos_deg"}


def format_float(x: float) -> str:
    """Shortest text that round-trips the double exactly."""
    return repr(float(x))


@dataclass
class Trajectory:
    """Truth samples as arrays; angles in radians internally, ``x_gdt`` ordered (lon, lat, h)."""

    t: np.ndarray
    f: np.ndarray
    w: np.ndarray
    alpha: np.ndarray
    q_NB: np.ndarray
    x_gdt: np.ndarray
    v_N: np.ndarray
    B_N: np.ndarray
    p: np.ndarray
    T: np.ndarray
    v_tas: np.ndarray
    aoa: np.ndarray
    aos: np.ndarray
    mass: np.ndarray

    def __post_init__(self):
        n = len(self.t)
        for fld in fields(self):
            arr = np.asarray(getattr(self, fld.name), dtype=float)
            if arr.shape[0] != n:
                raise DataError(f"{fld.name} has {arr.shape[0]} rows, expected {n}")
            setattr(self, fld.name, arr)

    def __len__(self) -> int:
        return len(self.t)

    def rows(self, idx) -> "Trajectory":
        return Trajectory(**{fld.name: getattr(self, fld.name)[idx] for fld in fields(self)})


def _column_block(name: str, table: dict[str, np.ndarray]) -> np.ndarray:
    cols = [table[c] * (math.pi / 180.0 if c in _DEG_COLUMNS else 1.0) for c in _GROUPS[name]]
    return cols[0] if len(cols) == 1 else np.column_stack(cols)


def load_truth(path: str | Path) -> Trajectory:
    """
    Read and validate a truth file.

    Angular acceleration is central-differenced from the rates when the
    ``alpha_*`` columns are absent (one-sided at the ends).
    """
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError(f"{path}: empty file")
        header = [h.strip() for h in header]
        missing = [c for c in TRUTH_COLUMNS if c not in header and c not in OPTIONAL_COLUMNS]
        if missing:
            raise DataError(f"{path}: missing column(s) {', '.join(missing)}")
        has_alpha = all(c in header for c in OPTIONAL_COLUMNS)
        pos = {c: header.index(c) for c in TRUTH_COLUMNS if c in header}
        values = []
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise DataError(f"{path}: row {row_no}: expected {len(header)} fields, got {len(row)}")
            try:
                rec = [float(row[pos[c]]) for c in pos]
            except ValueError as exc:
                raise DataError(f"{path}: row {row_no}: {exc}") from None
            if not all(math.isfinite(v) for v in rec):
                raise DataError(f"{path}: row {row_no}: non-finite value")
            values.append((row_no, rec))
    if len(values) < 2:
        raise DataError(f"{path}: need at least two rows, got {len(values)}")
    data = np.array([rec for _, rec in values])
    table = {c: data[:, k] for k, c in enumerate(pos)}
    t = table["t"]
    bad = np.nonzero(np.diff(t) <= 0)[0]
    if bad.size:
        raise DataError(f"{path}: row {values[bad[0] + 1][0]}: time not strictly increasing")
    q = np.column_stack([table[c] for c in _GROUPS["q_NB"]])
    off = np.nonzero(np.abs(np.linalg.norm(q, axis=1) - 1.0) > QUAT_TOL)[0]
    if off.size:
        raise DataError(f"{path}: row {values[off[0]][0]}: quaternion is not unit length")
    w = _column_block("w", table)
    alpha = _column_block("alpha", table) if has_alpha else np.gradient(w, t, axis=0)
    kw = {name: _column_block(name, table) for name in _GROUPS if name != "alpha"}
    return Trajectory(t=t, alpha=alpha, **kw)


def save_truth(traj: Trajectory, path: str | Path, include_alpha: bool = True) -> None:
    cols = [c for c in TRUTH_COLUMNS if include_alpha or c not in OPTIONAL_COLUMNS]
    blocks = {"t": traj.t[:, None]}
    for name, names in _GROUPS.items():
        arr = np.asarray(getattr(traj, name), dtype=float).reshape(len(traj), -1)
        scale = np.array([180.0 / math.pi if c in _DEG_COLUMNS else 1.0 for c in names])
        for k, c in enumerate(names):
            blocks[c] = arr[:, k : k + 1] * scale[k]
    table = np.hstack([blocks[c] for c in cols])
    with Path(path).open("w", newline="") as fh:
        fh.write(",".join(cols) + "\n")
        for row in table:
            fh.write(",".join(format_float(x) for x in row) + "\n")
