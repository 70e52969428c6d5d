import math

import numpy as np
import pytest

from sensorsim.calibration import INERTIAL_REDUCTION
from sensorsim.config import ConfigError, Rates, RunConfig, load_config, parse_config
from sensorsim.imu import TriadSpec
from sensorsim.magnetometer import MagSpec
from sensorsim.synthetic import constant_turn_truth
from sensorsim.trajectory import TRUTH_COLUMNS, DataError, load_truth, save_truth

CAMERA = "[camera]\nT_full = 1.2, 0.0, 0.3\nT_empty = 1.2, 0.0, 0.35\n"


@pytest.fixture
def truth_file(tmp_path):
    path = tmp_path / "truth.csv"
    save_truth(constant_turn_truth(duration=0.1), path)
    return path


def rewrite(path, edit):
    lines = path.read_text().splitlines()
    path.write_text("\n".join(edit(lines)) + "\n")
    return path


def test_round_trip_is_exact(truth_file):
    ref = constant_turn_truth(duration=0.1)
    back = load_truth(truth_file)
    for name in ("t", "f", "w", "alpha", "q_NB", "v_N", "B_N", "p", "mass"):
        np.testing.assert_array_equal(getattr(back, name), getattr(ref, name))
    # degree columns go through one multiply and one divide
    np.testing.assert_allclose(back.x_gdt, ref.x_gdt, rtol=1e-15)
    np.testing.assert_allclose(back.aoa, ref.aoa, rtol=1e-15)


def test_header_lists_all_columns(truth_file):
    assert tuple(truth_file.read_text().splitlines()[0].split(",")) == TRUTH_COLUMNS


def test_alpha_differenced_when_absent(tmp_path):
    t = np.arange(0, 1.0001, 0.01)
    traj = constant_turn_truth(duration=1.0, dt=0.01)
    traj.w[:, 0] = np.sin(t)
    path = tmp_path / "no_alpha.csv"
    save_truth(traj, path, include_alpha=False)
    back = load_truth(path)
    np.testing.assert_allclose(back.alpha[1:-1, 0], np.cos(t[1:-1]), atol=2e-5)
    np.testing.assert_allclose(back.alpha[:, 2], 0.0, atol=1e-12)


def test_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(DataError, match="empty"):
        load_truth(path)


def test_single_row(truth_file):
    rewrite(truth_file, lambda lines: lines[:2])
    with pytest.raises(DataError, match="two rows"):
        load_truth(truth_file)


def test_missing_column(truth_file):
    def drop_mass(lines):
        return [",".join(row.split(",")[:-1]) for row in lines]

    rewrite(truth_file, drop_mass)
    with pytest.raises(DataError, match="mass"):
        load_truth(truth_file)


def test_wrong_field_count(truth_file):
    rewrite(truth_file, lambda lines: lines[:3] + [lines[3] + ",1.0"] + lines[4:])
    with pytest.raises(DataError, match="row 4"):
        load_truth(truth_file)


@pytest.mark.parametrize("bad", ["nan", "inf", "abc"])
def test_non_finite_value(truth_file, bad):
    def poison(lines):
        fields = lines[5].split(",")
        fields[2] = bad
        return lines[:5] + [",".join(fields)] + lines[6:]

    rewrite(truth_file, poison)
    with pytest.raises(DataError, match="row 6"):
        load_truth(truth_file)


def test_non_monotonic_time(truth_file):
    rewrite(truth_file, lambda lines: lines[:3] + [lines[4], lines[3]] + lines[5:])
    with pytest.raises(DataError, match="increasing"):
        load_truth(truth_file)


def test_non_unit_quaternion(truth_file):
    col = TRUTH_COLUMNS.index("q_w")

    def stretch(lines):
        fields = lines[2].split(",")
        fields[col] = repr(float(fields[col]) * (1 + 1e-6))
        return lines[:2] + [",".join(fields)] + lines[3:]

    rewrite(truth_file, stretch)
    with pytest.raises(DataError, match="row 3"):
        load_truth(truth_file)


def test_defaults_are_derated_tables():
    cfg = parse_config("")
    acc = TriadSpec.acc_baseline()
    assert (cfg.acc.sigma_u, cfg.acc.sigma_v) == (acc.sigma_u, acc.sigma_v)
    assert cfg.acc.s == pytest.approx(acc.s)
    assert cfg.gyr.s == pytest.approx(TriadSpec.gyr_baseline().s)
    assert cfg.gyr.m == pytest.approx(TriadSpec.gyr_baseline().m)
    assert cfg.mag.B_hi == pytest.approx(MagSpec.baseline().B_hi)
    assert cfg.camera is None


def test_values_and_vectors_parsed():
    cfg = parse_config(
        "[run]\naircraft_index = 3\nflight_index = 7\n"
        "[acc]\ns = 1e-3\n"
        "[calibration]\ninertial_reduction = 0.5\n"
        "[platform]\nT_full = 0.1, -0.2, 0.3\nT_empty = 0.1, -0.2, 0.3\n" + CAMERA
    )
    assert (cfg.aircraft_index, cfg.flight_index) == (3, 7)
    assert cfg.acc.s == pytest.approx(5e-4)
    np.testing.assert_array_equal(cfg.platform.T_full, [0.1, -0.2, 0.3])
    np.testing.assert_array_equal(cfg.camera.T_empty, [1.2, 0.0, 0.35])
    assert INERTIAL_REDUCTION == 0.95


@pytest.mark.parametrize(
    "text, match",
    [
        ("[bogus]\nx = 1\n", "unknown section"),
        ("[acc]\nsigma_w = 1\n", "unknown key"),
        ("[acc]\ns = fast\n", "acc"),
        ("[platform]\nT_full = 1, 2\n", "three"),
        ("[rates]\ndt_sensed = 0.0125\n", "integer multiple"),
        ("[rates]\ndt_truth = 0\n", "positive"),
        ("[camera]\nT_full = 1, 0, 0\n", "T_empty"),
        ("[run]\naircraft_seed = 5\n", "together"),
        ("[calibration]\ninertial_reduction = 2\n", "reduction"),
        ("[run\n", "[Ss]ection|header"),
    ],
)
def test_invalid_config_rejected(text, match):
    with pytest.raises(ConfigError, match=match):
        parse_config(text)


def test_rates_ratios():
    r = Rates()
    assert (r.truth_per_sensed, r.sensed_per_img, r.sensed_per_gnss) == (5, 10, 100)


def test_explicit_seed_pair_wins():
    cfg = parse_config("[run]\naircraft_seed = 11\nflight_seed = 12\nflight_index = 4\n")
    assert cfg.seed_pair() == (11, 12)


def test_catalog_pair_prefix_independent():
    a = RunConfig(aircraft_index=1, flight_index=2).seed_pair()
    b = RunConfig(aircraft_index=1, flight_index=9).seed_pair()
    assert a[0] == b[0] and a[1] != b[1]


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.ini")


def test_load_config_file(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text(CAMERA)
    assert math.isclose(load_config(path).camera.T_full[0], 1.2)
