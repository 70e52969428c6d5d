import numpy as np
import pytest

from sensorsim.air_data import AirDataSpec
from sensorsim.camera import CameraMounting
from sensorsim.config import RunConfig
from sensorsim.gnss import GnssSpec
from sensorsim.imu import PlatformMounting, TriadSpec
from sensorsim.magnetometer import MagSpec
from sensorsim.synthetic import constant_turn_truth

LEVER_ARM = np.array([0.8, -0.1, 0.25])
CAMERA_ARM = np.array([1.2, 0.0, 0.3])


def zero_config(**kw) -> RunConfig:
    """Every stochastic parameter zero and every pose estimate exact."""
    base = dict(
        acc=TriadSpec.zero("ACC"),
        gyr=TriadSpec.zero("GYR"),
        mag=MagSpec.zero(),
        gnss=GnssSpec.zero(),
        air_data=AirDataSpec.zero(),
        platform=PlatformMounting.exact(T_full=LEVER_ARM),
        camera=CameraMounting.exact(T_full=CAMERA_ARM),
    )
    base.update(kw)
    return RunConfig(**base)


def baseline_config(**kw) -> RunConfig:
    return RunConfig(camera=CameraMounting(T_full=CAMERA_ARM, T_empty=CAMERA_ARM + [0.0, 0.0, 0.05]), **kw)


@pytest.fixture(scope="session")
def turn_truth():
    return constant_turn_truth(duration=3.0)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
