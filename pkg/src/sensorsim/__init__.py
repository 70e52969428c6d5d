"""Seed-reproducible stochastic simulator of fixed-wing aircraft sensors."""

from .air_data import AirData, AirDataSpec, density_from_p_T, tas_from_pressures, total_pressure_from_tas
from .calibration import CalibrationEstimate, apply_imu_correction, apply_swinging_correction, derate_spec
from .camera import CameraIntrinsics, CameraMounting, camera_pose_stream, project_point, sample_camera_mounting
from .config import ConfigError, RunConfig, load_config, parse_config
from .gnss import GnssReceiver, GnssSpec
from .imu import Imu, PlatformMounting, TriadSpec
from .magnetometer import Magnetometer, MagSpec
from .montecarlo import compare_to_theory, monte_carlo_single_axis
from .seedstream import GaussianStream, SeedCatalog, build_catalog, derive_sensor_seeds
from .simulation import run_simulation, write_outputs
from .single_axis import SingleAxisSpec
from .trajectory import DataError, Trajectory, load_truth, save_truth

__version__ = "0.1.0"

__all__ = [
    "AirData",
    "AirDataSpec",
    "CalibrationEstimate",
    "CameraIntrinsics",
    "CameraMounting",
    "ConfigError",
    "DataError",
    "GaussianStream",
    "GnssReceiver",
    "GnssSpec",
    "Imu",
    "MagSpec",
    "Magnetometer",
    "PlatformMounting",
    "RunConfig",
    "SeedCatalog",
    "SingleAxisSpec",
    "Trajectory",
    "TriadSpec",
    "apply_imu_correction",
    "apply_swinging_correction",
    "build_catalog",
    "camera_pose_stream",
    "compare_to_theory",
    "density_from_p_T",
    "derate_spec",
    "derive_sensor_seeds",
    "load_config",
    "load_truth",
    "monte_carlo_single_axis",
    "parse_config",
    "project_point",
    "run_simulation",
    "sample_camera_mounting",
    "save_truth",
    "tas_from_pressures",
    "total_pressure_from_tas",
    "write_outputs",
]
