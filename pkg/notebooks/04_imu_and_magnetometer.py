# %% [markdown]
# # IMU and magnetometer
#
# Fixed (per aircraft) quantities are scale factor and cross-coupling
# matrices, platform misalignment and hard iron. Per-flight quantities are
# bias offsets. The lever arm between the IMU and the centre of mass couples
# rotation into the sensed specific force.

# %%
import numpy as np

from sensorsim.imu import Imu, PlatformMounting, TriadSpec
from sensorsim.kinematics import euler_to_rotmat
from sensorsim.magnetometer import Magnetometer, MagSpec
from sensorsim.seedstream import derive_sensor_seeds, gaussian_stream

seeds = derive_sensor_seeds(11, 22)
imu = Imu.from_seeds(TriadSpec.acc_baseline(), TriadSpec.gyr_baseline(), PlatformMounting(), seeds)
print(imu.acc_matrices.M.round(6))

# %%
f = np.array([0.0, 0.0, -9.80665])
w = np.array([0.0, 0.0, 0.05])
rows = np.array([np.concatenate(imu.measure(f, w, np.zeros(3), 25.0)) for _ in range(500)])
print("mean f, w:", rows.mean(axis=0).round(4))
print("std  f, w:", rows.std(axis=0).round(5))

# %% [markdown]
# With every parameter zero and the mounting known exactly, the lever-arm
# terms on both sides of the model cancel.

# %%
exact = Imu.from_seeds(TriadSpec.zero("ACC"), TriadSpec.zero("GYR"), PlatformMounting.exact(T_full=[1.0, 0, 0]), seeds)
print(exact.measure(f, w, np.zeros(3), 25.0))

# %%
mag = Magnetometer(MagSpec.baseline(), gaussian_stream(seeds.fixed["mag"]), gaussian_stream(seeds.run["mag"]))
B_N = np.array([25000.0, -200.0, 38000.0])
R_BN = euler_to_rotmat(0.5, 0.02, -0.03).T
print("true", (R_BN @ B_N).round(1), "sensed", mag.measure(B_N, R_BN).round(1))
