# %% [markdown]
# # Camera intrinsics and pose stream
#
# The camera looks down with its image x axis along the right wing. The pose
# stream carries both the true pose and the pose the navigation system
# believes, which differ by the mounting estimate errors.

# %%
import math

import numpy as np

from sensorsim.camera import CameraIntrinsics, CameraMounting, camera_pose_stream, project_point, sample_camera_mounting
from sensorsim.kinematics import quat_to_rotmat, rotation_angle
from sensorsim.seedstream import gaussian_stream

cam = CameraIntrinsics()
print(f"fov {cam.fov_h:.3f} x {cam.fov_v:.3f} deg, principal point ({cam.c_i}, {cam.c_ii})")
print(project_point(cam, [1.0, -2.0, 50.0]))

# %%
mount = CameraMounting(T_full=[1.2, 0.0, 0.3], T_empty=[1.2, 0.0, 0.35])
pose = sample_camera_mounting(mount, gaussian_stream(5))
x0 = np.array([math.radians(-3.7), math.radians(40.4), 1500.0])
out = camera_pose_stream(np.array([1.0, 0, 0, 0]), x0, [20.0], mount, pose)
R_err = quat_to_rotmat(out["q_NC_est"][0]) @ quat_to_rotmat(out["q_NC"][0]).T
print("believed vs true attitude error (deg):", math.degrees(rotation_angle(R_err)))
print("believed vs true height error (m):", out["x_gdt_est"][0, 2] - out["x_gdt"][0, 2])
