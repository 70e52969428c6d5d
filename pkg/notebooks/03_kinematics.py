# %% [markdown]
# # Frame composition
#
# Position, velocity and acceleration of a point in a moving frame, and the
# composed angular rates, compared with a finite-difference oracle built from
# homogeneous transforms.

# %%
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from _oracles import OPERATIONS, kinematics_case_errors  # noqa: E402

from sensorsim.kinematics import FrameMotion, imu_point_kinematics  # noqa: E402

worst = kinematics_case_errors(np.random.default_rng(0), 200)
for op in OPERATIONS:
    print(f"{op:22s} {worst[op]:.2e}")

# %% [markdown]
# A point one metre ahead of the centre of mass of a body spinning at 1 rad/s
# about z sees a centripetal acceleration of 1 m/s^2 towards the axis.

# %%
pk = imu_point_kinematics(FrameMotion(w=[0, 0, 1]), [1, 0, 0])
print(pk.v, pk.a)
