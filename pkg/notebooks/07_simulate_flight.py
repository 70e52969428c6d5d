# %% [markdown]
# # A full simulated flight
#
# A level constant-rate turn stands in for a flight-dynamics truth. The
# harness turns it into sensed, GNSS and camera pose tables, and the same
# seeds always give the same files.

# %%
import tempfile
from pathlib import Path

import numpy as np

from sensorsim.camera import CameraMounting
from sensorsim.config import RunConfig
from sensorsim.simulation import SENSED_COLUMNS, run_simulation, write_outputs
from sensorsim.synthetic import constant_turn_truth

truth = constant_turn_truth(duration=20.0)
cfg = RunConfig(camera=CameraMounting(T_full=[1.2, 0.0, 0.3], T_empty=[1.2, 0.0, 0.35]))
res = run_simulation(cfg, truth)
print(res.sensed.shape, res.gnss.shape, res.camera.shape)

# %%
err = res.sensed[:, 1:7] - np.column_stack([truth.f[5::5], truth.w[5::5]])
for name, e in zip(SENSED_COLUMNS[1:7], err.T):
    print(f"{name}: mean {e.mean():+.4f} std {e.std():.4f}")

# %%
with tempfile.TemporaryDirectory() as d:
    for p in write_outputs(res, d):
        print(Path(p).name, Path(p).stat().st_size, "bytes")
