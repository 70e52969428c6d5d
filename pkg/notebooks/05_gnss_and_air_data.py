# %% [markdown]
# # GNSS receiver and air data
#
# The GNSS position error is white noise plus a slowly wandering ionospheric
# offset, linearly interpolated between nodes one window apart. Air data
# channels are truth plus a per-flight offset and white noise.

# %%
import math

import numpy as np

from sensorsim.air_data import AirData, AirDataSpec, density_from_p_T, tas_from_pressures, total_pressure_from_tas
from sensorsim.gnss import GnssReceiver, GnssSpec
from sensorsim.seedstream import gaussian_stream

x0 = np.array([math.radians(-3.7), math.radians(40.4), 1500.0])
rx = GnssReceiver(GnssSpec.baseline(), gaussian_stream(3))
ion = []
for _ in range(600):
    rx.measure(x0, np.zeros(3))
    ion.append(rx.last_ion_error.copy())
ion = np.array(ion)
print("ionospheric offset at 0, 300, 599 s:", ion[[0, 300, 599]].round(2))

# %%
air = AirData(AirDataSpec.baseline(), {c: gaussian_stream(10 + k) for k, c in enumerate(("osp", "oat", "tas", "aoa", "aos"))})
print(air.offsets)
print(air.measure(84556.0, 278.4, 50.0, math.radians(2.0), 0.0))

# %% [markdown]
# The compressible Pitot relation and its inverse.

# %%
rho = density_from_p_T(101325.0, 288.15)
for v in (1.0, 30.0, 120.0):
    p_t = total_pressure_from_tas(101325.0, rho, v)
    print(v, round(p_t - 101325.0, 3), tas_from_pressures(101325.0, p_t, rho))
