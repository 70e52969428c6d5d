# %% [markdown]
# # Seeds and Gaussian streams
#
# A master seed expands into a catalog of aircraft and flight seeds. Each pair
# then expands into one seed per sensor, so every random quantity has its own
# reproducible stream.

# %%
import numpy as np

from sensorsim.seedstream import build_catalog, derive_sensor_seeds, gaussian_stream

catalog = build_catalog(master_seed=1, capacity=4)
for i, (a, f) in enumerate(zip(catalog.aircraft_seeds, catalog.flight_seeds)):
    print(i, a, f)

# %% [markdown]
# A small catalog is a prefix of a larger one, so adding flights later never
# changes the seeds of earlier ones.

# %%
big = build_catalog(master_seed=1, capacity=64)
print(big.aircraft_seeds[:4] == catalog.aircraft_seeds)

# %%
seeds = derive_sensor_seeds(*catalog.pair(0, 1))
print(seeds.fixed)
print(seeds.run)

# %% [markdown]
# Streams are independent of how draws are batched.

# %%
a = gaussian_stream(seeds.run["acc"]).normals(10)
s = gaussian_stream(seeds.run["acc"])
b = np.concatenate([s.normals(3), s.normals(7)])
print(np.array_equal(a, b), a.mean().round(3), a.std().round(3))
