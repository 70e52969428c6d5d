# %% [markdown]
# # Single-axis error model and its closed forms
#
# One axis carries a turn-on bias, a saturated random-walk drift and white
# noise. The mean and variance of the error, its integral and its double
# integral are known in closed form, and a Monte-Carlo run checks them.

# %%
import numpy as np

from sensorsim.montecarlo import compare_to_theory, monte_carlo_single_axis, theory_table
from sensorsim.single_axis import SingleAxisSpec, theory_first_integral_stats

spec = SingleAxisSpec(B0=1.6e-2, sigma_u=4e-3, sigma_v=1e-3, dt=0.01).unclamped()
t = np.arange(1, 11) * 100.0

# %%
th = theory_table(spec, t, f0=3.0, g0=1.5)
for q in ("error", "first", "second"):
    print(q, np.sqrt(th[q]["variance"][-1]).round(4))

# %% [markdown]
# The drift term dominates the first integral at long times.

# %%
stats = theory_first_integral_stats(spec, 3.0, 1000.0)
print({k: round(v / stats.variance, 3) for k, v in stats.components.items()})

# %%
table = monte_carlo_single_axis(spec, runs=200, horizon=1000.0, checkpoints=t, f0=3.0, g0=1.5)
report = compare_to_theory(table, spec)
for q in ("error", "first", "second"):
    print(q, "variance in band:", report.variance_passes(q), "/ 10", "std(1000 s):", table.std(q)[-1].round(4))
