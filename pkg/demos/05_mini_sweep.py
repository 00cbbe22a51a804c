# %% [markdown]
# # A small sweep and its scatter plot
#
# Sample measurements at random, search detectors for each, and plot the best
# bound against the entropy bound. Points sit on or above the line y = x.
# The full desk-scale grid (20736 measurements) runs the same way via
# `entcost sweep`, at roughly two seconds per measurement on one core.

# %%
import math
from pathlib import Path

from entcost import GridSpec
from entcost.sweep import read_csv, run_sweep

out = Path(__file__).with_name("out")
meas = GridSpec(math.pi / 4, math.pi / 2, math.pi / 4, mode="random", n_samples=40, seed=11)
det = GridSpec(math.pi / 2, math.pi / 2, math.pi / 2, refine_iters=30)
summary = run_sweep(meas, det, workers=1, out=out / "mini_sweep.csv", svg=out / "mini_sweep.svg")
print(summary)

# %%
records = read_csv(out / "mini_sweep.csv")
print("smallest gap:", min(r.delta for r in records))
print("points below the entropy bound:", sum(r.best_CL < r.entropy_bound - 1e-9 for r in records))
