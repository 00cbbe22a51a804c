# %% [markdown]
# # Searching detectors: generic versus exceptional measurements
#
# `maximize_delta` scans a coarse detector grid (under all 24 outcome
# assignments) and polishes the best point by coordinate descent. For the
# product, Bell and case (iii) bases no detector beats the entropy bound.

# %%
import math

from entcost import CanonicalParams, build_basis, maximize_delta, special_basis
from entcost.sweep import verify_special_cases

for name in ("product", "bell", "case_iii"):
    r = maximize_delta(special_basis(name))
    print(f"{name:9s} entropy bound={r.best.entropy_bound:.6f} best C_L={r.best.lower_bound:.6f} "
          f"delta={r.best.delta:.2e} positive={r.positive}")

# %%
pi = math.pi
r = maximize_delta(build_basis(CanonicalParams(a=pi / 8, c=pi / 8, u=pi / 2, x=pi / 8)))
print(f"generic   entropy bound={r.best.entropy_bound:.6f} best C_L={r.best.lower_bound:.6f} "
      f"delta={r.best.delta:.4f} positive={r.positive} ({r.evaluations} evaluations)")

# %% [markdown]
# The same holds for random local-unitary images of the exceptional bases.

# %%
for row in verify_special_cases(n_images=2):
    print(row)
