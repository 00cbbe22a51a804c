# %% [markdown]
# # Two-qubit orthonormal bases from eight angles
#
# Angles a, c, u, x live in [0, pi/2] and phases b, d, v, y in [0, 2pi).
# Every choice gives an orthonormal basis; its entropy bound is the mean
# entanglement of the four states.

# %%
import math

import numpy as np

from entcost import CanonicalParams, build_basis, entropy_bound, special_basis, validate_orthonormal
from entcost.linalg import random_unitary
from entcost.measurement import apply_local_unitary

pi = math.pi
examples = {
    "all zero (product)": CanonicalParams(),
    "Bell": CanonicalParams(a=pi / 4, c=pi / 4, u=pi / 2),
    "generic": CanonicalParams(a=pi / 8, c=pi / 8, u=pi / 2, x=pi / 8),
}
for name, p in examples.items():
    basis = build_basis(p)
    ok, dev = validate_orthonormal(basis)
    print(f"{name:20s} orthonormal={ok} (dev {dev:.1e})  entropy bound={entropy_bound(basis):.6f}")
    print(np.round(basis.matrix, 4))

# %% [markdown]
# Local unitaries on either qubit do not change the entropy bound.

# %%
rng = np.random.default_rng(1)
case_iii = special_basis("case_iii")
image = apply_local_unitary(case_iii, random_unitary(2, rng), random_unitary(2, rng))
print("case (iii):", entropy_bound(case_iii), " rotated:", entropy_bound(image))
