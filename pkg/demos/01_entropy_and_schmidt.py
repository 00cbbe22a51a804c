# %% [markdown]
# # Pure-state entanglement in ebits
#
# The entanglement of a bipartite pure state is the entropy (base 2) of its
# squared Schmidt coefficients. For two qubits the same number follows from the
# concurrence, which gives a convenient cross-check.

# %%
import math

import numpy as np

from entcost import BipartiteSplit, StateVec, concurrence, entropy_of_entanglement, schmidt_spectrum
from entcost.linalg import entropy_from_concurrence, random_state

s = 1 / math.sqrt(2)
phi_plus = StateVec([s, 0, 0, s], (2, 2))
tilted = StateVec([math.cos(math.pi / 8), 0, 0, math.sin(math.pi / 8)], (2, 2))
cut = BipartiteSplit((0,), (1,))

for name, psi in [("|00>", StateVec.ket("00")), ("Phi+", phi_plus), ("tilted", tilted)]:
    print(f"{name:7s} spectrum={schmidt_spectrum(psi, cut).probabilities.round(6)} "
          f"E={entropy_of_entanglement(psi, cut):.6f} C={concurrence(psi):.6f}")

# %% [markdown]
# Random states: the two routes agree to rounding.

# %%
rng = np.random.default_rng(0)
errs = []
for _ in range(1000):
    psi = random_state([2, 2], rng)
    errs.append(abs(entropy_of_entanglement(psi) - entropy_from_concurrence(concurrence(psi))))
print("max disagreement over 1000 states:", max(errs))
