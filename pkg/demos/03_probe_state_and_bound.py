# %% [markdown]
# # The production bound for one detector choice
#
# Pair each measurement state psi_i with a detector state phi_i and form
# chi = 1/2 sum_i psi_i (x) phi_i on qubits A, B, C, D. The bound is the mean
# detector entanglement minus the entanglement of chi across (A, C) : (B, D).

# %%
import math

import numpy as np

from entcost import CanonicalParams, build_basis, chi_state, lower_bound
from entcost.linalg import reduced_density_matrix

pi = math.pi
meas = build_basis(CanonicalParams(a=pi / 8, c=pi / 8, u=pi / 2, x=pi / 8))

# %% [markdown]
# Detectors equal to the complex conjugate of the measurement make chi a pair
# of Bell states shared across the cut, so the bound equals the entropy bound.

# %%
r = lower_bound(meas, meas.conjugate())
print(f"conjugate detectors: E_CD={r.avg_detector_entanglement:.6f} E_cut={r.cut_entanglement:.2e} "
      f"C_L={r.lower_bound:.6f} delta={r.delta:.2e}")

# %% [markdown]
# Whatever detectors are used, the AB marginal of chi is maximally mixed.

# %%
det = build_basis(CanonicalParams(0.3, 1.0, 1.2, 4.0, 0.8, 2.0, 0.6, 5.0))
chi = chi_state(meas, det)
print("AB marginal eigenvalues:", np.linalg.eigvalsh(reduced_density_matrix(chi, [0, 1])).round(12))
r = lower_bound(meas, det)
print(f"arbitrary detectors: C_L={r.lower_bound:.6f} delta={r.delta:.6f}")
