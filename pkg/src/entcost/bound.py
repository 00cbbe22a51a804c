"""Entanglement-production lower bound for a measurement/detector pair.

The four-qubit probe state is

    chi = 1/2 sum_i |psi_i>_AB |phi_i>_CD

with Alice holding A, C and Bob holding B, D. Measuring AB leaves CD in
|phi_i> with probability 1/4, so the measurement creates on average
mean_i E(phi_i) ebits across Alice:Bob, starting from E_{AC:BD}(chi). The
difference bounds the entanglement cost from below.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BasisError, DimsError
from .linalg import BipartiteSplit, StateVec, entropy_from_probs, entropy_of_entanglement, gram_spectrum, permute_subsystems
from .measurement import CanonicalParams, OrthoBasis, entropy_bound, state_entanglements, validate_orthonormal

AC_BD = BipartiteSplit((0, 1), (2, 3))  # after regrouping ABCD -> ACBD


@dataclass(frozen=True)
class BoundReport:
    entropy_bound: float
    avg_detector_entanglement: float
    cut_entanglement: float
    lower_bound: float
    delta: float
    detector: OrthoBasis
    detector_params: CanonicalParams | None = None
    detector_perm: tuple[int, ...] | None = None


def _check_basis(basis, role):
    if not isinstance(basis, OrthoBasis):
        raise BasisError(f"{role} must be an OrthoBasis")
    ok, dev = validate_orthonormal(basis)
    if not ok:
        raise BasisError(f"{role} basis is not orthonormal (deviation {dev:.3g})")


def chi_state(meas: OrthoBasis, det: OrthoBasis) -> StateVec:
    """Probe state on qubits A, B, C, D (in that order).

    Each amplitude is an exactly rounded sum over the four outcome terms, so
    relabeling the (psi_i, phi_i) pairs gives a bitwise-identical state.
    """
    _check_basis(meas, "measurement")
    _check_basis(det, "detector")
    terms = np.einsum("ia,ic->iac", meas.matrix, det.matrix).reshape(4, 16)
    amps = [complex(math.fsum(t.real), math.fsum(t.imag)) for t in terms.T]
    return StateVec(0.5 * np.array(amps), (2, 2, 2, 2))


def cut_entanglement(chi: StateVec) -> float:
    """Entanglement of ``chi`` across Alice (A, C) : Bob (B, D)."""
    if chi.dims != (2, 2, 2, 2):
        raise DimsError(f"probe state must have dims (2, 2, 2, 2), got {chi.dims}")
    return entropy_of_entanglement(permute_subsystems(chi, (0, 2, 1, 3)), AC_BD)


def lower_bound(meas: OrthoBasis, det: OrthoBasis) -> BoundReport:
    cut = cut_entanglement(chi_state(meas, det))
    e_cd = math.fsum(state_entanglements(det.matrix).tolist()) / 4
    eb = entropy_bound(meas)
    c_l = e_cd - cut
    return BoundReport(
        entropy_bound=eb,
        avg_detector_entanglement=e_cd,
        cut_entanglement=cut,
        lower_bound=c_l,
        delta=c_l - eb,
        detector=det,
        detector_params=det.params,
    )


# -- batched kernels for the search -------------------------------------------

def cut_entropies(meas: np.ndarray, dets: np.ndarray) -> np.ndarray:
    """AC:BD entanglement for one measurement matrix against a stack of
    detector matrices of shape ``(..., 4, 4)``."""
    chi = 0.5 * np.einsum("ia,...ic->...ac", meas, dets)
    lead = chi.shape[:-2]
    m = chi.reshape(lead + (2, 2, 2, 2)).swapaxes(-3, -2).reshape(lead + (4, 4))
    return entropy_from_probs(gram_spectrum(m))


def avg_entanglements(dets: np.ndarray) -> np.ndarray:
    """Mean C:D entanglement of each detector basis in a stack."""
    return state_entanglements(dets).mean(axis=-1)
