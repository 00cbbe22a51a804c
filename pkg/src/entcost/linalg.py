"""Dense pure-state linear algebra: tensor products, subsystem permutations,
Schmidt spectra and entanglement entropy.

Amplitudes are stored row-major with subsystem 0 varying slowest, so the
two-qubit basis order is |00>, |01>, |10>, |11>. Every module relies on this
convention.

The batched helpers (``gram_spectrum``, ``entropy_from_probs``) operate on
stacks of matrices and are what the detector search uses in its inner loop;
the ``StateVec`` functions are thin wrappers over them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimsError, PermError, SplitError, StateError

TOL_NORM = 1e-10
TOL_EQ = 1e-9


@dataclass(frozen=True, eq=False)
class StateVec:
    """Normalized pure state on a tensor-factored Hilbert space.

    Parameters
    ----------
    amplitudes : array_like of complex
        Flat amplitude vector, row-major over ``dims``.
    dims : sequence of int
        Local dimension of each subsystem; their product must equal the
        number of amplitudes.
    """

    amplitudes: np.ndarray
    dims: tuple[int, ...] = field(default=())

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        dims = tuple(int(d) for d in self.dims) if len(self.dims) else (amps.size,)
        if math.prod(dims) != amps.size:
            raise StateError(f"dims {dims} do not match {amps.size} amplitudes")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > TOL_NORM:
            raise StateError(f"state is not normalized (norm^2 = {norm2!r})")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)

    @classmethod
    def ket(cls, label: str) -> StateVec:
        """Computational basis state of qubits, e.g. ``StateVec.ket("01")``."""
        amps = np.zeros(2 ** len(label), dtype=complex)
        amps[int(label, 2)] = 1.0
        return cls(amps, (2,) * len(label))

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per subsystem."""
        return self.amplitudes.reshape(self.dims)

    def __repr__(self):
        return f"StateVec(dims={self.dims}, amplitudes={np.round(self.amplitudes, 6).tolist()})"


@dataclass(frozen=True)
class BipartiteSplit:
    """Partition of subsystem indices into a left and a right group."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(int(i) for i in self.left))
        object.__setattr__(self, "right", tuple(int(i) for i in self.right))
        both = self.left + self.right
        if not self.left or not self.right or sorted(both) != list(range(len(both))):
            raise SplitError(f"{self.left} | {self.right} is not a partition of 0..{len(both) - 1}")

    @classmethod
    def of(cls, left: Sequence[int], n: int) -> BipartiteSplit:
        left = tuple(left)
        return cls(left, tuple(i for i in range(n) if i not in left))


@dataclass(frozen=True, eq=False)
class SchmidtSpectrum:
    """Squared Schmidt coefficients, non-increasing, summing to one."""

    probabilities: np.ndarray

    def __len__(self):
        return len(self.probabilities)

    def __iter__(self):
        return iter(self.probabilities)


# -- batched kernels ----------------------------------------------------------

def gram_spectrum(m: np.ndarray) -> np.ndarray:
    """Squared singular values of a stack of matrices, non-increasing.

    Computed as the eigenvalues of the smaller Gram matrix ``m m^H`` (or
    ``m^H m``), clamped to [0, 1].
    """
    m = np.asarray(m)
    mh = np.conj(np.swapaxes(m, -1, -2))
    g = m @ mh if m.shape[-2] <= m.shape[-1] else mh @ m
    p = np.linalg.eigvalsh(g)[..., ::-1]
    return np.clip(p, 0.0, 1.0)


def entropy_from_probs(p: np.ndarray) -> np.ndarray:
    """Shannon entropy in bits along the last axis, with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float)
    safe = np.where(p > 0.0, p, 1.0)
    terms = np.where(p > 0.0, -p * np.log2(safe), 0.0)
    return terms.sum(axis=-1) + 0.0


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


# -- state operations ----------------------------------------------------------

def inner_product(x: StateVec, y: StateVec) -> complex:
    """<x|y>, conjugate-linear in ``x``."""
    if x.dims != y.dims:
        raise DimsError(f"dims differ: {x.dims} vs {y.dims}")
    return complex(np.vdot(x.amplitudes, y.amplitudes))


def tensor(x: StateVec, y: StateVec) -> StateVec:
    return StateVec(np.kron(x.amplitudes, y.amplitudes), x.dims + y.dims)


def permute_subsystems(x: StateVec, perm: Sequence[int]) -> StateVec:
    """Reorder subsystems so that new subsystem k is old subsystem ``perm[k]``."""
    perm = tuple(int(i) for i in perm)
    if sorted(perm) != list(range(x.n_subsystems)):
        raise PermError(f"{perm} is not a permutation of {x.n_subsystems} subsystems")
    amps = np.transpose(x.tensor(), perm).reshape(-1)
    return StateVec(amps, tuple(x.dims[i] for i in perm))


def _split_matrix(x: StateVec, split: BipartiteSplit) -> np.ndarray:
    if len(split.left) + len(split.right) != x.n_subsystems:
        raise SplitError(f"split {split} does not cover {x.n_subsystems} subsystems")
    order = split.left + split.right
    dl = math.prod(x.dims[i] for i in split.left)
    return np.transpose(x.tensor(), order).reshape(dl, -1)


def schmidt_spectrum(x: StateVec, split: BipartiteSplit) -> SchmidtSpectrum:
    p = gram_spectrum(_split_matrix(x, split))
    p.flags.writeable = False
    return SchmidtSpectrum(p)


def entropy_of_entanglement(x: StateVec, split: BipartiteSplit | None = None) -> float:
    """Entanglement entropy (ebits) of ``x`` across ``split``.

    With no split given, ``x`` must be bipartite and the cut is between its
    two subsystems.
    """
    if split is None:
        if x.n_subsystems != 2:
            raise DimsError("a split is required for states with more than two subsystems")
        split = BipartiteSplit((0,), (1,))
    return float(entropy_from_probs(schmidt_spectrum(x, split).probabilities))


def concurrence(x: StateVec) -> float:
    if x.dims != (2, 2):
        raise DimsError(f"concurrence needs a two-qubit state, got dims {x.dims}")
    a00, a01, a10, a11 = x.amplitudes
    return min(1.0, float(2.0 * abs(a00 * a11 - a01 * a10)))


def entropy_from_concurrence(c: float) -> float:
    """Entanglement of a pure two-qubit state with concurrence ``c``."""
    return binary_entropy((1.0 + math.sqrt(max(0.0, 1.0 - c * c))) / 2.0)


def reduced_density_matrix(x: StateVec, keep: Sequence[int]) -> np.ndarray:
    """Density matrix of the subsystems ``keep`` (in increasing order)."""
    keep = sorted(int(i) for i in keep)
    m = _split_matrix(x, BipartiteSplit.of(keep, x.n_subsystems))
    return m @ m.conj().T


# -- random objects -------------------------------------------------------------

def random_state(dims: Sequence[int], rng: np.random.Generator) -> StateVec:
    n = math.prod(dims)
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return StateVec(v / np.linalg.norm(v), tuple(dims))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random n x n unitary (QR of a complex Gaussian matrix, phases fixed)."""
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max() < tol)
