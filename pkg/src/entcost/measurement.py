"""Two-qubit orthonormal bases: the eight-angle canonical form, named special
bases, local-unitary images and the entropy bound.

A basis is stored as a 4 x 4 complex matrix whose rows are the states, in the
|00>, |01>, |10>, |11> amplitude order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Sequence

import numpy as np

from .errors import BasisError, BasisNameError, ParamError, UnitaryError
from .linalg import StateVec, entropy_from_probs, gram_spectrum, is_unitary

TOL_ORTHO = 1e-10
HALF_PI = math.pi / 2
TWO_PI = 2 * math.pi

ANGLE_FIELDS = ("a", "c", "u", "x")
PHASE_FIELDS = ("b", "d", "v", "y")
# 1 for angles in [0, pi/2], 0 for phases in [0, 2pi); follows field order a..y
IS_ANGLE = np.array([1, 0, 1, 0, 1, 0, 1, 0], dtype=bool)


def _wrap_phase(t: float) -> float:
    t = math.fmod(t, TWO_PI)
    if t < 0:
        t += TWO_PI
    return 0.0 if t >= TWO_PI else t


@dataclass(frozen=True)
class CanonicalParams:
    """Eight real parameters of a two-qubit orthonormal basis.

    ``a, c, u, x`` are angles in [0, pi/2]; ``b, d, v, y`` are phases in
    [0, 2pi). The same parameterization is used for detector bases.
    """

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0
    u: float = 0.0
    v: float = 0.0
    x: float = 0.0
    y: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            val = float(getattr(self, f.name))
            object.__setattr__(self, f.name, val)
            if f.name in ANGLE_FIELDS:
                ok = 0.0 <= val <= HALF_PI
            else:
                ok = 0.0 <= val < TWO_PI
            if not ok:
                raise ParamError(f"{f.name}={val!r} is outside its allowed range")

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d, self.u, self.v, self.x, self.y])

    @classmethod
    def from_array(cls, arr: Sequence[float], wrap: bool = False) -> CanonicalParams:
        """Build from an 8-vector. With ``wrap``, phases are reduced mod 2pi
        and angles clipped to [0, pi/2] instead of raising."""
        vals = [float(t) for t in arr]
        if len(vals) != 8:
            raise ParamError(f"expected 8 parameters, got {len(vals)}")
        if wrap:
            vals = [min(max(t, 0.0), HALF_PI) if ang else _wrap_phase(t)
                    for t, ang in zip(vals, IS_ANGLE)]
        return cls(*vals)

    def conjugate(self) -> CanonicalParams:
        """Parameters of the complex-conjugate basis (all phases negated)."""
        return CanonicalParams.from_array(np.where(IS_ANGLE, 1, -1) * self.as_array(), wrap=True)


def basis_matrix(params: np.ndarray) -> np.ndarray:
    """Vectorized canonical form: ``(..., 8)`` parameters -> ``(..., 4, 4)`` bases.

    Row i holds the amplitudes of the i-th basis state. No range checks.
    """
    p = np.asarray(params, dtype=float)
    a, b, c, d, u, v, x, y = np.moveaxis(p, -1, 0)
    zero = np.zeros(a.shape, dtype=complex)
    ca, sa, cc, sc = np.cos(a), np.sin(a), np.cos(c), np.sin(c)
    cu, su, cx, sx = np.cos(u), np.sin(u), np.cos(x), np.sin(x)
    eb, ed, ev, ey = np.exp(1j * b), np.exp(1j * d), np.exp(1j * v), np.exp(1j * y)

    # second qubit pair |0'> = cu|0> + e^{iv} su|1>, |1'> = e^{-iv} su|0> - cu|1>
    psi1 = np.stack([ca + zero, zero, eb * sa * cu, eb * sa * ev * su], axis=-1)
    psi2 = np.stack([zero, cc + zero, ed * sc * su / ev, -ed * sc * cu], axis=-1)
    perp1 = np.stack([sa / eb, zero, -ca * cu + zero, -ca * ev * su], axis=-1)
    perp2 = np.stack([zero, sc / ed, -cc * su / ev, cc * cu + zero], axis=-1)
    cx, sx, ey = cx[..., None], sx[..., None], ey[..., None]
    psi3 = cx * perp1 + ey * sx * perp2
    psi4 = sx / ey * perp1 - cx * perp2
    return np.stack([psi1, psi2, psi3, psi4], axis=-2)


def gram_deviation(m: np.ndarray) -> float:
    m = np.asarray(m)
    return float(np.abs(m.conj() @ m.T - np.eye(m.shape[0])).max())


class OrthoBasis:
    """Four orthonormal two-qubit states.

    Parameters
    ----------
    states : 4 x 4 complex array or sequence of 4 ``StateVec``
        Rows (or vectors) are the basis states in outcome order.
    params : CanonicalParams, optional
        Set when the basis was produced by ``build_basis``.
    check : bool
        Raise ``BasisError`` if the states are not orthonormal.
    """

    __slots__ = ("matrix", "params")

    def __init__(self, states, params: CanonicalParams | None = None, check: bool = True):
        if isinstance(states, np.ndarray):
            m = np.array(states, dtype=complex)
        else:
            states = list(states)
            if any(getattr(s, "dims", (2, 2)) != (2, 2) for s in states):
                raise BasisError("basis states must be two-qubit states")
            m = np.array([getattr(s, "amplitudes", s) for s in states], dtype=complex)
        if m.shape != (4, 4):
            raise BasisError(f"need 4 two-qubit states, got array of shape {m.shape}")
        if check:
            dev = gram_deviation(m)
            if dev >= TOL_ORTHO:
                raise BasisError(f"states are not orthonormal (max Gram deviation {dev:.3g})")
        m.flags.writeable = False
        self.matrix = m
        self.params = params

    @property
    def states(self) -> tuple[StateVec, ...]:
        return tuple(StateVec(row, (2, 2)) for row in self.matrix)

    def __getitem__(self, i):
        return StateVec(self.matrix[i], (2, 2))

    def __len__(self):
        return 4

    def permuted(self, perm: Sequence[int]) -> OrthoBasis:
        """Basis with states reordered: new state k is old state ``perm[k]``."""
        return OrthoBasis(self.matrix[list(perm)], check=False)

    def conjugate(self) -> OrthoBasis:
        params = self.params.conjugate() if self.params is not None else None
        return OrthoBasis(self.matrix.conj(), params, check=False)

    def __repr__(self):
        return f"OrthoBasis(params={self.params}, rows={np.round(self.matrix, 6).tolist()})"


def build_basis(p: CanonicalParams) -> OrthoBasis:
    if not isinstance(p, CanonicalParams):
        p = CanonicalParams.from_array(p)
    return OrthoBasis(basis_matrix(p.as_array()), params=p, check=False)


def validate_orthonormal(basis, tol: float = TOL_ORTHO) -> tuple[bool, float]:
    """Check the Gram matrix against the identity.

    Returns ``(ok, max_deviation)``; accepts an ``OrthoBasis`` or any four
    two-qubit states (which need not form a basis).
    """
    if isinstance(basis, OrthoBasis):
        m = basis.matrix
    else:
        m = np.array([getattr(s, "amplitudes", s) for s in basis], dtype=complex)
    dev = gram_deviation(m)
    return dev < tol, dev


def state_entanglements(m: np.ndarray) -> np.ndarray:
    """Entanglement (ebits) of each row of a stack of two-qubit bases."""
    m = np.asarray(m)
    return entropy_from_probs(gram_spectrum(m.reshape(m.shape[:-1] + (2, 2))))


def entropy_bound(basis: OrthoBasis) -> float:
    """Average entanglement of the basis states across the A:B cut."""
    return math.fsum(state_entanglements(basis.matrix).tolist()) / 4


_S = 1 / math.sqrt(2)
_SPECIAL = {
    "product": np.eye(4, dtype=complex),
    "case_iii": np.array([[_S, 0, 0, _S], [_S, 0, 0, -_S], [0, 1, 0, 0], [0, 0, 1, 0]], dtype=complex),
}
BELL_PARAMS = CanonicalParams(a=math.pi / 4, c=math.pi / 4, u=HALF_PI)


def special_basis(name: str) -> OrthoBasis:
    """Named exceptional bases: ``product``, ``bell`` or ``case_iii``.

    ``bell`` is the canonical-form Bell basis
    {Phi+, Psi+, Phi-, -Psi-}; ``case_iii`` is {Phi+, Phi-, |01>, |10>}.
    """
    if name == "bell":
        return build_basis(BELL_PARAMS)
    if name not in _SPECIAL:
        raise BasisNameError(f"unknown special basis {name!r}; choose product, bell or case_iii")
    return OrthoBasis(_SPECIAL[name])


def apply_local_unitary(basis: OrthoBasis, u_a: np.ndarray, u_b: np.ndarray) -> OrthoBasis:
    """Map every state to (U_A x U_B)|psi>."""
    for u in (u_a, u_b):
        if np.shape(u) != (2, 2) or not is_unitary(u, TOL_ORTHO):
            raise UnitaryError("local operations must be 2 x 2 unitaries")
    w = np.kron(np.asarray(u_a, dtype=complex), np.asarray(u_b, dtype=complex))
    return OrthoBasis(basis.matrix @ w.T, check=False)
