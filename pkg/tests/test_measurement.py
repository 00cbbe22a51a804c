import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entcost.errors import BasisError, BasisNameError, ParamError, UnitaryError
from entcost.linalg import TOL_EQ, StateVec, random_unitary
from entcost.measurement import (
    TOL_ORTHO,
    CanonicalParams,
    OrthoBasis,
    apply_local_unitary,
    basis_matrix,
    build_basis,
    entropy_bound,
    special_basis,
    validate_orthonormal,
)

from oracles import canonical_rows, two_qubit_entropy

S = 1 / math.sqrt(2)
HALF_PI, TWO_PI = math.pi / 2, 2 * math.pi

angle = st.floats(0, HALF_PI)
phase = st.floats(0, TWO_PI, exclude_max=True)
params = st.builds(CanonicalParams, a=angle, b=phase, c=angle, d=phase, u=angle, v=phase, x=angle, y=phase)


def random_params(rng):
    return CanonicalParams(*(rng.uniform(0, HALF_PI) if k % 2 == 0 else rng.uniform(0, TWO_PI) for k in range(8)))


class TestCanonicalParams:
    @pytest.mark.parametrize("field,value", [("a", -0.1), ("c", 1.6), ("b", TWO_PI), ("y", -1e-9)])
    def test_out_of_range(self, field, value):
        with pytest.raises(ParamError):
            CanonicalParams(**{field: value})

    def test_endpoints(self):
        CanonicalParams(a=HALF_PI, x=HALF_PI, b=0.0)

    def test_wrap(self):
        p = CanonicalParams.from_array([2.0, -0.5, -0.1, 7.0, 0, 0, 0, -1e-20], wrap=True)
        assert p.a == HALF_PI and p.c == 0.0
        assert p.b == pytest.approx(TWO_PI - 0.5) and p.d == pytest.approx(7.0 - TWO_PI)
        assert 0 <= p.y < TWO_PI

    def test_conjugate_gives_conjugate_basis(self):
        p = random_params(np.random.default_rng(4))
        np.testing.assert_allclose(build_basis(p.conjugate()).matrix, build_basis(p).matrix.conj(), atol=1e-14)


class TestBuildBasis:
    def test_all_zero_is_product(self):
        m = build_basis(CanonicalParams()).matrix
        # |00>, |01>, -|10>, -|11>: the product basis with signs from the canonical form
        np.testing.assert_array_equal(m, np.diag([1, 1, -1, -1]))
        assert entropy_bound(build_basis(CanonicalParams())) == 0.0

    def test_bell_substitution(self):
        m = build_basis(CanonicalParams(a=math.pi / 4, c=math.pi / 4, u=HALF_PI)).matrix
        expected = [[S, 0, 0, S], [0, S, S, 0], [S, 0, 0, -S], [0, -S, S, 0]]
        np.testing.assert_allclose(m, expected, atol=1e-15)

    @given(params)
    @settings(max_examples=200, deadline=None)
    def test_matches_scalar_oracle(self, p):
        np.testing.assert_allclose(build_basis(p).matrix, canonical_rows(*p.as_array()), atol=1e-14)

    def test_orthonormal_over_many_draws(self):
        rng = np.random.default_rng(5)
        scale = np.array([HALF_PI, TWO_PI] * 4)
        ms = basis_matrix(rng.uniform(size=(10_000, 8)) * scale)
        gram = ms.conj() @ np.swapaxes(ms, -1, -2)
        assert np.abs(gram - np.eye(4)).max() < TOL_ORTHO

    def test_deterministic(self):
        p = random_params(np.random.default_rng(6))
        assert build_basis(p).matrix.tobytes() == build_basis(p).matrix.tobytes()


class TestValidate:
    def test_bell(self):
        ok, dev = validate_orthonormal(special_basis("bell"))
        assert ok and dev < 1e-12

    def test_repeated_state(self):
        ok, dev = validate_orthonormal([StateVec.ket(s) for s in ("00", "00", "01", "10")])
        assert not ok and dev == pytest.approx(1.0)

    def test_constructor_rejects_non_basis(self):
        with pytest.raises(BasisError):
            OrthoBasis([StateVec.ket(s) for s in ("00", "00", "01", "10")])


class TestEntropyBound:
    def test_product(self):
        assert entropy_bound(special_basis("product")) == 0.0

    def test_bell(self):
        assert entropy_bound(special_basis("bell")) == pytest.approx(1.0, abs=1e-12)

    def test_case_iii(self):
        assert abs(entropy_bound(special_basis("case_iii")) - 0.5) < 1e-12

    def test_agrees_with_concurrence_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            p = random_params(rng)
            oracle = sum(two_qubit_entropy(r) for r in canonical_rows(*p.as_array())) / 4
            assert abs(entropy_bound(build_basis(p)) - oracle) < TOL_EQ

    def test_permutation_exact(self):
        basis = build_basis(random_params(np.random.default_rng(8)))
        ref = entropy_bound(basis)
        for perm in itertools.permutations(range(4)):
            assert entropy_bound(basis.permuted(perm)) == ref


class TestSpecialBasis:
    def test_product(self):
        np.testing.assert_array_equal(special_basis("product").matrix, np.eye(4))

    def test_bell_states_maximally_entangled(self):
        assert all(two_qubit_entropy(r) == pytest.approx(1.0) for r in special_basis("bell").matrix)

    def test_case_iii_listing(self):
        np.testing.assert_allclose(special_basis("case_iii").matrix,
                                   [[S, 0, 0, S], [S, 0, 0, -S], [0, 1, 0, 0], [0, 0, 1, 0]])

    def test_unknown(self):
        with pytest.raises(BasisNameError):
            special_basis("ghz")


class TestLocalUnitary:
    def test_identity(self):
        b = special_basis("case_iii")
        assert np.array_equal(apply_local_unitary(b, np.eye(2), np.eye(2)).matrix, b.matrix)

    def test_product_stays_product(self):
        rng = np.random.default_rng(9)
        b = apply_local_unitary(special_basis("product"), random_unitary(2, rng), random_unitary(2, rng))
        assert entropy_bound(b) < TOL_EQ

    def test_rejects_non_unitary(self):
        with pytest.raises(UnitaryError):
            apply_local_unitary(special_basis("bell"), np.array([[1, 1], [0, 1]]), np.eye(2))

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=50, deadline=None)
    def test_entropy_bound_invariant(self, seed):
        rng = np.random.default_rng(seed)
        b = build_basis(random_params(rng))
        image = apply_local_unitary(b, random_unitary(2, rng), random_unitary(2, rng))
        assert validate_orthonormal(image)[0]
        assert abs(entropy_bound(image) - entropy_bound(b)) < TOL_EQ
