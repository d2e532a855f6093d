from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f4solv.errors import FrameError, MapError
from f4solv.flags import enumerate_basis
from f4solv.models import ambiguity_map
from f4solv.operators import SecondOrderOp, op_matrix
from f4solv.poly import MPoly, VarMap

T1 = MPoly.variable("t", 0)
T3 = MPoly.variable("t", 1)


def fractions():
    return st.builds(
        F,
        st.integers(min_value=-5, max_value=5),
        st.integers(min_value=1, max_value=3),
    )


def polys():
    return st.dictionaries(
        st.tuples(*[st.integers(min_value=0, max_value=2)] * 4),
        fractions(),
        max_size=4,
    ).map(lambda terms: MPoly("t", terms))


class TestApply:
    def test_annihilates_constants(self, rational_op):
        assert rational_op.apply(MPoly.one("t")).is_zero()

    def test_first_invariant_image(self, rational_op, rational_params):
        nu, mu, w = rational_params.nu, rational_params.mu, rational_params.omega
        expected = 2 * w * T1 + MPoly.constant("t", 24 * (nu + mu + F(1, 6)))
        assert rational_op.apply(T1) == expected

    def test_degree_three_invariant_image(self, rational_op, rational_params):
        nu, mu, w = rational_params.nu, rational_params.mu, rational_params.omega
        expected = 6 * w * T3 - 2 * (nu + mu / 2 + F(1, 4)) * T1**2
        assert rational_op.apply(T3) == expected

    def test_frame_mismatch(self, rational_op):
        with pytest.raises(FrameError):
            rational_op.apply(MPoly.variable("tau", 0))

    def test_mixed_entries_act_twice(self):
        # d^2/dt1 dt3 with unit coefficient applied to t1*t3 gives 2
        op = SecondOrderOp("t", {(1, 3): MPoly.one("t")}, {})
        assert op.apply(T1 * T3) == MPoly.constant("t", 2)
        op_diag = SecondOrderOp("t", {(1, 1): MPoly.one("t")}, {})
        assert op_diag.apply(T1**2) == MPoly.constant("t", 2)

    @settings(max_examples=25)
    @given(p=polys(), q=polys(), a=fractions(), b=fractions())
    def test_linearity(self, rational_op, p, q, a, b):
        lhs = rational_op.apply(a * p + b * q)
        rhs = a * rational_op.apply(p) + b * rational_op.apply(q)
        assert lhs == rhs


class TestMatrix:
    def test_level_one_matrix(self, rational_op, rational_params):
        nu, mu, w = rational_params.nu, rational_params.mu, rational_params.omega
        basis = enumerate_basis((1, 2, 2, 3), 1)
        result = op_matrix(rational_op, basis)
        assert result.closed
        m = result.matrix
        assert m.data == [[0, 24 * (nu + mu + F(1, 6))], [0, 2 * w]]

    def test_zero_operator_matrix(self):
        op = SecondOrderOp("t", {}, {})
        basis = enumerate_basis((1, 2, 2, 3), 3)
        result = op_matrix(op, basis)
        assert result.closed
        assert all(v == 0 for row in result.matrix.data for v in row)

    def test_non_closure_witnessed_not_raised(self, rational_op):
        basis = enumerate_basis((1, 1, 1, 1), 2)
        result = op_matrix(rational_op, basis)
        assert not result.closed
        source, escaped, coeff = result.witness
        assert coeff != 0
        # lowest-grade witness: every earlier basis monomial stays inside
        idx = basis.monomials.index(source)
        for m in basis.monomials[:idx]:
            image = rational_op.apply(MPoly.monomial("t", m))
            assert all(exp in basis.index() for exp in image.terms)

    def test_matrix_reconstructs_images(self, rational_op):
        basis = enumerate_basis((1, 2, 2, 3), 4)
        result = op_matrix(rational_op, basis)
        for j, mono in enumerate(basis.monomials):
            rebuilt = MPoly(
                "t",
                {
                    basis.monomials[i]: result.matrix.data[i][j]
                    for i in range(len(basis))
                },
            )
            assert rebuilt == rational_op.apply(MPoly.monomial("t", mono))

    @pytest.mark.parametrize("level", range(9))
    def test_closure_on_every_level_rational(self, rational_op, level):
        basis = enumerate_basis((1, 2, 2, 3), level)
        assert op_matrix(rational_op, basis).closed

    @pytest.mark.parametrize("level", range(9))
    def test_closure_on_every_level_trig(self, trig_op, level):
        basis = enumerate_basis((1, 2, 2, 3), level, frame="tau")
        assert op_matrix(trig_op, basis).closed


class TestChangeVariables:
    def test_identity_change_is_noop(self, rational_op):
        ident = VarMap.identity("t")
        assert rational_op.change_variables(ident, ident) == rational_op

    def test_requires_inverse_pair(self, rational_op):
        fwd, _ = ambiguity_map(a=F(1))
        bad_inv = VarMap.identity("t")
        with pytest.raises(MapError):
            rational_op.change_variables(fwd, bad_inv)

    @settings(max_examples=10)
    @given(
        a=fractions(),
        b2=fractions(),
        c3=fractions(),
        p=polys(),
    )
    def test_transport_commutes_with_application(self, rational_op, a, b2, c3, p):
        # moving the operator and the argument must commute with moving the image
        fwd, inv = ambiguity_map(a=a, b2=b2, c3=c3)
        moved = rational_op.change_variables(fwd, inv)
        lhs = moved.apply(p.substitute(inv))
        rhs = rational_op.apply(p).substitute(inv)
        assert lhs == rhs

    def test_roundtrip_restores_tables(self, rational_op):
        fwd, inv = ambiguity_map(a=F(1, 2), c4=F(-2))
        moved = rational_op.change_variables(fwd, inv)
        back = moved.change_variables(inv, fwd)
        assert back == rational_op
