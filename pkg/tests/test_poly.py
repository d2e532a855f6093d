from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f4solv.errors import FrameError, MapError
from f4solv.poly import MPoly, VarMap, build_triangular_map, is_inverse_pair

T1 = MPoly.variable("t", 0)
T3 = MPoly.variable("t", 1)
T4 = MPoly.variable("t", 2)
T6 = MPoly.variable("t", 3)


def fractions(max_num=6, max_den=4):
    return st.builds(
        F,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def exponents(max_exp=3):
    return st.tuples(*[st.integers(min_value=0, max_value=max_exp)] * 4)


def polys(frame="t"):
    return st.dictionaries(exponents(), fractions(), max_size=5).map(
        lambda terms: MPoly(frame, terms)
    )


class TestArithmetic:
    def test_additive_inverse(self):
        assert (T1 + (-T1)).is_zero()

    def test_like_term_merge(self):
        assert 2 * T1 * T3 + 3 * T1 * T3 == 5 * T1 * T3

    def test_product_of_variables(self):
        assert T1 * T1 == MPoly.monomial("t", (2, 0, 0, 0))

    def test_difference_of_squares(self):
        assert (T1 + T3) * (T1 - T3) == T1**2 - T3**2

    def test_zero_absorbs(self):
        p = T1**2 * T3 - 7 * T6
        assert (MPoly.zero("t") * p).is_zero()

    def test_frame_mismatch_raises(self):
        with pytest.raises(FrameError):
            T1 + MPoly.variable("tau", 0)
        with pytest.raises(FrameError):
            T1 * MPoly.variable("rho", 0)

    @settings(max_examples=40)
    @given(a=polys(), b=polys(), c=polys())
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


class TestCalculus:
    def test_derivative_power_rule(self):
        assert (T1**2 * T3).derivative(0) == 2 * T1 * T3

    def test_derivative_of_constant(self):
        assert MPoly.constant("t", F(5, 3)).derivative(2).is_zero()

    def test_derivative_cube(self):
        assert (T6**3).derivative(3) == 3 * T6**2

    @settings(max_examples=30)
    @given(a=polys(), b=polys())
    def test_leibniz(self, a, b):
        for slot in range(4):
            lhs = (a * b).derivative(slot)
            rhs = a.derivative(slot) * b + a * b.derivative(slot)
            assert lhs == rhs


class TestEval:
    def test_variable_value(self):
        assert T1.eval_exact((4, 0, 0, 0)) == 4

    def test_monomial_value(self):
        assert (T1**2 * T3).eval_exact((2, 3, 0, 0)) == 12

    def test_zero_eval(self):
        assert MPoly.zero("t").eval_exact((1, 2, 3, 4)) == 0

    @settings(max_examples=30)
    @given(a=polys(), b=polys(), point=st.tuples(*[fractions(3, 3)] * 4))
    def test_eval_is_ring_homomorphism(self, a, b, point):
        assert (a * b).eval_exact(point) == a.eval_exact(point) * b.eval_exact(point)
        assert (a + b).eval_exact(point) == a.eval_exact(point) + b.eval_exact(point)


def shear_corrections(a, b2, c4):
    return {
        1: MPoly("t", {(3, 0, 0, 0): a}),
        2: MPoly("t", {(1, 1, 0, 0): b2}),
        3: MPoly("t", {(0, 2, 0, 0): c4}),
    }


class TestSubstitution:
    def test_identity_map_fixes_polynomials(self):
        p = 2 * T1**3 - F(7, 2) * T3 * T6
        assert p.substitute(VarMap.identity("t")) == p

    def test_cubic_shear_image(self):
        fwd, _ = build_triangular_map("t", "t", {1: T1**3})
        assert T3.substitute(fwd) == T3 + T1**3

    def test_missing_image_rejected(self):
        with pytest.raises(MapError):
            VarMap("t", "t", [T1, T3, T4])

    def test_correction_may_only_use_earlier_slots(self):
        with pytest.raises(MapError):
            build_triangular_map("t", "t", {1: T4})

    @settings(max_examples=25)
    @given(
        p=polys(),
        a=fractions(3, 2),
        b2=fractions(3, 2),
        c4=fractions(3, 2),
    )
    def test_shear_inverse_roundtrip(self, p, a, b2, c4):
        fwd, inv = build_triangular_map("t", "t", shear_corrections(a, b2, c4))
        assert is_inverse_pair(fwd, inv)
        assert p.substitute(fwd).substitute(inv) == p

    def test_frame_transport(self):
        fwd, inv = build_triangular_map("rho", "tau", {1: MPoly.variable("tau", 0) ** 2})
        tau_poly = MPoly.variable("rho", 1).substitute(fwd)
        assert tau_poly.frame == "tau"
        assert tau_poly.substitute(inv) == MPoly.variable("rho", 1)


class TestDisplayOrder:
    def test_harmonic_frames_put_t1_rich_first(self):
        p = T3 + T1**2
        assert str(p) == "t1^2 + t3"

    def test_rho_frame_reverses_the_direction(self):
        r1 = MPoly.variable("rho", 0)
        r3 = MPoly.variable("rho", 1)
        assert str(r3 + r1**2) == "rho3 + rho1^2"
