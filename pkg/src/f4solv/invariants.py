"""Reflection-invariant variable maps for both models.

Both models become algebraic in four invariants of the coordinate
reflection group, indexed 1, 3, 4, 6 by their degree in the squared
coordinates.  The harmonic-model variables are fixed polynomial
combinations of the elementary symmetric functions of x_i^2; the
periodic-model variables apply the same combinations (plus explicit
correction terms in beta^2) to the elementary symmetric functions of
sin^2(beta x_i)/beta^2, which reproduces the former set as beta -> 0.

The combination formulas are written once, generically, so they serve
both the exact symbolic path (``MPoly`` arguments) and the numeric
evaluation path (``Fraction`` or ``mpf`` arguments).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from .poly import MPoly, VarMap

#: degree of each invariant variable in the squared coordinates
DEGREE_WEIGHTS = (1, 3, 4, 6)

#: the minimal characteristic vector of the preserved flag
MINIMAL_CHARVEC = (1, 2, 2, 3)

HALF = Fraction(1, 2)


def elem_sym_values(vals: Sequence) -> list:
    """The four elementary symmetric functions of four values."""
    v1, v2, v3, v4 = vals
    e1 = v1 + v2 + v3 + v4
    e2 = v1 * v2 + v1 * v3 + v1 * v4 + v2 * v3 + v2 * v4 + v3 * v4
    e3 = v1 * v2 * v3 + v1 * v2 * v4 + v1 * v3 * v4 + v2 * v3 * v4
    e4 = v1 * v2 * v3 * v4
    return [e1, e2, e3, e4]


def t_from_sigma(sig: Sequence):
    """Invariant variables of the harmonic model from symmetric functions."""
    s1, s2, s3, s4 = sig
    t1 = s1
    t3 = s3 - Fraction(1, 6) * s1 * s2
    t4 = s4 - Fraction(1, 4) * s1 * s3 + Fraction(1, 12) * s2 * s2
    t6 = (
        s4 * s2
        - Fraction(1, 36) * s2 * s2 * s2
        - Fraction(3, 8) * s3 * s3
        + Fraction(1, 8) * s1 * s2 * s3
        - Fraction(3, 8) * s1 * s1 * s4
    )
    return [t1, t3, t4, t6]


def tau_from_sigma(sig: Sequence, beta2):
    """Invariant variables of the periodic model from symmetric functions.

    At ``beta2 = 0`` this reduces term by term to ``t_from_sigma``.
    """
    s1, s2, s3, s4 = sig
    tau1 = s1 - Fraction(2, 3) * beta2 * s2
    tau3 = (
        s3
        - Fraction(1, 6) * s1 * s2
        - 2 * beta2 * (s4 - Fraction(1, 36) * s2 * s2)
    )
    tau4 = s4 - Fraction(1, 4) * s1 * s3 + Fraction(1, 12) * s2 * s2
    tau6 = (
        s4 * s2
        - Fraction(1, 36) * s2 * s2 * s2
        - Fraction(3, 8) * s3 * s3
        + Fraction(1, 8) * s1 * s2 * s3
        - Fraction(3, 8) * s1 * s1 * s4
    )
    return [tau1, tau3, tau4, tau6]


@lru_cache(maxsize=None)
def sigma_polys(frame: str) -> tuple[MPoly, MPoly, MPoly, MPoly]:
    """Elementary symmetric polynomials of the four frame variables."""
    var = [MPoly.variable(frame, s) for s in range(4)]
    sig = []
    for k in range(1, 5):
        acc = MPoly.zero(frame)
        for combo in combinations(range(4), k):
            term = MPoly.one(frame)
            for s in combo:
                term = term * var[s]
            acc = acc + term
        sig.append(acc)
    return tuple(sig)


@lru_cache(maxsize=None)
def t_polys() -> tuple[MPoly, MPoly, MPoly, MPoly]:
    """The harmonic-model invariants as exact polynomials in u_i = x_i^2."""
    return tuple(t_from_sigma(sigma_polys("x2")))


@lru_cache(maxsize=None)
def tau_polys(beta2: Fraction) -> tuple[MPoly, MPoly, MPoly, MPoly]:
    """The periodic-model invariants as exact polynomials in s_i = sin^2(beta x_i)/beta^2."""
    return tuple(tau_from_sigma(sigma_polys("sin2"), Fraction(beta2)))


def t_varmap() -> VarMap:
    """Substitution rewriting a t-frame polynomial in squared coordinates."""
    return VarMap("t", "x2", t_polys())


def tau_varmap(beta2: Fraction) -> VarMap:
    """Substitution rewriting a tau-frame polynomial in squared scaled sines."""
    return VarMap("tau", "sin2", tau_polys(Fraction(beta2)))


def variables_rational(x: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Exact invariant values at a rational point."""
    u = [Fraction(v) ** 2 for v in x]
    return tuple(t_from_sigma(elem_sym_values(u)))


def variables_trig(x: Sequence, beta) -> tuple:
    """Invariant values of the periodic model at a numeric point.

    ``x`` entries and ``beta`` may be floats or mpmath numbers; the
    computation follows the operand precision.
    """
    s = [(_sin(beta * v) / beta) ** 2 for v in x]
    return tuple(tau_from_sigma(elem_sym_values(s), beta * beta))


def _sin(v):
    import mpmath

    if isinstance(v, mpmath.mpf):
        return mpmath.sin(v)
    import math

    return math.sin(v)


# -- singular set and reflection helpers -------------------------------------

#: sign patterns of the eight half-sum forms x1 +- x2 +- x3 +- x4
HALF_SUM_SIGNS = tuple((1,) + signs for signs in product((1, -1), repeat=3))


def half_sum_values(x: Sequence) -> list:
    return [sum(s * v for s, v in zip(signs, x)) for signs in HALF_SUM_SIGNS]


def singular_factors(x: Sequence) -> list[tuple[str, object]]:
    """All ground-state factor values whose zeros bound the configuration space."""
    out = []
    for i in range(4):
        out.append((f"x{i + 1}", x[i]))
    for i in range(4):
        for j in range(i + 1, 4):
            out.append((f"x{i + 1}-x{j + 1}", x[i] - x[j]))
            out.append((f"x{i + 1}+x{j + 1}", x[i] + x[j]))
    for signs, value in zip(HALF_SUM_SIGNS, half_sum_values(x)):
        name = "x1" + "".join(
            ("+" if s > 0 else "-") + f"x{k + 2}" for k, s in enumerate(signs[1:])
        )
        out.append((name, value))
    return out


def is_singular_point(x: Sequence[Fraction]) -> bool:
    return any(value == 0 for _, value in singular_factors(x))


def half_sum_reflection(x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Reflection through the hyperplane of the root (1,1,1,1)/2."""
    shift = HALF * sum(Fraction(v) for v in x)
    return tuple(Fraction(v) - shift for v in x)
