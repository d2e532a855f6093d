"""Seeded generators for test points and random polynomials.

Every randomized verification flow in the library draws from these
generators, so a seed fully determines a run.  Rational points use
small-height fractions and reject singular-hyperplane hits to keep the
exact arithmetic cheap and well defined.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .invariants import is_singular_point, variables_rational
from .poly import MPoly


class SeededSampler:
    """Deterministic source of small-height rational data."""

    def __init__(self, seed: int = 0, height: int = 4):
        self.rng = random.Random(seed)
        self.height = height

    def fraction(self, nonzero: bool = False) -> Fraction:
        while True:
            num = self.rng.randrange(-self.height, self.height + 1)
            if nonzero and num == 0:
                continue
            den = self.rng.randrange(1, self.height + 1)
            return Fraction(num, den)

    def point(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """A nonsingular rational point (off every ground-state zero set)."""
        while True:
            x = tuple(self.fraction(nonzero=True) for _ in range(4))
            if not is_singular_point(x):
                return x

    def integer_point(self, bound: int = 40) -> tuple[Fraction, ...]:
        """A nonsingular point with distinct positive integer components."""
        while True:
            x = tuple(
                Fraction(self.rng.randrange(1, bound + 1)) for _ in range(4)
            )
            if not is_singular_point(x):
                return x

    def polynomial(self, frame: str, monomials: Sequence, max_terms: int = 6) -> MPoly:
        """A random nonzero polynomial supported on the given monomials."""
        while True:
            count = self.rng.randrange(1, min(max_terms, len(monomials)) + 1)
            picks = self.rng.sample(list(monomials), count)
            terms = {}
            for exp in picks:
                c = self.fraction(nonzero=True)
                terms[exp] = c
            p = MPoly(frame, terms)
            if not p.is_zero():
                return p


def limit_deviation_linear(x) -> list[Fraction]:
    """Exact first derivative of each periodic invariant in beta^2 at 0.

    The periodic invariants deviate from the harmonic ones by
    beta^2 * D + O(beta^4); D comes from the explicit beta^2 terms of
    the combination formulas plus the first sine-series correction of
    each squared coordinate.
    """
    from .invariants import elem_sym_values, t_polys

    u = [Fraction(v) ** 2 for v in x]
    s1, s2, s3, s4 = elem_sym_values(u)
    explicit = [
        -Fraction(2, 3) * s2,
        -2 * (s4 - Fraction(1, 36) * s2 * s2),
        Fraction(0),
        Fraction(0),
    ]
    ds = [-v * v / 3 for v in u]  # d s_k / d beta^2 at 0
    out = []
    for n, t_poly in enumerate(t_polys()):
        chain = sum(
            (t_poly.derivative(k).eval_exact(u) * ds[k] for k in range(4)),
            Fraction(0),
        )
        out.append(explicit[n] + chain)
    return out


def limit_points(
    seed: int,
    count: int,
    beta2: Fraction = Fraction(1, 10**8),
    rel_tol: Fraction = Fraction(1, 10**10),
) -> list[tuple[Fraction, ...]]:
    """Small-norm rational points certified for the beta -> 0 comparison.

    The periodic invariants deviate by beta^2 times an exactly
    computable coefficient, so each candidate is accepted only if that
    linear deviation fits inside half the relative tolerance for every
    invariant (the quartic tail is then negligible by orders of
    magnitude).
    """
    sampler = SeededSampler(seed, height=4)
    scale = Fraction(1, 512)
    out: list[tuple[Fraction, ...]] = []
    while len(out) < count:
        x = tuple(v * scale for v in sampler.point())
        t = variables_rational(x)
        if any(v == 0 for v in t):
            continue
        dev = limit_deviation_linear(x)
        if all(abs(d) * beta2 * 2 <= abs(tv) * rel_tol for d, tv in zip(dev, t)):
            out.append(x)
    return out


def alcove_points(seed: int, count: int, beta, ctx) -> list[tuple]:
    """Distinct interior points of the fundamental periodicity cell.

    Components are rational multiples of pi/(4 beta), spaced apart so no
    ground-state factor comes close to a zero.
    """
    rng = random.Random(seed)
    width = ctx.pi / (4 * beta)
    out = []
    while len(out) < count:
        fracs = sorted(rng.randrange(8, 120) for _ in range(4))
        if any(b - a < 4 for a, b in zip(fracs, fracs[1:])):
            continue
        f1, f2, f3, f4 = fracs
        # keep every half-sum form well away from its zero set
        if any(
            abs(f1 + s2 * f2 + s3 * f3 + s4 * f4) < 2
            for s2 in (1, -1)
            for s3 in (1, -1)
            for s4 in (1, -1)
        ):
            continue
        out.append(tuple(width * f / 128 for f in fracs))
    return out
