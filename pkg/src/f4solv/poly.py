"""Sparse exact polynomials in four variables.

A polynomial is a mapping from exponent vectors to rational coefficients:

    terms = {(p1, p3, p4, p6): Fraction, ...}

Exponent vectors are 4-tuples of non-negative ints and every coefficient
is a ``fractions.Fraction``, so arithmetic is exact and two polynomials
are equal exactly when their canonical term maps are equal.  Zero
coefficients are never stored; the zero polynomial is the empty map.

Each polynomial carries a *frame* tag naming the variable set it lives
in.  Mixing frames silently is always a bug (the sheared frames grade
differently), so binary operations check tags and raise ``FrameError``.
Frames used by the library:

    "t"     t1, t3, t4, t6      invariant variables, harmonic model
    "tau"   tau1 ... tau6       periodic invariant variables
    "rho"   rho1 ... rho6       sheared periodic variables
    "x2"    u1 ... u4           squared Cartesian coordinates
    "sin2"  s1 ... s4           squared scaled sines of the coordinates

The invariant frames index their variables 1, 3, 4, 6 (by polynomial
degree in the underlying coordinates); the helper ``SLOT`` maps those
labels to tuple positions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import FrameError, MapError

Exp = tuple[int, int, int, int]
Scalar = Union[int, Fraction]

#: variable display names per frame
FRAME_VARS: dict[str, tuple[str, str, str, str]] = {
    "t": ("t1", "t3", "t4", "t6"),
    "tau": ("tau1", "tau3", "tau4", "tau6"),
    "rho": ("rho1", "rho3", "rho4", "rho6"),
    "x2": ("u1", "u2", "u3", "u4"),
    "sin2": ("s1", "s2", "s3", "s4"),
}

#: invariant-variable label -> tuple slot
VAR_IDS = (1, 3, 4, 6)
SLOT = {1: 0, 3: 1, 4: 2, 6: 3}

ZERO_EXP: Exp = (0, 0, 0, 0)

#: default display weights (the minimal characteristic vector)
DISPLAY_WEIGHTS = (1, 2, 2, 3)


def weighted_grade(exp: Sequence[int], weights: Sequence[int]) -> int:
    """Weighted degree of an exponent vector."""
    return (
        exp[0] * weights[0]
        + exp[1] * weights[1]
        + exp[2] * weights[2]
        + exp[3] * weights[3]
    )


def term_order_key(exp: Exp, weights: Sequence[int] = DISPLAY_WEIGHTS, frame: str = "t"):
    """Canonical ordering key: grade ascending, then lexicographic descending.

    The intra-grade direction is frame-dependent, chosen so that every
    grade-preserving transition of the model operators moves strictly
    earlier, which is what makes their matrices literally triangular.
    The harmonic-model frames order t1-rich monomials first; the sheared
    periodic frame pushes them last (its corrections reverse the mixing
    direction), reading the exponents in the order (p3, p6, p4, p1).
    """
    if frame == "rho":
        return (
            weighted_grade(exp, weights),
            (-exp[1], -exp[3], -exp[2], -exp[0]),
        )
    return (weighted_grade(exp, weights), tuple(-e for e in exp))


class MPoly:
    """Immutable sparse polynomial in four tagged variables."""

    __slots__ = ("frame", "terms", "_hash")

    def __init__(self, frame: str, terms: Mapping[Exp, Scalar] | None = None):
        if frame not in FRAME_VARS:
            raise FrameError(f"unknown frame {frame!r}")
        clean: dict[Exp, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                exp = tuple(exp)
                if len(exp) != 4 or any(e < 0 or not isinstance(e, int) for e in exp):
                    raise ValueError(f"bad exponent vector {exp!r}")
                c = Fraction(coeff)
                if c:
                    clean[exp] = c
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("MPoly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, frame: str) -> "MPoly":
        return cls(frame)

    @classmethod
    def constant(cls, frame: str, value: Scalar) -> "MPoly":
        return cls(frame, {ZERO_EXP: Fraction(value)})

    @classmethod
    def one(cls, frame: str) -> "MPoly":
        return cls.constant(frame, 1)

    @classmethod
    def variable(cls, frame: str, slot: int) -> "MPoly":
        exp = [0, 0, 0, 0]
        exp[slot] = 1
        return cls(frame, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, frame: str, exp: Sequence[int], coeff: Scalar = 1) -> "MPoly":
        return cls(frame, {tuple(exp): Fraction(coeff)})

    # -- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {ZERO_EXP}

    def constant_value(self) -> Fraction:
        return self.terms.get(ZERO_EXP, Fraction(0))

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def support_slots(self) -> set[int]:
        """Slots of variables that actually occur."""
        used = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(i)
        return used

    def sorted_terms(self, weights: Sequence[int] = DISPLAY_WEIGHTS):
        return sorted(
            self.terms.items(),
            key=lambda kv: term_order_key(kv[0], weights, self.frame),
        )

    # -- arithmetic -------------------------------------------------------

    def _check_frame(self, other: "MPoly") -> None:
        if self.frame != other.frame:
            raise FrameError(f"frame mismatch: {self.frame!r} vs {other.frame!r}")

    def __add__(self, other: Union["MPoly", Scalar]) -> "MPoly":
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.frame, other)
        self._check_frame(other)
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            acc = out.get(exp, 0) + coeff
            if acc:
                out[exp] = acc
            else:
                out.pop(exp, None)
        return MPoly(self.frame, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.frame, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Union["MPoly", Scalar]) -> "MPoly":
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.frame, other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "MPoly":
        return MPoly.constant(self.frame, other) - self

    def __mul__(self, other: Union["MPoly", Scalar]) -> "MPoly":
        if not isinstance(other, MPoly):
            c = Fraction(other)
            if not c:
                return MPoly.zero(self.frame)
            return MPoly(self.frame, {e: k * c for e, k in self.terms.items()})
        self._check_frame(other)
        out: dict[Exp, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
                acc = out.get(exp, 0) + ca * cb
                if acc:
                    out[exp] = acc
                else:
                    out.pop(exp, None)
        return MPoly(self.frame, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.one(self.frame)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- calculus ----------------------------------------------------------

    def derivative(self, slot: int) -> "MPoly":
        """Exact partial derivative with respect to the variable in ``slot``."""
        out: dict[Exp, Fraction] = {}
        for exp, coeff in self.terms.items():
            e = exp[slot]
            if not e:
                continue
            new = list(exp)
            new[slot] = e - 1
            out[tuple(new)] = coeff * e
        return MPoly(self.frame, out)

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, varmap: "VarMap") -> "MPoly":
        """Exact composition ``self(varmap)``; the result lives in the target frame."""
        if self.frame != varmap.source:
            raise FrameError(
                f"substitution expects frame {varmap.source!r}, got {self.frame!r}"
            )
        target = varmap.target
        pow_cache: list[dict[int, MPoly]] = [
            {0: MPoly.one(target)} for _ in range(4)
        ]

        def image_power(slot: int, k: int) -> MPoly:
            cache = pow_cache[slot]
            if k not in cache:
                cache[k] = image_power(slot, k - 1) * varmap.images[slot]
            return cache[k]

        acc = MPoly.zero(target)
        for exp, coeff in self.terms.items():
            term = MPoly.constant(target, coeff)
            for slot, e in enumerate(exp):
                if e:
                    term = term * image_power(slot, e)
            acc = acc + term
        return acc

    def eval_exact(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point."""
        vals = [Fraction(v) for v in point]
        acc = Fraction(0)
        for exp, coeff in self.terms.items():
            prod = coeff
            for v, e in zip(vals, exp):
                if e:
                    prod *= v**e
            acc += prod
        return acc

    def eval_float(self, point: Sequence) -> object:
        """Value at a point of arbitrary numeric type (floats, mpf, ...).

        Fraction coefficients are multiplied in unreduced, so mpmath
        operands convert them at working precision.
        """
        acc = None
        for exp, coeff in self.terms.items():
            prod = None
            for v, e in zip(point, exp):
                if e:
                    p = v**e
                    prod = p if prod is None else prod * p
            val = coeff if prod is None else prod * coeff
            acc = val if acc is None else acc + val
        if acc is None:
            return 0
        return acc

    # -- equality, hashing, display -----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.frame == other.frame and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.frame, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = FRAME_VARS[self.frame]
        chunks = []
        for exp, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(coeff)
            elif coeff == 1:
                body = "*".join(factors)
            elif coeff == -1:
                body = "-" + "*".join(factors)
            else:
                body = str(coeff) + "*" + "*".join(factors)
            chunks.append(body)
        out = chunks[0]
        for c in chunks[1:]:
            out += " - " + c[1:] if c.startswith("-") else " + " + c
        return out

    def __repr__(self) -> str:
        return f"MPoly({self.frame!r}, {self})"


class VarMap:
    """A substitution sending each source-frame variable to a target-frame polynomial."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: str, target: str, images: Sequence[MPoly]):
        if source not in FRAME_VARS or target not in FRAME_VARS:
            raise FrameError("unknown frame in substitution")
        images = tuple(images)
        if len(images) != 4:
            raise MapError("substitution must supply an image for every variable")
        for img in images:
            if img.frame != target:
                raise MapError(
                    f"image frame {img.frame!r} does not match target {target!r}"
                )
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("VarMap is immutable")

    @classmethod
    def identity(cls, frame: str) -> "VarMap":
        return cls(frame, frame, [MPoly.variable(frame, s) for s in range(4)])

    def __repr__(self) -> str:
        return f"VarMap({self.source!r} -> {self.target!r})"


def is_inverse_pair(fwd: VarMap, inv: VarMap) -> bool:
    """Check exactly that ``fwd`` and ``inv`` compose to the identity both ways."""
    if fwd.source != inv.target or fwd.target != inv.source:
        return False
    for slot in range(4):
        if fwd.images[slot].substitute(inv) != MPoly.variable(inv.target, slot):
            return False
        if inv.images[slot].substitute(fwd) != MPoly.variable(fwd.target, slot):
            return False
    return True


def build_triangular_map(
    new_frame: str, old_frame: str, corrections: Mapping[int, MPoly]
) -> tuple[VarMap, VarMap]:
    """Build a shear substitution and its exact inverse.

    The new variable in ``slot`` equals the old one plus ``corrections[slot]``,
    a polynomial in old variables of strictly earlier slots only.  That
    triangular structure is what makes the map invertible by
    back-substitution; it is validated here.

    Returns ``(fwd, inv)`` where ``fwd`` rewrites new-frame polynomials in
    old-frame variables and ``inv`` does the reverse.
    """
    corr: dict[int, MPoly] = {}
    for slot, c in corrections.items():
        if c.frame != old_frame:
            raise MapError("correction must live in the old frame")
        if any(exp[j] for exp in c.terms for j in range(slot, 4)):
            raise MapError(
                f"correction for slot {slot} may only use earlier variables"
            )
        if not c.is_zero():
            corr[slot] = c

    fwd_images = []
    for slot in range(4):
        img = MPoly.variable(old_frame, slot)
        if slot in corr:
            img = img + corr[slot]
        fwd_images.append(img)
    fwd = VarMap(new_frame, old_frame, fwd_images)

    # Back-substitution: each correction only references slots already inverted.
    inv_images: list[MPoly] = [MPoly.variable(new_frame, s) for s in range(4)]
    for slot in range(4):
        if slot in corr:
            partial = VarMap(old_frame, new_frame, inv_images)
            inv_images[slot] = MPoly.variable(new_frame, slot) - corr[slot].substitute(
                partial
            )
    inv = VarMap(old_frame, new_frame, inv_images)

    if not is_inverse_pair(fwd, inv):  # pragma: no cover - construction guarantee
        raise MapError("shear inversion failed")
    return fwd, inv
