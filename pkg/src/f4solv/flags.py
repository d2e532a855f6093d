"""Graded monomial flags, preservation verdicts, and characteristic-vector scans.

A characteristic vector f = (1, a3, a4, a6) grades monomials by
p1 + a3 p3 + a4 p4 + a6 p6; the flag member at level n is spanned by
the monomials of grade at most n.  The canonical basis order is grade
ascending and lexicographic descending inside a grade, which is the
order in which the model operators are literally triangular.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .operators import SecondOrderOp, op_matrix
from .poly import Exp, MPoly, term_order_key, weighted_grade

CharVector = tuple[int, int, int, int]

#: characteristic vectors known to arise for redefined invariant variables
KNOWN_CHARACTERISTIC_VECTORS: tuple[CharVector, ...] = (
    (1, 2, 2, 3),
    (1, 2, 3, 4),
    (1, 2, 3, 5),
    (1, 3, 3, 5),
    (1, 4, 4, 6),
    (1, 4, 4, 7),
    (1, 5, 5, 8),
    (1, 5, 5, 9),
    (1, 5, 7, 9),
    (1, 6, 6, 9),
    (1, 6, 6, 10),
    (1, 6, 6, 11),
    (1, 6, 7, 10),
    (1, 7, 7, 11),
)


def make_charvec(a3: int, a4: int, a6: int) -> CharVector:
    f = (1, int(a3), int(a4), int(a6))
    validate_charvec(f)
    return f


def validate_charvec(f: Sequence[int]) -> None:
    if len(f) != 4 or f[0] != 1 or any(int(c) < 1 for c in f):
        raise ValueError(f"characteristic vector must be (1, a3, a4, a6) >= 1: {f}")


@dataclass(frozen=True)
class GradedBasis:
    """Ordered monomial basis of a flag member."""

    f: CharVector
    n: int
    monomials: tuple[Exp, ...]
    frame: str = "t"

    def index(self) -> dict[Exp, int]:
        return {m: i for i, m in enumerate(self.monomials)}

    def grades(self) -> list[int]:
        return [weighted_grade(m, self.f) for m in self.monomials]

    def __len__(self) -> int:
        return len(self.monomials)


def enumerate_basis(f: Sequence[int], n: int, frame: str = "t") -> GradedBasis:
    """All monomials of f-grade at most n, in the frame's canonical order."""
    validate_charvec(f)
    if n < 0:
        raise ValueError("level must be non-negative")
    f = tuple(int(c) for c in f)
    monos = []
    for p6 in range(n // f[3] + 1):
        r6 = n - f[3] * p6
        for p4 in range(r6 // f[2] + 1):
            r4 = r6 - f[2] * p4
            for p3 in range(r4 // f[1] + 1):
                for p1 in range(r4 - f[1] * p3 + 1):
                    monos.append((p1, p3, p4, p6))
    monos.sort(key=lambda e: term_order_key(e, f, frame))
    return GradedBasis(f, n, tuple(monos), frame)


def flag_dimension(f: Sequence[int], n: int) -> int:
    """dim P_n by weighted-partition counting (no enumeration)."""
    validate_charvec(f)
    counts = [0] * (n + 1)
    counts[0] = 1
    for w in tuple(f):
        for g in range(w, n + 1):
            counts[g] += counts[g - w]
    return sum(counts)


@dataclass(frozen=True)
class FlagVerdict:
    preserved: bool
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.preserved


def preserves_flag(op: SecondOrderOp, f: Sequence[int], n: int) -> FlagVerdict:
    """Check that op maps every flag member P_k (k <= n) into itself.

    The witness on failure is the lowest-grade basis monomial whose
    image escapes its grade, together with the escaping term.
    """
    f = tuple(int(c) for c in f)
    basis = enumerate_basis(f, n)
    for m in basis.monomials:
        g = weighted_grade(m, f)
        image = op.apply(MPoly.monomial(op.frame, m))
        for exp, coeff in sorted(image.terms.items()):
            if weighted_grade(exp, f) > g:
                return FlagVerdict(
                    False,
                    {
                        "monomial": list(m),
                        "offending_term": {
                            "exponents": list(exp),
                            "coeff": str(coeff),
                        },
                        "grade": g,
                        "term_grade": weighted_grade(exp, f),
                    },
                )
    return FlagVerdict(True)


@dataclass(frozen=True)
class TriangularVerdict:
    strict: bool
    block: bool  # grade-non-increasing
    preserved: bool
    violation: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.strict


def is_triangular(op: SecondOrderOp, f: Sequence[int], n: int) -> TriangularVerdict:
    """Strict upper-triangularity of the operator matrix in canonical order.

    Requires flag preservation first; without it the verdict is
    vacuously false and the violation carries the closure witness.
    Block triangularity (never increasing the grade) is reported
    separately: a strict verdict needs every below-diagonal entry to
    vanish, a block verdict only those that cross into a higher grade.
    """
    f = tuple(int(c) for c in f)
    flag = preserves_flag(op, f, n)
    if not flag:
        return TriangularVerdict(False, False, False, flag.witness)
    basis = enumerate_basis(f, n, op.frame)
    result = op_matrix(op, basis)
    mat = result.matrix
    grades = basis.grades()
    violation = None
    block = True
    for j, m in enumerate(basis.monomials):
        for i in range(j + 1, len(basis.monomials)):
            value = mat.data[i][j]
            if value:
                if grades[i] > grades[j]:
                    block = False
                if violation is None:
                    violation = {
                        "row_monomial": list(basis.monomials[i]),
                        "col_monomial": list(m),
                        "value": str(value),
                    }
    return TriangularVerdict(violation is None, block, True, violation)


@dataclass(frozen=True)
class ScanResult:
    preserved: tuple[CharVector, ...]
    minimal: tuple[CharVector, ...]
    witnesses: dict

    def to_json(self) -> dict:
        return {
            "preserved": [list(f) for f in self.preserved],
            "minimal": [list(f) for f in self.minimal],
            "witnesses": {
                ",".join(map(str, f)): w for f, w in sorted(self.witnesses.items())
            },
        }


def scan_characteristic_vectors(
    op: SecondOrderOp, bound: int, n: int
) -> ScanResult:
    """All vectors with components <= bound whose flag the operator preserves.

    Image terms are cached per monomial across candidate vectors; every
    candidate's basis is a subset of the unit-weight basis at the same
    level.
    """
    if bound < 3:
        raise ValueError("bound must be at least 3")
    if n < 4:
        raise ValueError("scan level must be at least 4")
    union = enumerate_basis((1, 1, 1, 1), n)
    images: dict[Exp, list[tuple[Exp, Fraction]]] = {}
    for m in union.monomials:
        images[m] = sorted(op.apply(MPoly.monomial(op.frame, m)).terms.items())

    preserved = []
    witnesses = {}
    for a3 in range(1, bound + 1):
        for a4 in range(1, bound + 1):
            for a6 in range(1, bound + 1):
                f = (1, a3, a4, a6)
                verdict = _scan_one(images, f, n)
                if verdict is None:
                    preserved.append(f)
                else:
                    witnesses[f] = verdict
    preserved.sort()
    minimal = _minimal_antichain(preserved)
    return ScanResult(tuple(preserved), tuple(minimal), witnesses)


def _scan_one(images, f: CharVector, n: int) -> Optional[dict]:
    for m, terms in images.items():
        g = weighted_grade(m, f)
        if g > n:
            continue
        for exp, coeff in terms:
            if weighted_grade(exp, f) > g:
                return {
                    "monomial": list(m),
                    "offending_term": {"exponents": list(exp), "coeff": str(coeff)},
                }
    return None


def _minimal_antichain(vectors: Iterable[CharVector]) -> list[CharVector]:
    vectors = sorted(vectors)
    minimal = []
    for f in vectors:
        if not any(
            g != f and all(gc <= fc for gc, fc in zip(g, f)) for g in vectors
        ):
            minimal.append(f)
    return minimal


# -- search over invariant redefinitions ---------------------------------------


def _grid_values(height: int) -> list[Fraction]:
    values = set()
    for num in range(1, height + 1):
        for den in range(1, height + 1):
            v = Fraction(num, den)
            if max(v.numerator, v.denominator) <= height:
                values.add(v)
                values.add(-v)
    return sorted(values, key=lambda v: (max(abs(v.numerator), v.denominator), v < 0, abs(v)))


@dataclass(frozen=True)
class AmbiguityFinding:
    parameters: tuple[Fraction, ...]  # (a, b1, b2, c1, c2, c3, c4)
    vectors: tuple[CharVector, ...]  # known alternatives preserved by the redefinition

    def to_json(self) -> dict:
        names = ("a", "b1", "b2", "c1", "c2", "c3", "c4")
        return {
            "parameters": {k: str(v) for k, v in zip(names, self.parameters)},
            "vectors": [list(f) for f in self.vectors],
        }


def ambiguity_search(
    op: SecondOrderOp,
    bound: int = 6,
    n: int = 6,
    single_height: int = 4,
    pair_height: int = 2,
    stop_at_first: bool = True,
) -> dict:
    """Search invariant redefinitions that move the operator onto another flag.

    Deterministic staged grid: every single-parameter shear with
    parameter height up to ``single_height``, then parameter pairs up to
    ``pair_height`` (skipped once a hit is found when ``stop_at_first``).
    A hit is a redefinition whose transformed operator preserves a known
    characteristic vector other than the minimal one.  Whatever the grid
    yields is reported; exhaustion without a hit is a valid outcome.
    """
    from .models import ambiguity_map

    targets = set(KNOWN_CHARACTERISTIC_VECTORS) - {(1, 2, 2, 3)}
    findings: list[AmbiguityFinding] = []
    tried = 0

    def attempt(values: tuple[Fraction, ...]) -> bool:
        nonlocal tried
        tried += 1
        fwd, inv = ambiguity_map(*values)
        moved = op.change_variables(fwd, inv)
        scan = scan_characteristic_vectors(moved, bound, n)
        hits = tuple(f for f in scan.preserved if f in targets)
        if hits:
            findings.append(AmbiguityFinding(values, hits))
            return True
        return False

    singles = _grid_values(single_height)
    done = False
    for slot in range(7):
        for v in singles:
            values = tuple(
                v if k == slot else Fraction(0) for k in range(7)
            )
            if attempt(values) and stop_at_first:
                done = True
                break
        if done:
            break

    if not done:
        pair_vals = _grid_values(pair_height)
        for i in range(7):
            for j in range(i + 1, 7):
                for vi in pair_vals:
                    for vj in pair_vals:
                        values = tuple(
                            vi if k == i else vj if k == j else Fraction(0)
                            for k in range(7)
                        )
                        if attempt(values) and stop_at_first:
                            done = True
                            break
                    if done:
                        break
                if done:
                    break
            if done:
                break

    return {
        "searched": tried,
        "single_height": single_height,
        "pair_height": pair_height,
        "found": [f.to_json() for f in findings],
        "not_found": not findings,
    }
