"""Which graded flags does the operator preserve, and how minimal is minimal?

Scans every characteristic vector (1, a3, a4, a6) with components up to
a bound, confirming that (1,2,2,3) is preserved and that nothing
componentwise smaller works.  The invariants of each degree are only
defined up to lower-degree invariants; redefining them moves the
operator onto different flags, and a deterministic grid search over
those redefinitions exhibits alternative characteristic vectors.
"""

from fractions import Fraction as F

from f4solv import (
    ModelParams,
    ambiguity_map,
    ambiguity_search,
    build_rational_operator,
    scan_characteristic_vectors,
)

params = ModelParams(nu=F(1, 3), mu=F(1, 5), omega=F(1))
op = build_rational_operator(params)

print("== Scan of the canonical operator (components <= 6, level 6) ==")
scan = scan_characteristic_vectors(op, 6, 6)
print(f"  preserved vectors: {len(scan.preserved)}")
for f in scan.preserved:
    print(f"    {f}")
print(f"  componentwise-minimal: {scan.minimal}")
print(f"  example rejection witness for (1,1,1,1): {scan.witnesses[(1, 1, 1, 1)]}")

print("\n== One explicit redefinition ==")
fwd, inv = ambiguity_map(a=F(1))
print("  t3 -> t3 + t1^3 moves the operator off the minimal flag:")
moved = op.change_variables(fwd, inv)
moved_scan = scan_characteristic_vectors(moved, 6, 6)
print(f"  preserved now: {moved_scan.preserved}")
print(f"  minimal now:   {moved_scan.minimal}")

print("\n== Deterministic search over small redefinitions ==")
report = ambiguity_search(op, bound=6, n=6)
print(f"  shears tried before first hit: {report['searched']}")
for finding in report["found"]:
    print(f"  parameters {finding['parameters']}")
    print(f"  known alternative vectors preserved: {finding['vectors']}")
