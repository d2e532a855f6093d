"""Named verification suites behind ``f4solv verify``.

Each suite checks the claims the library is built around and returns a
JSON-ready report with a top-level ``passed`` flag and per-check
witness data on failure.  A suite passes when the claims hold, which
for the tau-frame triangularity means passing on *finding* a violation.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DerivationError
from .flags import (
    ambiguity_search,
    is_triangular,
    preserves_flag,
    scan_characteristic_vectors,
)
from .models import (
    RATIONAL,
    ModelParams,
    build_rational_operator,
    build_rho_map,
    build_trig_operator,
)
from .oracle import (
    derive_missing_a66,
    oracle_sweep_rational,
    oracle_sweep_trig,
)
from .poly import MPoly
from .sampling import limit_points
from .serialize import mpoly_to_json


def _check(name: str, passed: bool, **details) -> dict:
    out = {"name": name, "passed": bool(passed)}
    out.update(details)
    return out


def _report(suite: str, checks: list[dict], **extra) -> dict:
    rep = {"suite": suite, "passed": all(c["passed"] for c in checks), "checks": checks}
    rep.update(extra)
    return rep


def verify_flag(args, params: ModelParams) -> dict:
    from .cli import parse_charvec

    f = parse_charvec(args.charvec)
    checks = []
    if args.model == RATIONAL:
        op = build_rational_operator(params)
        levels = max(args.level, 8)
        verdict = preserves_flag(op, f, levels)
        checks.append(
            _check(
                f"rational operator preserves the {f} flag through level {levels}",
                verdict.preserved,
                witness=verdict.witness,
            )
        )
    else:
        op = build_trig_operator(params)
        levels = max(args.level, 6)
        verdict = preserves_flag(op, f, levels)
        checks.append(
            _check(
                f"trig operator (tau frame) preserves the {f} flag through level {levels}",
                verdict.preserved,
                witness=verdict.witness,
            )
        )
    return _report("flag", checks, model=args.model)


def verify_triangular(args, params: ModelParams) -> dict:
    from .cli import parse_charvec

    f = parse_charvec(args.charvec)
    n = max(args.level, 6)
    checks = []
    if args.model == RATIONAL:
        op = build_rational_operator(params)
        verdict = is_triangular(op, f, n)
        checks.append(
            _check(
                f"rational operator is strictly triangular at level {n}",
                verdict.strict,
                violation=verdict.violation,
            )
        )
    elif getattr(args, "frame", "native") == "rho":
        op = build_trig_operator(params)
        fwd, inv = build_rho_map(params.require_beta2())
        verdict = is_triangular(op.change_variables(fwd, inv), f, n)
        checks.append(
            _check(
                f"sheared trig operator (rho frame) is strictly triangular at level {n}",
                verdict.strict,
                violation=verdict.violation,
            )
        )
    else:
        op = build_trig_operator(params)
        verdict = is_triangular(op, f, min(n, 4))
        checks.append(
            _check(
                "trig operator (tau frame) is NOT strictly triangular",
                not verdict.strict,
                violating_entry=verdict.violation,
                block_triangular=verdict.block,
            )
        )
    return _report("triangular", checks, model=args.model)


def verify_oracle(args, params: ModelParams) -> dict:
    if args.model == RATIONAL:
        sweep = oracle_sweep_rational(
            params, n_points=args.points, seed=args.seed
        )
    else:
        sweep = oracle_sweep_trig(params, n_points=args.points, seed=args.seed)
    checks = [
        _check(
            f"{args.model} operator equals its gauge-identity oracle",
            sweep["passed"],
            failures=sweep["failures"],
        )
    ]
    return _report("oracle", checks, model=args.model, sweep=sweep)


def verify_limit(args, params: ModelParams) -> dict:
    from .gauge import mp_context
    from .invariants import variables_rational, variables_trig

    ctx = mp_context()
    beta = ctx.mpf("1e-4")
    tol = ctx.mpf("1e-10")
    worst = ctx.mpf(0)
    points = limit_points(args.seed, 10)
    for x in points:
        xs = [ctx.mpf(v.numerator) / v.denominator for v in x]
        tau = variables_trig(xs, beta)
        t = variables_rational(x)
        for tv, tauv in zip(t, tau):
            ref = ctx.mpf(tv.numerator) / tv.denominator
            worst = max(worst, abs(tauv - ref) / abs(ref))
    checks = [
        _check(
            "periodic invariants match harmonic invariants as beta -> 0",
            worst <= tol,
            worst_rel_deviation=ctx.nstr(worst, 8),
            rel_tol="1e-10",
            beta="1e-4",
            points=len(points),
        )
    ]
    return _report("limit", checks)


def verify_a66(args, params: ModelParams) -> dict:
    rat_params = (
        params
        if params.omega is not None
        else ModelParams(nu=params.nu, mu=params.mu, omega=Fraction(1))
    )
    checks = []
    try:
        derived = derive_missing_a66(rat_params, seed=args.seed)
        checks.append(
            _check(
                "pullback route and trigonometric limit agree exactly",
                True,
                coefficient=mpoly_to_json(derived),
            )
        )
    except DerivationError as exc:
        checks.append(_check("pullback route and trigonometric limit agree exactly", False, error=str(exc)))
        return _report("a66", checks)

    # the completed operator must stand up to the oracle on inputs that
    # actually reach the reconstructed entry (second derivatives in t6)
    heavy = [
        MPoly.monomial("t", (0, 0, 0, 2)),
        MPoly.monomial("t", (1, 0, 0, 2)),
        MPoly.monomial("t", (0, 1, 0, 2)),
    ]
    sweep = oracle_sweep_rational(
        rat_params, n_points=10, n_polys=2, seed=args.seed, extra_polys=heavy
    )
    checks.append(
        _check(
            "completed operator passes the oracle on t6^2-dependent inputs",
            sweep["passed"],
            failures=sweep["failures"],
        )
    )
    return _report("a66", checks)


def verify_scan(args, params: ModelParams) -> dict:
    rat_params = (
        params
        if params.omega is not None
        else ModelParams(nu=params.nu, mu=params.mu, omega=Fraction(1))
    )
    op = build_rational_operator(rat_params)
    bound = getattr(args, "bound", 6)
    n = max(args.level, 6)
    scan = scan_characteristic_vectors(op, bound, n)
    checks = [
        _check(
            "canonical operator preserves the minimal flag",
            (1, 2, 2, 3) in scan.preserved,
        ),
        _check(
            "no componentwise smaller vector is preserved",
            not [
                f
                for f in scan.preserved
                if f != (1, 2, 2, 3) and all(a <= b for a, b in zip(f, (1, 2, 2, 3)))
            ],
            preserved=[list(f) for f in scan.preserved],
        ),
    ]
    search = ambiguity_search(op, bound=bound, n=n)
    checks.append(
        _check(
            "redefinition search exhibits an alternative known flag or reports the grid",
            True,
            found=search["found"],
            searched=search["searched"],
            not_found=search["not_found"],
        )
    )
    return _report("scan", checks, ambiguity_search=search)
