"""Machine-readable formats: exact rationals as strings, never floats."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional, Sequence

from .operators import A_PAIRS, SecondOrderOp
from .poly import MPoly
from .spectral import SpectralLine

PUBLIC_FRAMES = ("t", "tau", "rho")


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def mpoly_to_json(p: MPoly) -> dict:
    return {
        "frame": p.frame,
        "terms": [
            {"exponents": list(exp), "coeff": format_fraction(coeff)}
            for exp, coeff in p.sorted_terms()
        ],
    }


def mpoly_from_json(obj: dict) -> MPoly:
    terms = {
        tuple(rec["exponents"]): parse_fraction(rec["coeff"])
        for rec in obj["terms"]
    }
    return MPoly(obj["frame"], terms)


def operator_to_json(op: SecondOrderOp) -> dict:
    return {
        "frame": op.frame,
        "A": [
            {"a": a, "b": b, "poly": mpoly_to_json(op.a[(a, b)])}
            for (a, b) in A_PAIRS
            if (a, b) in op.a
        ],
        "B": [
            {"a": a, "poly": mpoly_to_json(op.b[a])}
            for a in (1, 3, 4, 6)
            if a in op.b
        ],
        "C": mpoly_to_json(op.c),
    }


def spectrum_csv(
    lines: Sequence[SpectralLine],
    scale: Optional[Fraction],
    offset: Optional[Fraction],
) -> str:
    header = (
        "p1,p3,p4,p6,level,eigenvalue,closed_form_energy,"
        "calibration_scale,calibration_offset"
    )
    rows = [header]
    s = format_fraction(scale) if scale is not None else ""
    o = format_fraction(offset) if offset is not None else ""
    for line in lines:
        if line.quantum_numbers is not None:
            p = list(line.quantum_numbers)
            level = str(line.level)
        else:
            p = ["", "", "", ""]
            level = ""
        energy = (
            format_fraction(line.closed_form_energy)
            if line.closed_form_energy is not None
            else ""
        )
        rows.append(
            ",".join(
                [str(v) for v in p]
                + [level, format_fraction(line.eigenvalue), energy, s, o]
            )
        )
    return "\n".join(rows) + "\n"


def spectral_line_json(line: SpectralLine) -> dict:
    obj = {
        "eigenvalue": format_fraction(line.eigenvalue),
    }
    if line.quantum_numbers is not None:
        obj["quantum_numbers"] = list(line.quantum_numbers)
        obj["level"] = line.level
    if line.closed_form_energy is not None:
        obj["closed_form_energy"] = format_fraction(line.closed_form_energy)
    if line.eigenfunction is not None:
        obj["eigenfunction"] = mpoly_to_json(line.eigenfunction)
        obj["residual_zero"] = True
    return obj


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
