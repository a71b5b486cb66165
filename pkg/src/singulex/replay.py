"""Golden examples with known closed-form answers.

Each entry recomputes a value with the library and compares it with the
expected one; ``singulex --paper-examples`` runs them all.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

from .algebra import factor_out_power, lowest_degree_part, parse_polynomial, substitute
from .blowup import GRAPH_OVER_S, BlowupChart, blowup_transform, verify_resolution_shape
from .exponents import (
    BrieskornPham,
    ExponentValue,
    bp_minimal_exponent,
    classify,
    hm_applicable,
    min_product_rule,
    slice_exponent_ordinary_mple,
)
from .families import HomogeneousFamilySpec, build_homogeneous_family, chart_restrict


@dataclass(frozen=True)
class Example:
    name: str
    check: Callable[[], bool]


def _blowup_quadric() -> bool:
    y = ("y1", "y2", "y3")
    images = {
        "x1": parse_polynomial("y1*y3", y),
        "x2": parse_polynomial("y2*y3", y),
    }
    p = parse_polynomial("x1^2+x2^2", ("x1", "x2", "x3"))
    return substitute(p, {**images, "x3": parse_polynomial("y3", y)}) == parse_polynomial("y1^2*y3^2+y2^2*y3^2", y)


def _factor_quadric() -> bool:
    ctx = ("y1", "y2", "y3", "s")
    k, q = factor_out_power(parse_polynomial("y1^2*y3^2 + y2^2*y3^2 + s*y3^2", ctx), "y3")
    return k == 2 and q == parse_polynomial("y1^2+y2^2+s", ctx)


def _transform(text: str, xs: tuple[str, ...], expected: str, mult: int) -> bool:
    p = parse_polynomial(text, xs + ("s",))
    t = blowup_transform(p, BlowupChart.principal(xs))
    return t.exceptional_multiplicity == mult and t.proper == parse_polynomial(expected, t.proper.context)


def _shape(text: str, xs: tuple[str, ...], m: int) -> bool:
    r = verify_resolution_shape(parse_polynomial(text, xs + ("s",)), m)
    return r.ok and r.certificate.kind == GRAPH_OVER_S


def _family_chart() -> bool:
    f = build_homogeneous_family(HomogeneousFamilySpec(3, 2, 4, 1))
    if f != parse_polynomial("x2^2*x1^2 + x3^2*x1^2 + x2^4 + x3^4", f.context):
        return False
    chart = chart_restrict(f, 1)
    return (
        chart.poly == parse_polynomial("x2^2+x3^2+x2^4+x3^4", chart.poly.context)
        and chart.diagonal
        and lowest_degree_part(chart.poly)[0] == 2
    )


EXAMPLES: list[Example] = [
    Example("substitute: quadric cone in the principal chart", _blowup_quadric),
    Example("factor_out_power: exceptional factor y3^2", _factor_quadric),
    Example(
        "lowest_degree_part: chart of the homogeneous family",
        lambda: lowest_degree_part(parse_polynomial("x2^2+x3^2+x2^4+x3^4"))
        == (2, parse_polynomial("x2^2+x3^2", ("x2", "x3"))),
    ),
    Example("bp_minimal_exponent: four variables of degree 4", lambda: bp_minimal_exponent(BrieskornPham((4,) * 4)) == 1),
    Example("bp_minimal_exponent: single variable of degree 3", lambda: bp_minimal_exponent(BrieskornPham((3,))) == Fraction(1, 3)),
    Example("slice exponent n=4, m=2", lambda: slice_exponent_ordinary_mple(4, 2) == Fraction(3, 2)),
    Example("slice exponent n=7, m=2", lambda: slice_exponent_ordinary_mple(7, 2) == 3),
    Example("slice exponent n=3, m=3", lambda: slice_exponent_ordinary_mple(3, 3) == Fraction(2, 3)),
    Example(
        "min_product_rule for a=4, b=2, n=6",
        lambda: min_product_rule(ExponentValue(Fraction(4, 4)), ExponentValue(Fraction(1, 2))) == Fraction(1, 2),
    ),
    Example("classify 3/2 at k=0", lambda: (lambda r: r.is_k_du_bois and r.is_k_rational)(classify(ExponentValue("3/2"), 0))),
    Example("applicable n=7, m=2, k=2", lambda: hm_applicable(7, 2, 2) == (True, False)),
    Example("applicable n=7, m=2, k=1", lambda: hm_applicable(7, 2, 1) == (True, True)),
    Example(
        "blowup: quadric cone with g = x3^2",
        lambda: _transform("x1^2+x2^2+s*x3^2", ("x1", "x2", "x3"), "y1^2+y2^2+s", 2),
    ),
    Example(
        "blowup: weighted example a=3, b=2, n=4",
        lambda: _transform("x1^3+x2^3+x3^2+s*x4^2", ("x1", "x2", "x3", "x4"), "(y1^3+y2^3)*y4+y3^2+s", 2),
    ),
    Example("resolution shape: quadric cone", lambda: _shape("x1^2+x2^2+s*x3^2", ("x1", "x2", "x3"), 2)),
    Example("resolution shape: weighted example", lambda: _shape("x1^3+x2^3+x3^2+s*x4^2", ("x1", "x2", "x3", "x4"), 2)),
    Example("homogeneous family n=3, m=2, d=4, a=1 and its first chart", _family_chart),
]


def run_examples() -> list[tuple[str, bool]]:
    out = []
    for ex in EXAMPLES:
        try:
            ok = bool(ex.check())
        except Exception:  # a crash is a failed example, reported as such
            ok = False
        out.append((ex.name, ok))
    return out
