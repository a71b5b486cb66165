"""Command-line interface.

Exit status: 0 on success, 1 on a domain error (the error code is printed),
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from fractions import Fraction

from . import __version__
from .algebra import format_rational, parse_polynomial
from .blowup import BlowupChart, iterated_blowup, verify_resolution_shape
from .errors import SingulexError
from .exponents import (
    BrieskornPham,
    ExponentValue,
    applicable_range,
    bp_minimal_exponent,
    classify,
    decrease_predicate,
    family_exponent_conjecture,
    hm_applicable,
    min_product_rule,
    slice_exponent_ordinary_mple,
    vfilt_gap,
)
from .families import (
    DEFAULT_SEED,
    DeformationFamily,
    HomogeneousFamilySpec,
    build_homogeneous_family,
    chart_restrict,
    check_deformation_singular_locus,
    is_singular_point,
    ordinary_point_certificate,
)
from .milnor import (
    bp_spectrum,
    check_jacobian_inclusion,
    check_power_inclusion,
    jacobian_ideal,
    jacobian_membership,
    milnor_number,
    reduced_bs_root_set,
)
from .replay import run_examples
from .sweeps import SWEEPS


class UsageError(Exception):
    pass


def _ints(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def _int(text: str | None, flag: str) -> int:
    if text is None:
        raise UsageError(f"{flag} is required")
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{flag}: expected an integer, got {text!r}") from None


def _exponent(text: str, flag: str) -> ExponentValue:
    try:
        return ExponentValue(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag}: expected a rational 'p/q' or 'inf', got {text!r}") from None


def _names(text: str | None) -> list[str] | str:
    return "infer" if text is None else [v.strip() for v in text.split(",") if v.strip()]


def _rat(value: Fraction) -> str:
    return format_rational(value)


def _bool(value: bool) -> str:
    return "true" if value else "false"


# -- subcommands -------------------------------------------------------------
# Each returns (json_payload, text_lines).


def cmd_minexp(args) -> tuple[object, list[str]]:
    kind = args.kind
    if kind == "bp":
        if args.m is None:
            raise UsageError("--m is required")
        d = BrieskornPham.of(_ints(args.m, "--m"))
        value = bp_minimal_exponent(d)
        return {"kind": kind, "m": list(d.exponents), "minimal_exponent": str(value)}, [f"minimal_exponent: {value}"]
    if kind == "slice":
        n, m = _int(args.n, "--n"), _int(args.m, "--m")
        value = slice_exponent_ordinary_mple(n, m)
        return {"kind": kind, "n": n, "m": m, "minimal_exponent": str(value)}, [f"minimal_exponent: {value}"]
    if kind == "product":
        if not args.alpha or len(args.alpha) != 2:
            raise UsageError("--alpha must be given twice for --kind product")
        a1, a2 = (_exponent(x, "--alpha") for x in args.alpha)
        value = min_product_rule(a1, a2)
        return {"kind": kind, "alpha": [str(a1), str(a2)], "minimal_exponent": str(value)}, [
            f"minimal_exponent: {value}"
        ]
    if kind == "decrease":
        n, a, b = _int(args.n, "--n"), _int(args.a, "--a"), _int(args.b, "--b")
        decreases = decrease_predicate(n, a, b)
        h1, h2 = ExponentValue(Fraction(n - 2, a)), ExponentValue(Fraction(1, a - b))
        payload = {
            "kind": kind,
            "n": n,
            "a": a,
            "b": b,
            "alpha_h1": str(h1),
            "alpha_h2": str(h2),
            "alpha_h": str(min_product_rule(h1, h2)),
            "decreases": decreases,
        }
        return payload, [f"alpha_h1: {h1}", f"alpha_h2: {h2}", f"decreases: {_bool(decreases)}"]
    if kind == "conjecture":
        n, d = _int(args.n, "--n"), _int(args.d, "--d")
        c = family_exponent_conjecture(n, d)
        return {"kind": kind, "n": n, "d": d, "value": str(c.value), "status": c.status}, [
            f"value: {c.value} ({c.status})"
        ]
    raise UsageError(f"--kind: unknown kind {kind!r}")


def cmd_classify(args):
    if (args.alpha is None) == (args.m is None):
        raise UsageError("give exactly one of --alpha or --m")
    alpha = _exponent(args.alpha, "--alpha") if args.alpha else bp_minimal_exponent(BrieskornPham.of(_ints(args.m, "--m")))
    r = classify(alpha, args.k)
    payload = {"k": r.k, "minimal_exponent": str(r.minimal_exponent), "du_bois": r.is_k_du_bois, "rational": r.is_k_rational}
    return payload, [f"minimal_exponent: {r.minimal_exponent}", f"du_bois: {_bool(r.is_k_du_bois)}", f"rational: {_bool(r.is_k_rational)}"]


def cmd_applicable(args):
    bound = Fraction(args.n - 1, args.m) - 1
    if args.k is None:
        hm_applicable(args.n, args.m, 0)  # parameter validation
        du_bois, rational = applicable_range(args.n, args.m)
        payload = {"n": args.n, "m": args.m, "threshold": _rat(bound), "du_bois_k": du_bois, "rational_k": rational}
        return payload, [f"threshold: {_rat(bound)}", f"du_bois_k: {du_bois}", f"rational_k: {rational}"]
    db, rat = hm_applicable(args.n, args.m, args.k)
    payload = {"n": args.n, "m": args.m, "k": args.k, "threshold": _rat(bound), "du_bois": db, "rational": rat}
    return payload, [f"du_bois: {_bool(db)}", f"rational: {_bool(rat)}"]


def cmd_vfilt(args):
    d = BrieskornPham.of(_ints(args.m, "--m"))
    r = vfilt_gap(_ints(args.a, "--a"), d)
    payload = {"alpha_vtilde": str(r.alpha_vtilde), "alpha_br": str(r.alpha_br), "gap": _rat(r.gap)}
    return payload, [f"{k}: {v}" for k, v in payload.items()]


def cmd_spectrum(args):
    d = BrieskornPham.of(_ints(args.m, "--m"))
    spec = bp_spectrum(d)
    lines = [f"{e['value']}\t{e['mult']}" for e in spec.to_json()]
    if not args.details:
        return spec.to_json(), lines
    roots = sorted(reduced_bs_root_set(d), reverse=True)
    payload = {
        "m": list(d.exponents),
        "spectrum": spec.to_json(),
        "milnor_number": milnor_number(d),
        "minimal_exponent": str(bp_minimal_exponent(d)),
        "reduced_bs_roots": [_rat(r) for r in roots],
    }
    lines += [
        f"milnor_number: {payload['milnor_number']}",
        f"minimal_exponent: {payload['minimal_exponent']}",
        "reduced_bs_roots: " + " ".join(payload["reduced_bs_roots"]),
    ]
    return payload, lines


def cmd_ideal(args):
    d = BrieskornPham.of(_ints(args.m, "--m"))
    if args.g is not None:
        names = _names(args.vars) if args.vars else list(d.variables())
        g = parse_polynomial(args.g, names)
        member = jacobian_membership(g, d)
        payload = {"g": str(g), "ideal": str(jacobian_ideal(d, g.context)), "member": member}
        return payload, [f"ideal: {payload['ideal']}", f"member: {_bool(member)}"]
    if args.degree_bound is not None:
        r = check_jacobian_inclusion(d, args.degree_bound)
        payload = {
            "check": "jacobian_inclusion",
            "m": list(d.exponents),
            "degree_bound": args.degree_bound,
            "threshold": _rat(r.threshold),
            "checked": r.checked,
            "claims": r.claims,
            "passed": r.passed,
            "counterexample": list(r.counterexample) if r.counterexample else None,
        }
        return payload, [f"passed: {_bool(r.passed)}", f"checked: {r.checked}", f"claims: {r.claims}"]
    a = _ints(args.a, "--a")
    r = check_power_inclusion(d, a)
    payload = {
        "check": "power_inclusion",
        "m": list(d.exponents),
        "a": list(a),
        "bound": _rat(r.bound),
        "k": r.k,
        "product": str(r.product),
        "passed": r.passed,
    }
    return payload, [f"k: {r.k}", f"product: {r.product}", f"passed: {_bool(r.passed)}"]


def _parse_chart(text: str) -> BlowupChart:
    if ":" in text:
        src, tgt = text.split(":", 1)
        return BlowupChart(tuple(src.split(",")), tuple(tgt.split(",")))
    return BlowupChart.principal(text.split(","))


def cmd_blowup(args):
    p = parse_polynomial(args.poly, _names(args.vars))
    if args.verify_shape is not None:
        chart = _parse_chart(args.chart[0]) if args.chart else None
        r = verify_resolution_shape(p, args.verify_shape, parameter=args.parameter, chart=chart)
        lowest = None
        if r.central_fiber_lowest:
            lowest = {"order": r.central_fiber_lowest[0], "form": str(r.central_fiber_lowest[1])}
        payload = {
            "ok": r.ok,
            "certificate": r.certificate.kind,
            **r.transform.to_json(),
            "central_fiber_lowest": lowest,
            "failures": r.failures,
        }
        lines = [f"ok: {_bool(r.ok)}", f"certificate: {r.certificate.kind}", f"mult: {r.transform.exceptional_multiplicity}", f"proper: {r.transform.proper}"]
        return payload, lines + [f"failure: {f}" for f in r.failures]
    if args.chart:
        charts = [_parse_chart(c) for c in args.chart]
    else:
        charts = [BlowupChart.principal([v for v in p.context if v != args.parameter])]
    chain = iterated_blowup(p, charts)
    payload = [t.to_json() for t in chain]
    lines = []
    for i, t in enumerate(chain, 1):
        lines += [f"step {i}: mult {t.exceptional_multiplicity}", f"  total: {t.total}", f"  proper: {t.proper}"]
    return payload, lines


def cmd_family(args):
    spec = HomogeneousFamilySpec(args.n, args.m, args.d, args.a)
    f = build_homogeneous_family(spec)
    js = args.chart or list(range(1, spec.a + 1))
    charts = []
    for j in js:
        c = chart_restrict(f, j)
        cert = ordinary_point_certificate(c.poly, [0] * len(c.poly.context), spec.m) if not c.poly.is_zero() else "NOT_ORDINARY"
        charts.append(
            {
                "j": j,
                "restricted": str(c.poly),
                "order": c.order,
                "lowest": None if c.lowest is None else str(c.lowest),
                "diagonal": c.diagonal,
                "certificate": cert,
            }
        )
    conj = family_exponent_conjecture(spec.n, spec.d)
    payload = {
        "polynomial": str(f),
        "terms": len(f),
        "degree": f.degree(),
        "charts": charts,
        "conjectured_minimal_exponent": {"value": str(conj.value), "status": conj.status},
    }
    lines = [f"f = {f}"] + [f"chart {c['j']}: lowest {c['lowest']} -> {c['certificate']}" for c in charts]
    lines.append(f"conjectured minimal exponent: {conj.value} ({conj.status})")
    return payload, lines


def cmd_deform(args):
    names = _names(args.vars)
    if names == "infer":
        f0 = parse_polynomial(args.f)
        g0 = parse_polynomial(args.g)
        ctx = tuple(dict.fromkeys(f0.context + g0.context))
    else:
        ctx = tuple(names)
    f, g = parse_polynomial(args.f, ctx), parse_polynomial(args.g, ctx)
    if args.at is not None:
        point = [Fraction(x) for x in args.at.split(",")]
        v = is_singular_point(f, point)
        payload = {
            "point": [_rat(c) for c in v.point],
            "on_hypersurface": v.on_hypersurface,
            "singular": v.singular,
            "vanishing_partials": list(v.vanishing_partials),
        }
        return payload, [f"on_hypersurface: {_bool(v.on_hypersurface)}", f"singular: {_bool(v.singular)}"]
    fam = DeformationFamily(f, g, args.parameter)
    samples = None
    if args.points is not None:
        try:
            raw = json.loads(args.points)
            samples = [[Fraction(c) for c in pt] for pt in raw]
        except (ValueError, TypeError, ZeroDivisionError):
            raise UsageError("--points: expected a JSON array of arrays of rational strings") from None
    r = check_deformation_singular_locus(fam, samples=samples, count=args.samples, seed=args.seed)
    payload = {
        "seed": r.seed,
        "checked": r.checked,
        "singular_on_both_sides": r.singular_on_both_sides,
        "discrepancies": [[_rat(c) for c in y] for y in r.discrepancies],
        "passed": r.passed,
    }
    return payload, [f"checked: {r.checked}", f"singular_on_both_sides: {r.singular_on_both_sides}", f"passed: {_bool(r.passed)}"]


def cmd_sweep(args):
    names = list(SWEEPS) if args.name == "all" else [args.name]
    results = []
    for name in names:
        fn = SWEEPS[name]
        kwargs = {}
        if name in ("vfilt", "blowup-ordinary", "deformation") and args.seed is not None:
            kwargs["seed"] = args.seed
        if name in ("spectrum", "inclusions"):
            kwargs["workers"] = args.workers
        results.append(fn(**kwargs).to_json())
    payload = results[0] if len(results) == 1 else results
    lines = [f"{r['name']}: {'PASS' if r['passed'] else 'FAIL'} ({r['checked']} checked)" for r in results]
    return payload, lines


COMMANDS = {
    "minexp": cmd_minexp,
    "classify": cmd_classify,
    "applicable": cmd_applicable,
    "vfilt": cmd_vfilt,
    "spectrum": cmd_spectrum,
    "ideal": cmd_ideal,
    "blowup": cmd_blowup,
    "family": cmd_family,
    "deform": cmd_deform,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=None)

    parser = argparse.ArgumentParser(prog="singulex", description="Exact invariants of hypersurface singularities.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--paper-examples", action="store_true", help="replay the golden examples")
    parser.add_argument("--format", choices=["text", "json"], default=None, dest="top_format")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("minexp", parents=[common], help="minimal exponents")
    p.add_argument("--kind", choices=["bp", "slice", "product", "decrease", "conjecture"], default="bp")
    p.add_argument("--m", help="exponent list (bp) or multiplicity (slice)")
    p.add_argument("--n")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--d")
    p.add_argument("--alpha", action="append", help="exponent value, given twice for --kind product")

    p = sub.add_parser("classify", parents=[common], help="k-du Bois / k-rational test")
    p.add_argument("--alpha", help="minimal exponent, 'p/q' or 'inf'")
    p.add_argument("--m", help="Brieskorn-Pham exponents instead of --alpha")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("applicable", parents=[common], help="thresholds of the blow-up criterion")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int)

    p = sub.add_parser("vfilt", parents=[common], help="microlocal and Brieskorn-lattice indices of x^a")
    p.add_argument("--m", required=True)
    p.add_argument("--a", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="Brieskorn-Pham spectrum")
    p.add_argument("--m", required=True)
    p.add_argument("--details", action="store_true", help="include Milnor number and Bernstein-Sato roots")

    p = sub.add_parser("ideal", parents=[common], help="Jacobian ideal membership and inclusion checks")
    p.add_argument("--m", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--g", help="polynomial to test for membership")
    group.add_argument("--degree-bound", type=int, help="check the microlocal inclusion up to this degree")
    group.add_argument("--a", help="check f^k x^a for the least admissible k")
    p.add_argument("--vars", help="variable names for --g")

    p = sub.add_parser("blowup", parents=[common], help="principal-chart point blow-ups")
    p.add_argument("--poly", required=True)
    p.add_argument("--vars")
    p.add_argument("--chart", action="append", help="SRC1,..,SRCn[:TGT1,..,TGTn]; repeat to iterate")
    p.add_argument("--parameter", default="s")
    p.add_argument("--verify-shape", type=int, metavar="M", help="check the resolution shape for multiplicity M")

    p = sub.add_parser("family", parents=[common], help="homogeneous example family and its charts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--chart", type=int, action="append")

    p = sub.add_parser("deform", parents=[common], help="singular points of f + s*g on s = 0")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--vars")
    p.add_argument("--parameter", default="s")
    p.add_argument("--points", help="JSON array of points, each an array of rational strings")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--at", help="report whether this point is a singular point of f = 0")

    p = sub.add_parser("sweep", parents=[common], help="run a verification sweep")
    p.add_argument("--name", choices=sorted(SWEEPS) + ["all"], required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    return parser


def _emit(payload, lines, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=False) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    fmt = getattr(args, "format", None) or args.top_format or "text"

    if args.paper_examples:
        results = run_examples()
        payload = [{"example": name, "passed": ok} for name, ok in results]
        lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in results]
        _emit(payload, lines, fmt, out)
        return 0 if all(ok for _, ok in results) else 1
    if not args.command:
        parser.print_usage(err)
        err.write("singulex: error: a subcommand or --paper-examples is required\n")
        return 2

    try:
        payload, lines = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(err)
        err.write(f"singulex {args.command}: error: {exc}\n")
        return 2
    except SingulexError as exc:
        if fmt == "json":
            out.write(json.dumps({"error": exc.code, "message": str(exc)}) + "\n")
        else:
            err.write(f"error [{exc.code}]: {exc}\n")
        return 1
    _emit(payload, lines, fmt, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
