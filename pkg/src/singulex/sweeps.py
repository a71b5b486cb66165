"""Parameter sweeps over the identities the library verifies.

Each sweep returns a :class:`SweepResult`; results depend only on the bounds
and the seed, never on the number of workers.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import Poly
from .blowup import GRAPH_OVER_S, BlowupChart, blowup_transform, smoothness_certificate
from .exponents import BrieskornPham, applicable_range, bp_minimal_exponent, vfilt_gap
from .families import (
    DEFAULT_SEED,
    ORDINARY,
    DeformationFamily,
    HomogeneousFamilySpec,
    build_homogeneous_family,
    chart_restrict,
    check_deformation_singular_locus,
    ordinary_point_certificate,
)
from .milnor import bp_spectrum, check_jacobian_inclusion, check_power_inclusion, descriptors, milnor_number, reduced_bs_root_set


@dataclass
class SweepResult:
    name: str
    params: dict
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "checked": self.checked,
            "passed": self.passed,
            "failures": self.failures[:20],
            "failure_count": len(self.failures),
        }


def _ordered_map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- microlocal index identity ---------------------------------------------


def admissible_pairs(max_a: int, ms: Iterable[int]) -> list[tuple[int, int]]:
    """``(a_i, m_i)`` with ``a_i + 1`` not divisible by ``m_i``."""
    return [(a, m) for m in ms for a in range(max_a + 1) if (a + 1) % m]


def vfilt_identity_grid(max_a: int, ms: Sequence[int], n: int) -> tuple[int, int]:
    """Exact integer check of the index gap identity on the full grid.

    All three quantities are scaled by ``lcm(ms)`` so the comparison is exact.
    Returns ``(checked, violations)``.
    """
    scale = math.lcm(*ms)
    pairs = np.array(admissible_pairs(max_a, ms), dtype=np.int64)
    a, m = pairs[:, 0], pairs[:, 1]
    b, c = a % (m - 1), a // (m - 1)
    if not np.all(a == b + c * (m - 1)) or not np.all((b >= 0) & (b <= m - 2)):
        raise AssertionError("residue decomposition out of range")
    vt = scale * (b + 1) // m + scale * c
    br = scale * (a + 1) // m
    gap = scale * c // m
    # the scaled values must be integral for the comparison to be exact
    if np.any((scale * (b + 1)) % m) or np.any((scale * (a + 1)) % m) or np.any((scale * c) % m):
        raise AssertionError("scaling does not clear denominators")
    checked = violations = 0
    for k in range(1, n + 1):
        if k == 1:
            diff = vt - br - gap
            checked += diff.size
            violations += int(np.count_nonzero(diff)) + int(np.count_nonzero(gap < 0))
            continue
        tail_shape = (len(pairs),) * (k - 1)
        tail_vt = sum(np.reshape(vt, [-1 if i == j else 1 for i in range(k - 1)]) for j in range(k - 1))
        tail_br = sum(np.reshape(br, [-1 if i == j else 1 for i in range(k - 1)]) for j in range(k - 1))
        tail_gap = sum(np.reshape(gap, [-1 if i == j else 1 for i in range(k - 1)]) for j in range(k - 1))
        tail_diff = np.broadcast_to(tail_vt - tail_br - tail_gap, tail_shape)
        for i in range(len(pairs)):
            diff = tail_diff + (vt[i] - br[i] - gap[i])
            checked += diff.size
            violations += int(np.count_nonzero(diff))
    return checked, violations


def sweep_vfilt(
    max_a: int = 12, min_m: int = 2, max_m: int = 7, max_n: int = 4, exhaustive_n: int = 2, sample: int = 20000,
    seed: int = DEFAULT_SEED,
) -> SweepResult:
    """Gap identity: integer kernel on the whole grid, scalar path on part of it."""
    ms = list(range(min_m, max_m + 1))
    result = SweepResult(
        "vfilt",
        {"max_a": max_a, "m": [min_m, max_m], "max_n": max_n, "exhaustive_n": exhaustive_n, "sample": sample, "seed": seed},
    )
    checked, violations = vfilt_identity_grid(max_a, ms, max_n)
    result.checked += checked
    if violations:
        result.failures.append(f"integer kernel found {violations} violations")
    pairs = admissible_pairs(max_a, ms)

    def scalar(combo) -> str | None:
        a = tuple(x[0] for x in combo)
        d = BrieskornPham(tuple(x[1] for x in combo))
        report = vfilt_gap(a, d)
        expected = sum((Fraction(x // (mm - 1), mm) for x, mm in zip(a, d.exponents)), Fraction(0))
        if report.alpha_vtilde.value - report.alpha_br.value != expected or report.gap != expected:
            return f"a={a} m={d.exponents}"
        return None

    combos = [c for n in range(1, min(exhaustive_n, max_n) + 1) for c in itertools.product(pairs, repeat=n)]
    rng = random.Random(seed)
    for _ in range(sample if max_n > exhaustive_n else 0):
        n = rng.randint(exhaustive_n + 1, max_n)
        combos.append(tuple(rng.choice(pairs) for _ in range(n)))
    for combo in combos:
        bad = scalar(combo)
        result.checked += 1
        if bad:
            result.failures.append(bad)
    return result


# -- blow-up identities ------------------------------------------------------


def weighted_family(n: int, a: int, b: int) -> Poly:
    """``sum_{i<=n-2} x_i^a + x_{n-1}^b + s x_n^b`` in context ``x1..xn, s``."""
    ctx = tuple(f"x{i}" for i in range(1, n + 1)) + ("s",)
    terms = {}
    for i in range(n - 2):
        terms[tuple(a if j == i else 0 for j in range(n + 1))] = 1
    terms[tuple(b if j == n - 2 else 0 for j in range(n + 1))] = 1
    terms[tuple(b if j == n - 1 else (1 if j == n else 0) for j in range(n + 1))] = 1
    return Poly(ctx, terms)


def expected_weighted_proper(n: int, a: int, b: int) -> Poly:
    ctx = tuple(f"y{i}" for i in range(1, n + 1)) + ("s",)
    terms = {}
    for i in range(n - 2):
        exps = [0] * (n + 1)
        exps[i] = a
        exps[n - 1] = a - b
        terms[tuple(exps)] = 1
    terms[tuple(b if j == n - 2 else 0 for j in range(n + 1))] = 1
    terms[tuple(1 if j == n else 0 for j in range(n + 1))] = 1
    return Poly(ctx, terms)


def sweep_weighted_blowup(max_a: int = 6, min_n: int = 4, max_n: int = 6) -> SweepResult:
    result = SweepResult("blowup-weighted", {"max_a": max_a, "n": [min_n, max_n]})
    for n in range(min_n, max_n + 1):
        chart = BlowupChart.principal([f"x{i}" for i in range(1, n + 1)])
        for a in range(3, max_a + 1):
            for b in range(2, a):
                t = blowup_transform(weighted_family(n, a, b), chart)
                result.checked += 1
                if t.exceptional_multiplicity != b or t.proper != expected_weighted_proper(n, a, b):
                    result.failures.append(f"n={n} a={a} b={b}: got {t.proper} with multiplicity {t.exceptional_multiplicity}")
    return result


def random_graded_part(rng: random.Random, n: int, degree: int, max_terms: int = 3, normal_degree: int = 2) -> dict:
    """Random terms of degree ``degree`` in ``x1..x_{n-1}`` with coefficients in ``x_n``."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * (n + 1)
        for _ in range(degree):
            exps[rng.randrange(n - 1)] += 1
        exps[n - 1] = rng.randint(0, normal_degree)
        coeff = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
        terms[tuple(exps)] = terms.get(tuple(exps), 0) + coeff
    return {e: c for e, c in terms.items() if c}


def ordinary_model(n: int, m: int, higher: Sequence[dict]) -> tuple[Poly, list[Poly]]:
    """Local model ``sum_j f_{j+m} + s x_n^m`` and its graded parts (in ``x``)."""
    ctx = tuple(f"x{i}" for i in range(1, n + 1)) + ("s",)
    base = {tuple(m if j == i else 0 for j in range(n + 1)): 1 for i in range(n - 1)}
    parts = [Poly(ctx, base)] + [Poly(ctx, h) for h in higher]
    g_term = Poly(ctx, {tuple(m if j == n - 1 else (1 if j == n else 0) for j in range(n + 1)): 1})
    return sum(parts, Poly.zero(ctx)) + g_term, parts


def expected_ordinary_proper(n: int, parts: Sequence[Poly]) -> Poly:
    """``sum_j f_{j+m}(y) y_n^j + s``, assembled term by term."""
    ctx = tuple(f"y{i}" for i in range(1, n + 1)) + ("s",)
    terms: dict = {}
    for j, part in enumerate(parts):
        for exps, c in part.terms.items():
            e = list(exps)
            e[n - 1] += j
            terms[tuple(e)] = terms.get(tuple(e), 0) + c
    terms[tuple(1 if i == n else 0 for i in range(n + 1))] = 1
    return Poly(ctx, terms)


def sweep_ordinary_blowup(max_m: int = 5, max_n: int = 6, seed: int = DEFAULT_SEED, variants: int = 3) -> SweepResult:
    result = SweepResult("blowup-ordinary", {"max_m": max_m, "max_n": max_n, "seed": seed, "variants": variants})
    rng = random.Random(seed)
    for n in range(2, max_n + 1):
        chart = BlowupChart.principal([f"x{i}" for i in range(1, n + 1)])
        for m in range(2, max_m + 1):
            for extra in range(3):
                for _ in range(variants if extra else 1):
                    higher = [random_graded_part(rng, n, m + j) for j in range(1, extra + 1)]
                    model, parts = ordinary_model(n, m, higher)
                    t = blowup_transform(model, chart)
                    result.checked += 1
                    ok = (
                        t.exceptional_multiplicity == m
                        and t.proper == expected_ordinary_proper(n, parts)
                        and smoothness_certificate(t.proper).kind == GRAPH_OVER_S
                        and t.proper * Poly.var(t.exceptional, t.total.context) ** m == t.total
                    )
                    if not ok:
                        result.failures.append(f"n={n} m={m}: model {model}")
    return result


# -- spectra and inclusions --------------------------------------------------


def sweep_spectrum(max_m: int = 6, max_n: int = 4, workers: int = 1) -> SweepResult:
    result = SweepResult("spectrum", {"max_m": max_m, "max_n": max_n})

    def check(d: BrieskornPham) -> str | None:
        spec = bp_spectrum(d)
        alpha = bp_minimal_exponent(d).value
        problems = []
        if spec.total != milnor_number(d):
            problems.append("total multiplicity")
        if any(spec.mult(v) != spec.mult(d.n - v) for v in spec.values()):
            problems.append("symmetry")
        if spec.min != alpha:
            problems.append("minimum")
        if max(reduced_bs_root_set(d)) != -spec.min:
            problems.append("maximal root")
        return f"m={d.exponents}: {', '.join(problems)}" if problems else None

    items = list(descriptors(max_m, max_n))
    for bad in _ordered_map(check, items, workers):
        result.checked += 1
        if bad:
            result.failures.append(bad)
    return result


def sweep_inclusions(
    max_m: int = 5, max_n: int = 3, degree_bound: int = 12, max_a: int = 6, workers: int = 1
) -> SweepResult:
    result = SweepResult(
        "inclusions", {"max_m": max_m, "max_n": max_n, "degree_bound": degree_bound, "max_a": max_a}
    )
    items = list(descriptors(max_m, max_n))

    def jac(d: BrieskornPham) -> str | None:
        r = check_jacobian_inclusion(d, degree_bound)
        return None if r.passed else f"m={d.exponents}: x^{r.counterexample} escapes the Jacobian ideal"

    for bad in _ordered_map(jac, items, workers):
        result.checked += 1
        if bad:
            result.failures.append(bad)

    def power(d: BrieskornPham) -> list[str]:
        out = []
        for a in itertools.product(range(max_a + 1), repeat=d.n):
            r = check_power_inclusion(d, a)
            if not r.passed:
                out.append(f"m={d.exponents} a={a}: f^{r.k} x^a escapes the Jacobian ideal")
        return out

    for d, bad in zip(items, _ordered_map(power, items, workers)):
        result.checked += (max_a + 1) ** d.n
        result.failures.extend(bad)
    return result


# -- deformations, thresholds, family charts --------------------------------


def designated_families() -> list[tuple[str, DeformationFamily]]:
    xy = ("x", "y")
    fam = build_homogeneous_family(HomogeneousFamilySpec(3, 2, 4, 1))
    return [
        ("x^2*y, y", DeformationFamily(Poly.parse("x^2*y", xy), Poly.parse("y", xy))),
        ("x^2+y^3, x", DeformationFamily(Poly.parse("x^2+y^3", xy), Poly.parse("x", xy))),
        ("family(3,2,4,1), x1^4", DeformationFamily(fam, Poly.parse("x1^4", fam.context))),
    ]


def sweep_deformation(count: int = 1000, seed: int = DEFAULT_SEED) -> SweepResult:
    result = SweepResult("deformation", {"count": count, "seed": seed})
    for label, fam in designated_families():
        report = check_deformation_singular_locus(fam, count=count, seed=seed)
        result.checked += report.checked
        for y in report.discrepancies:
            result.failures.append(f"{label}: point {[str(c) for c in y]}")
    return result


def sweep_applicable(n: int = 7, m: int = 2) -> SweepResult:
    result = SweepResult("applicable", {"n": n, "m": m})
    du_bois, rational = applicable_range(n, m)
    bound = Fraction(n - 1, m) - 1
    result.checked = 1
    expected_db = [k for k in range(0, n + 1) if k <= bound]
    expected_rat = [k for k in range(0, n + 1) if k < bound]
    if du_bois != expected_db or rational != expected_rat:
        result.failures.append(f"du Bois {du_bois} vs {expected_db}, rational {rational} vs {expected_rat}")
    result.params.update({"du_bois": du_bois, "rational": rational})
    return result


def sweep_family(max_n: int = 5, ms: Sequence[int] = (2, 3)) -> SweepResult:
    result = SweepResult("family", {"max_n": max_n, "m": list(ms)})
    for n in range(3, max_n + 1):
        for m in ms:
            for a in range(1, n + 1):
                spec = HomogeneousFamilySpec(n, m, 2 * m, a)
                f = build_homogeneous_family(spec)
                if len(f) != spec.expected_term_count() or not f.is_homogeneous() or f.degree() != 2 * m:
                    result.failures.append(f"n={n} m={m} a={a}: unexpected shape {f}")
                for j in range(1, a + 1):
                    chart = chart_restrict(f, j)
                    cert = ordinary_point_certificate(chart.poly, [0] * len(chart.poly.context), m)
                    result.checked += 1
                    if cert != ORDINARY or chart.order != m or not chart.diagonal:
                        result.failures.append(f"n={n} m={m} a={a} j={j}: {cert}, lowest {chart.lowest}")
    return result


SWEEPS = {
    "vfilt": sweep_vfilt,
    "blowup-weighted": sweep_weighted_blowup,
    "blowup-ordinary": sweep_ordinary_blowup,
    "spectrum": sweep_spectrum,
    "inclusions": sweep_inclusions,
    "deformation": sweep_deformation,
    "applicable": sweep_applicable,
    "family": sweep_family,
}
