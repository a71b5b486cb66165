"""One-parameter deformations, the homogeneous example family and ordinary-point checks."""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Poly, evaluate, gradient, lowest_degree_part, restrict
from .errors import ContextMismatch, InvalidParameter, MissingAssignment, ZeroPolynomial

DEFAULT_SEED = 20240613

ORDINARY = "ORDINARY"
NOT_ORDINARY = "NOT_ORDINARY"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class DeformationFamily:
    """The family ``F = f + s*g``; ``s`` must not occur in ``f`` or ``g``."""

    f: Poly
    g: Poly
    parameter: str = "s"

    def __post_init__(self):
        if self.f.context != self.g.context:
            raise ContextMismatch(f"f and g live in different contexts: {self.f.context} vs {self.g.context}")
        if self.parameter in self.f.context:
            raise ContextMismatch(f"parameter {self.parameter!r} already occurs among the coordinates")

    @property
    def context(self) -> tuple[str, ...]:
        return self.f.context + (self.parameter,)

    @property
    def total(self) -> Poly:
        ctx = self.context
        return self.f.with_context(ctx) + Poly.var(self.parameter, ctx) * self.g.with_context(ctx)


@dataclass(frozen=True)
class SingularPointVerdict:
    point: tuple[Fraction, ...]
    on_hypersurface: bool
    singular: bool
    vanishing_partials: tuple[str, ...]


def _coords(p: Poly, point) -> tuple[Fraction, ...]:
    if isinstance(point, dict):
        missing = [v for v in p.context if v not in point]
        if missing:
            raise MissingAssignment(f"no value for variables {missing}")
        point = [point[v] for v in p.context]
    coords = tuple(Fraction(c) for c in point)
    if len(coords) != len(p.context):
        raise ContextMismatch(f"point has {len(coords)} coordinates, context {p.context} needs {len(p.context)}")
    return coords


def is_singular_point(p: Poly, point) -> SingularPointVerdict:
    coords = _coords(p, point)
    on = evaluate(p, coords) == 0
    vanishing = tuple(v for v, dp in gradient(p).items() if evaluate(dp, coords) == 0)
    return SingularPointVerdict(coords, on, on and len(vanishing) == len(p.context), vanishing)


def random_rational_points(
    n: int, count: int, seed: int = DEFAULT_SEED, bound: int = 100, zero_rate: float = 0.25
) -> list[tuple[Fraction, ...]]:
    """Seeded points with coordinates ``p/q``, ``|p|, q <= bound``.

    Each coordinate is zero with probability ``zero_rate`` so that special
    loci such as coordinate hyperplanes are actually hit.
    """
    rng = random.Random(seed)
    points = []
    for _ in range(count):
        coords = []
        for _ in range(n):
            if rng.random() < zero_rate:
                coords.append(Fraction(0))
            else:
                coords.append(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))
        points.append(tuple(coords))
    return points


@dataclass
class DeformationReport:
    seed: int | None
    checked: int = 0
    singular_on_both_sides: int = 0
    discrepancies: list[tuple[Fraction, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.discrepancies


def check_deformation_singular_locus(
    family: DeformationFamily,
    samples: Iterable[Sequence] | None = None,
    count: int = 1000,
    seed: int = DEFAULT_SEED,
) -> DeformationReport:
    """Compare singular points of the total space on ``s = 0`` with ``V_g ∩ Sing V_f``.

    The left side uses all partials of ``F`` including the one in ``s``; the
    right side evaluates ``g`` and the partials of ``f`` separately.
    """
    if samples is None:
        samples = random_rational_points(len(family.f.context), count, seed)
        report = DeformationReport(seed)
    else:
        report = DeformationReport(None)
    total = family.total
    for y in samples:
        y = _coords(family.f, y)
        left = is_singular_point(total, y + (Fraction(0),)).singular
        right = evaluate(family.g, y) == 0 and is_singular_point(family.f, y).singular
        report.checked += 1
        if left != right:
            report.discrepancies.append(y)
        elif left:
            report.singular_on_both_sides += 1
    return report


@dataclass(frozen=True)
class HomogeneousFamilySpec:
    """Parameters of ``sum_{k<=a} sum_{i!=k} x_i^m x_k^(d-m) + sum_{k>a} x_k^d``."""

    n: int
    m: int
    d: int
    a: int

    def __post_init__(self):
        n, m, d, a = self.n, self.m, self.d, self.a
        if n < 3:
            raise InvalidParameter(f"need n >= 3, got {n}")
        if m < 1 or d % m or d < 2 * m:
            raise InvalidParameter(f"need d a multiple of m with d >= 2m, got m={m}, d={d}")
        if not 1 <= a <= n:
            raise InvalidParameter(f"need 1 <= a <= n, got a={a}")

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(f"x{i}" for i in range(1, self.n + 1))

    def expected_term_count(self) -> int:
        """Distinct monomials; when ``d = 2m`` the pairs among the first ``a`` coincide."""
        count = self.a * (self.n - 1) + (self.n - self.a)
        if self.d == 2 * self.m:
            count -= self.a * (self.a - 1) // 2
        return count


def build_homogeneous_family(spec: HomogeneousFamilySpec) -> Poly:
    n, m, d, a = spec.n, spec.m, spec.d, spec.a
    terms: dict[tuple[int, ...], int] = {}

    def add(exps):
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + 1

    for k in range(a):
        for i in range(n):
            if i != k:
                exps = [0] * n
                exps[i] += m
                exps[k] += d - m
                add(exps)
    for k in range(a, n):
        exps = [0] * n
        exps[k] = d
        add(exps)
    return Poly(spec.variables, terms)


def is_diagonal_form(form: Poly) -> bool:
    """``sum c_i v_i^e`` with every context variable present and ``e >= 1``."""
    if form.is_zero():
        return False
    degree = form.degree()
    if degree < 1 or len(form) != len(form.context):
        return False
    seen = set()
    for exps in form.terms:
        support = [i for i, e in enumerate(exps) if e]
        if len(support) != 1 or exps[support[0]] != degree:
            return False
        seen.add(support[0])
    return len(seen) == len(form.context)


@dataclass(frozen=True)
class ChartRestriction:
    poly: Poly
    order: int | None
    lowest: Poly | None
    diagonal: bool


def chart_restrict(p: Poly, j: int) -> ChartRestriction:
    """Set the ``j``-th variable (1-based) to 1 and inspect the origin of that chart."""
    if not 1 <= j <= len(p.context):
        raise InvalidParameter(f"chart index {j} out of range 1..{len(p.context)}")
    q = restrict(p, {p.context[j - 1]: 1})
    if q.is_zero():
        return ChartRestriction(q, None, None, False)
    order, lowest = lowest_degree_part(q)
    return ChartRestriction(q, order, lowest, is_diagonal_form(lowest))


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank by exact Gaussian elimination."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                factor = mat[r][col] / mat[rank][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def quadric_matrix(form: Poly) -> list[list[Fraction]]:
    """Symmetric matrix of a quadratic form."""
    if form.degree() != 2 or not form.is_homogeneous():
        raise InvalidParameter("not a quadratic form")
    n = len(form.context)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for exps, c in form.terms.items():
        support = [i for i, e in enumerate(exps) if e]
        if len(support) == 1:
            (i,) = support
            mat[i][i] += c
        else:
            i, k = support
            mat[i][k] += c / 2
            mat[k][i] += c / 2
    return mat


def ordinary_point_certificate(p: Poly, center, m: int) -> str:
    """Decide whether ``center`` is an ordinary ``m``-fold point of ``p = 0``.

    Decidable cases: diagonal lowest forms, lowest forms missing a variable
    (their projective zero set is a cone, hence singular) and quadrics.
    """
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no multiplicity")
    order, form = lowest_degree_part(p, center)
    if order != m:
        return NOT_ORDINARY
    if is_diagonal_form(form):
        return ORDINARY
    if m >= 2 and len(form.variables_used()) < len(form.context):
        return NOT_ORDINARY
    if m == 2:
        return ORDINARY if rational_rank(quadric_matrix(form)) == len(form.context) else NOT_ORDINARY
    return UNKNOWN
