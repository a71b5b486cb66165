"""Spectra, Milnor numbers and Jacobian-ideal checks for Brieskorn-Pham polynomials."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Poly, check_term_cap, format_polynomial, partial_derivative
from .errors import ContextMismatch, InvalidParameter
from .exponents import BrieskornPham, alpha_vtilde, bp_minimal_exponent


class Spectrum:
    """Multiset of spectral numbers."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict[Fraction, int]):
        self.entries = dict(sorted((Fraction(k), v) for k, v in entries.items() if v))
        if any(v < 0 for v in self.entries.values()):
            raise InvalidParameter("multiplicities must be positive")

    def __eq__(self, other) -> bool:
        if isinstance(other, Spectrum):
            return self.entries == other.entries
        return NotImplemented

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}: {v}" for k, v in self.entries.items())
        return f"Spectrum({{{inner}}})"

    def __iter__(self) -> Iterator[Fraction]:
        for value, mult in self.entries.items():
            for _ in range(mult):
                yield value

    def mult(self, value) -> int:
        return self.entries.get(Fraction(value), 0)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    @property
    def min(self) -> Fraction:
        return next(iter(self.entries))

    @property
    def max(self) -> Fraction:
        return next(reversed(self.entries))

    def values(self) -> list[Fraction]:
        return list(self.entries)

    def to_json(self) -> list[dict]:
        return [
            {"value": f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator), "mult": k}
            for v, k in self.entries.items()
        ]


def milnor_number(d: BrieskornPham) -> int:
    return math.prod(m - 1 for m in d.exponents)


def bp_spectrum(d: BrieskornPham) -> Spectrum:
    """Spectrum ``{sum (a_i+1)/m_i : 0 <= a_i <= m_i - 2}``.

    Built as an iterated convolution of the one-variable spectra, so the cost
    is governed by the number of distinct values rather than the Milnor number.
    """
    check_term_cap(milnor_number(d), f"spectrum of {d.exponents}")
    acc: Counter[Fraction] = Counter({Fraction(0): 1})
    for m in d.exponents:
        step: Counter[Fraction] = Counter()
        for value, mult in acc.items():
            for k in range(1, m):
                step[value + Fraction(k, m)] += mult
        acc = step
    return Spectrum(acc)


def reduced_bs_root_set(d: BrieskornPham) -> frozenset[Fraction]:
    """Roots of ``b_f(s)/(s+1)``: the negated distinct spectral numbers."""
    roots = frozenset(-v for v in bp_spectrum(d).values())
    if max(roots) != -bp_minimal_exponent(d).value:
        raise AssertionError(f"maximal root disagrees with the minimal exponent for {d.exponents}")
    return roots


def _divides(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(u, v))


@dataclass(frozen=True)
class MonomialIdeal:
    """Ideal generated by monomials; the generator list is kept reduced."""

    context: tuple[str, ...]
    generators: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        gens = sorted(set(tuple(g) for g in self.generators), key=lambda g: (sum(g), g))
        reduced: list[tuple[int, ...]] = []
        for g in gens:
            if len(g) != len(self.context):
                raise ContextMismatch(f"generator {g} does not match context {self.context}")
            if not any(_divides(r, g) for r in reduced):
                reduced.append(g)
        object.__setattr__(self, "generators", tuple(reduced))

    def contains_monomial(self, exps: Sequence[int]) -> bool:
        return any(_divides(g, exps) for g in self.generators)

    def contains(self, g: Poly) -> bool:
        if g.context != self.context:
            raise ContextMismatch(f"polynomial context {g.context} differs from ideal context {self.context}")
        return all(self.contains_monomial(e) for e in g.terms)

    def __str__(self) -> str:
        gens = [format_polynomial(Poly.monomial(g, self.context)) for g in self.generators]
        return "(" + ", ".join(gens) + ")"


def jacobian_ideal(d: BrieskornPham, context: Sequence[str] | None = None) -> MonomialIdeal:
    """Jacobian ideal of ``f = sum x_i^m_i``, read off from the partial derivatives."""
    f = d.polynomial(context)
    gens = []
    for v in f.context:
        (exps,) = partial_derivative(f, v).terms
        gens.append(exps)
    return MonomialIdeal(f.context, tuple(gens))


def jacobian_membership(g: Poly, d: BrieskornPham) -> bool:
    if len(g.context) != d.n:
        raise ContextMismatch(f"polynomial has {len(g.context)} variables, descriptor has {d.n}")
    return jacobian_ideal(d, g.context).contains(g)


def monomials_up_to(n: int, degree_bound: int) -> Iterator[tuple[int, ...]]:
    for total in range(degree_bound + 1):
        for cut in itertools.combinations(range(total + n - 1), n - 1):
            bounds = (-1,) + cut + (total + n - 1,)
            yield tuple(bounds[i + 1] - bounds[i] - 1 for i in range(n))


@dataclass(frozen=True)
class InclusionReport:
    descriptor: tuple[int, ...]
    passed: bool
    checked: int
    claims: int
    counterexample: tuple[int, ...] | None = None
    threshold: Fraction | None = None


def check_jacobian_inclusion(d: BrieskornPham, degree_bound: int) -> InclusionReport:
    """Every monomial with microlocal index above ``n - alpha_f`` lies in the Jacobian ideal."""
    if degree_bound < 0:
        raise InvalidParameter("degree bound must be non-negative")
    check_term_cap(math.comb(degree_bound + d.n, d.n), f"monomial enumeration up to degree {degree_bound}")
    threshold = d.n - bp_minimal_exponent(d).value
    ideal = jacobian_ideal(d)
    checked = claims = 0
    for exps in monomials_up_to(d.n, degree_bound):
        checked += 1
        if alpha_vtilde(exps, d).value > threshold:
            claims += 1
            if not ideal.contains_monomial(exps):
                return InclusionReport(d.exponents, False, checked, claims, exps, threshold)
    return InclusionReport(d.exponents, True, checked, claims, None, threshold)


@dataclass(frozen=True)
class PowerInclusionReport:
    descriptor: tuple[int, ...]
    monomial: tuple[int, ...]
    bound: Fraction
    k: int
    product: Poly
    passed: bool


def minimal_power(d: BrieskornPham, a: Sequence[int]) -> tuple[Fraction, int]:
    """Threshold ``n - alpha_f - alpha(x^a)`` and the least ``k >= 0`` exceeding it."""
    bound = d.n - bp_minimal_exponent(d).value - alpha_vtilde(a, d).value
    return bound, max(0, math.floor(bound) + 1)


def check_power_inclusion(d: BrieskornPham, a: Sequence[int]) -> PowerInclusionReport:
    """Expand ``f^k x^a`` for the least admissible ``k`` and test Jacobian membership."""
    bound, k = minimal_power(d, a)
    f = d.polynomial()
    product = (f**k) * Poly.monomial(tuple(a), f.context)
    return PowerInclusionReport(d.exponents, tuple(a), bound, k, product, jacobian_membership(product, d))


def descriptors(max_m: int, max_n: int, min_m: int = 2, min_n: int = 1) -> Iterable[BrieskornPham]:
    for n in range(min_n, max_n + 1):
        for ms in itertools.product(range(min_m, max_m + 1), repeat=n):
            yield BrieskornPham(ms)
