"""Minimal exponents, microlocal V-filtration indices and classification.

Everything here is closed-form rational arithmetic.  Brieskorn-Pham
polynomials ``f = x_1^m_1 + ... + x_n^m_n`` are described by their exponent
list; monomials ``g = x^a`` by their exponent vector ``a``.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import InvalidParameter, NonvanishingViolated


@total_ordering
class ExponentValue:
    """A positive rational, or ``INFINITY`` for the smooth case."""

    __slots__ = ("value",)

    def __init__(self, value: Fraction | int | str | None):
        if isinstance(value, str):
            if value.strip().lower() in ("inf", "infinity"):
                value = None
            else:
                value = Fraction(value)
        if value is not None:
            value = Fraction(value)
            if value <= 0:
                raise InvalidParameter(f"exponent values are positive, got {value}")
        self.value = value

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def _key(self):
        return (1, 0) if self.value is None else (0, self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExponentValue):
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value is not None and self.value == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        if not isinstance(other, ExponentValue):
            if isinstance(other, (int, Fraction)):
                return self.value is not None and self.value < other
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        if self.value is None:
            return "inf"
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def __repr__(self) -> str:
        return f"ExponentValue({str(self)!r})"


INFINITY = ExponentValue(None)


@dataclass(frozen=True)
class BrieskornPham:
    """Exponents ``(m_1, ..., m_n)`` of ``f = sum x_i^m_i``."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(self.exponents)
        object.__setattr__(self, "exponents", exps)
        if not exps:
            raise InvalidParameter("a Brieskorn-Pham descriptor needs at least one exponent")
        for m in exps:
            if not isinstance(m, int) or m < 2:
                raise InvalidParameter(f"Brieskorn-Pham exponents must be integers >= 2, got {m!r}")

    @classmethod
    def of(cls, exponents: Iterable[int] | str) -> BrieskornPham:
        if isinstance(exponents, str):
            try:
                exponents = [int(x) for x in exponents.split(",")]
            except ValueError:
                raise InvalidParameter(f"cannot read exponent list {exponents!r}") from None
        return cls(tuple(exponents))

    @property
    def n(self) -> int:
        return len(self.exponents)

    def __len__(self) -> int:
        return len(self.exponents)

    def __add__(self, other: BrieskornPham) -> BrieskornPham:
        return BrieskornPham(self.exponents + other.exponents)

    def variables(self, prefix: str | None = None) -> tuple[str, ...]:
        """Default variable names: x, y, z for n <= 3, else x1, ..., xn."""
        if prefix is None and self.n <= 3:
            return ("x", "y", "z")[: self.n]
        return tuple(f"{prefix or 'x'}{i}" for i in range(1, self.n + 1))

    def polynomial(self, context: Sequence[str] | None = None):
        from .algebra import Poly

        ctx = tuple(context) if context is not None else self.variables()
        if len(ctx) != self.n:
            raise InvalidParameter(f"context {ctx} does not match {self.n} exponents")
        terms = {}
        for i, m in enumerate(self.exponents):
            terms[tuple(m if j == i else 0 for j in range(self.n))] = 1
        return Poly(ctx, terms)


def _exponent_vector(a: Sequence[int], d: BrieskornPham) -> tuple[int, ...]:
    a = tuple(a)
    if len(a) != d.n:
        raise InvalidParameter(f"exponent vector {a} has arity {len(a)}, descriptor has {d.n}")
    if any(not isinstance(x, int) or x < 0 for x in a):
        raise InvalidParameter(f"monomial exponents must be non-negative integers, got {a}")
    return a


def bp_minimal_exponent(d: BrieskornPham) -> ExponentValue:
    return ExponentValue(sum((Fraction(1, m) for m in d.exponents), Fraction(0)))


def slice_exponent_ordinary_mple(n: int, m: int) -> ExponentValue:
    """Minimal exponent ``(n-1)/m`` at general points of a curve of ordinary m-ple points."""
    if n < 2 or m < 2:
        raise InvalidParameter(f"need n >= 2 and m >= 2, got n={n}, m={m}")
    return ExponentValue(Fraction(n - 1, m))


def min_product_rule(alpha1: ExponentValue, alpha2: ExponentValue) -> ExponentValue:
    """Minimal exponent of a product ``h1*h2`` in separate variables.

    Only meaningful where a Thom-Sebastiani type statement is available, i.e.
    one of the factors is weighted homogeneous.  ``INFINITY`` (a smooth
    factor) is neutral.
    """
    return min(alpha1, alpha2)


def decrease_predicate(n: int, a: int, b: int) -> bool:
    """Whether ``(n-2)/a > 1/(a-b)``; checked against ``a/b > (n-2)/(n-3)``."""
    if not (a > b > 1) or n < 4:
        raise InvalidParameter(f"need a > b > 1 and n >= 4, got n={n}, a={a}, b={b}")
    direct = Fraction(n - 2, a) > Fraction(1, a - b)
    ratio = Fraction(a, b) > Fraction(n - 2, n - 3)
    if direct != ratio:
        raise AssertionError(f"inequality forms disagree for n={n}, a={a}, b={b}")
    return direct


def decompose_residue(a: Sequence[int], d: BrieskornPham) -> tuple[tuple[int, int], ...]:
    """Pairs ``(b_i, c_i)`` with ``a_i = b_i + c_i (m_i - 1)`` and ``0 <= b_i <= m_i - 2``."""
    a = _exponent_vector(a, d)
    return tuple((ai % (m - 1), ai // (m - 1)) for ai, m in zip(a, d.exponents))


def alpha_vtilde(a: Sequence[int], d: BrieskornPham) -> ExponentValue:
    """Microlocal V-filtration index of the monomial ``x^a``."""
    pairs = decompose_residue(a, d)
    return ExponentValue(
        sum((Fraction(b + 1, m) + c for (b, c), m in zip(pairs, d.exponents)), Fraction(0))
    )


def check_nonvanishing(a: Sequence[int], d: BrieskornPham) -> None:
    a = _exponent_vector(a, d)
    bad = [i + 1 for i, (ai, m) in enumerate(zip(a, d.exponents)) if (ai + 1) % m == 0]
    if bad:
        raise NonvanishingViolated(
            f"a_i + 1 is divisible by m_i for i in {bad}; the class of x^a dx may vanish"
        )


def alpha_br(a: Sequence[int], d: BrieskornPham) -> ExponentValue:
    """V-filtration index of ``[x^a dx]`` in the Brieskorn lattice."""
    check_nonvanishing(a, d)
    return ExponentValue(sum((Fraction(ai + 1, m) for ai, m in zip(a, d.exponents)), Fraction(0)))


@dataclass(frozen=True)
class VFiltReport:
    alpha_vtilde: ExponentValue
    alpha_br: ExponentValue
    gap: Fraction

    @property
    def upper_bound(self) -> ExponentValue:
        """Upper bound for the minimal exponent of the pair ``(f, x^a)``."""
        return self.alpha_br


def vfilt_gap(a: Sequence[int], d: BrieskornPham) -> VFiltReport:
    """Gap ``sum c_i/m_i`` between the microlocal and Brieskorn-lattice indices."""
    br = alpha_br(a, d)
    vt = alpha_vtilde(a, d)
    gap = sum((Fraction(c, m) for (_, c), m in zip(decompose_residue(a, d), d.exponents)), Fraction(0))
    if vt.value != br.value + gap:
        raise AssertionError(f"identity violated for a={tuple(a)}, m={d.exponents}")
    return VFiltReport(vt, br, gap)


@dataclass(frozen=True)
class ClassificationReport:
    k: int
    minimal_exponent: ExponentValue
    is_k_du_bois: bool
    is_k_rational: bool


def classify(alpha: ExponentValue, k: int) -> ClassificationReport:
    if k < 0:
        raise InvalidParameter(f"k must be non-negative, got {k}")
    if alpha.is_infinite:
        return ClassificationReport(k, alpha, True, True)
    return ClassificationReport(k, alpha, alpha.value >= k + 1, alpha.value > k + 1)


def hm_applicable(n: int, m: int, k: int) -> tuple[bool, bool]:
    """Whether the blow-up construction decides k-du Bois / k-rational.

    The thresholds are ``k <= (n-1)/m - 1`` and ``k < (n-1)/m - 1``.
    """
    if n < 2 or m < 2 or k < 0:
        raise InvalidParameter(f"need n >= 2, m >= 2, k >= 0, got n={n}, m={m}, k={k}")
    bound = Fraction(n - 1, m) - 1
    return k <= bound, k < bound


def applicable_range(n: int, m: int) -> tuple[list[int], list[int]]:
    """All ``k`` for which :func:`hm_applicable` holds, for each notion."""
    top = math.floor(Fraction(n - 1, m) - 1)
    ks = range(0, max(top, -1) + 1)
    du_bois = [k for k in ks if hm_applicable(n, m, k)[0]]
    rational = [k for k in ks if hm_applicable(n, m, k)[1]]
    return du_bois, rational


@dataclass(frozen=True)
class ConjecturalValue:
    value: ExponentValue
    status: str = "conjectural"
    note: str = ""


def family_exponent_conjecture(n: int, d: int) -> ConjecturalValue:
    """Expected (unproved) minimal exponent ``n/d`` of the homogeneous family.

    Reported for reference only; never treated as a verified invariant.
    """
    if n < 3 or d < 1:
        raise InvalidParameter(f"need n >= 3 and d >= 1, got n={n}, d={d}")
    return ConjecturalValue(
        ExponentValue(Fraction(n, d)),
        note="expected value for the homogeneous family; not verified by this library",
    )
