"""Exact sparse multivariate polynomials over the rationals.

A :class:`Poly` is an immutable map from exponent vectors to
:class:`fractions.Fraction` coefficients, tied to an explicit ordered tuple of
variable names (its *context*).  Arithmetic between polynomials requires equal
contexts; use :func:`unify` or :meth:`Poly.with_context` to merge explicitly.

Terms are kept in graded lexicographic order (highest total degree first, ties
broken lexicographically by the context order), which is also the order the
canonical printer uses.
"""

from __future__ import annotations

import contextlib
import os
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType

from .errors import (
    ContextMismatch,
    DegreeBelowBase,
    InvalidParameter,
    MissingAssignment,
    ParseError,
    TermCapExceeded,
    UnknownVariable,
    ZeroPolynomial,
)

Context = tuple[str, ...]
Exps = tuple[int, ...]

DEFAULT_TERM_CAP = 10**6
TERM_CAP_ENV = "SINGULEX_TERM_CAP"

_cap_override: int | None = None


def term_cap() -> int:
    """Current ceiling on the number of terms an operation may produce."""
    if _cap_override is not None:
        return _cap_override
    raw = os.environ.get(TERM_CAP_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise InvalidParameter(f"{TERM_CAP_ENV} must be an integer, got {raw!r}") from None
        if value < 1:
            raise InvalidParameter(f"{TERM_CAP_ENV} must be positive, got {value}")
        return value
    return DEFAULT_TERM_CAP


@contextlib.contextmanager
def term_cap_override(cap: int):
    global _cap_override
    previous = _cap_override
    _cap_override = cap
    try:
        yield
    finally:
        _cap_override = previous


def check_term_cap(count: int, what: str) -> None:
    cap = term_cap()
    if count > cap:
        raise TermCapExceeded(f"{what} would produce more than {cap} terms")


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


def _grlex_key(exps: Exps):
    return (-sum(exps), tuple(-e for e in exps))


def _check_context(context: Iterable[str]) -> Context:
    ctx = tuple(context)
    if len(set(ctx)) != len(ctx):
        raise ContextMismatch(f"duplicate variable names in context {ctx}")
    for name in ctx:
        if not isinstance(name, str) or not _is_ident(name):
            raise ContextMismatch(f"invalid variable name {name!r}")
    return ctx


def _is_ident(name: str) -> bool:
    return bool(name) and name[0].isalpha() and all(ch.isalnum() for ch in name)


class Poly:
    """Immutable polynomial with rational coefficients over a named context."""

    __slots__ = ("context", "_terms", "_hash")

    def __init__(self, context: Iterable[str], terms: Mapping[Sequence[int], object] | None = None):
        ctx = _check_context(context)
        clean: dict[Exps, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            key = tuple(int(e) for e in exps)
            if len(key) != len(ctx):
                raise ContextMismatch(f"exponent vector {key} does not match arity {len(ctx)}")
            if any(e < 0 for e in key):
                raise InvalidParameter(f"negative exponent in {key}")
            c = _as_fraction(coeff)
            if c:
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        self._init(ctx, clean)

    def _init(self, ctx: Context, terms: dict[Exps, Fraction]) -> None:
        self.context = ctx
        self._terms = dict(sorted(terms.items(), key=lambda kv: _grlex_key(kv[0])))
        self._hash = None

    @classmethod
    def _raw(cls, ctx: Context, terms: dict[Exps, Fraction]) -> Poly:
        obj = cls.__new__(cls)
        obj._init(ctx, {k: v for k, v in terms.items() if v})
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, context: Iterable[str]) -> Poly:
        return cls(context)

    @classmethod
    def constant(cls, value, context: Iterable[str]) -> Poly:
        ctx = _check_context(context)
        return cls._raw(ctx, {(0,) * len(ctx): _as_fraction(value)})

    @classmethod
    def var(cls, name: str, context: Iterable[str]) -> Poly:
        ctx = _check_context(context)
        if name not in ctx:
            raise UnknownVariable(f"variable {name!r} not in context {ctx}")
        exps = tuple(1 if v == name else 0 for v in ctx)
        return cls._raw(ctx, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], context: Iterable[str], coeff=1) -> Poly:
        return cls(context, {tuple(exps): coeff})

    @classmethod
    def parse(cls, text: str, context: Iterable[str] | str = "infer") -> Poly:
        return parse_polynomial(text, context)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exps, Fraction]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self.context), Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, names: Iterable[str]) -> int:
        idx = self._indices(names)
        return max((sum(e[i] for i in idx) for e in self._terms), default=-1)

    def variables_used(self) -> Context:
        used = [any(e[i] for e in self._terms) for i in range(len(self.context))]
        return tuple(v for v, u in zip(self.context, used) if u)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def _indices(self, names: Iterable[str]) -> list[int]:
        out = []
        for name in names:
            if name not in self.context:
                raise UnknownVariable(f"variable {name!r} not in context {self.context}")
            out.append(self.context.index(name))
        return out

    # -- context handling -------------------------------------------------

    def with_context(self, context: Iterable[str]) -> Poly:
        """Re-express in another context; every used variable must survive."""
        ctx = _check_context(context)
        if ctx == self.context:
            return self
        missing = [v for v in self.variables_used() if v not in ctx]
        if missing:
            raise ContextMismatch(f"variables {missing} are used but absent from {ctx}")
        where = [self.context.index(v) if v in self.context else None for v in ctx]
        terms = {tuple(e[i] if i is not None else 0 for i in where): c for e, c in self._terms.items()}
        return Poly._raw(ctx, terms)

    def rename(self, mapping: Mapping[str, str]) -> Poly:
        for old in mapping:
            if old not in self.context:
                raise UnknownVariable(f"variable {old!r} not in context {self.context}")
        ctx = _check_context(mapping.get(v, v) for v in self.context)
        return Poly._raw(ctx, dict(self._terms))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.context != self.context:
                raise ContextMismatch(
                    f"contexts differ: {self.context} vs {other.context}; merge them explicitly"
                )
            return other
        if isinstance(other, (int, Rational)):
            return Poly.constant(other, self.context)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.context == other.context and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.context, frozenset(self._terms.items())))
        return self._hash

    def __neg__(self) -> Poly:
        return Poly._raw(self.context, {e: -c for e, c in self._terms.items()})

    def __pos__(self) -> Poly:
        return self

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly._raw(self.context, terms)

    __radd__ = __add__

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.context, _mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if not isinstance(k, int) or k < 0:
            raise InvalidParameter(f"exponent must be a non-negative integer, got {k!r}")
        result = Poly.constant(1, self.context)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Poly({format_polynomial(self)!r}, context={self.context!r})"


def _mul_terms(a: Mapping[Exps, Fraction], b: Mapping[Exps, Fraction]) -> dict[Exps, Fraction]:
    if len(a) < len(b):
        a, b = b, a
    out: dict[Exps, Fraction] = {}
    cap = term_cap()
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
        if len(out) > cap:
            raise TermCapExceeded(f"product would produce more than {cap} terms")
    return out


def merge_contexts(*contexts: Iterable[str]) -> Context:
    """Union of contexts, ordered by first appearance."""
    seen: list[str] = []
    for ctx in contexts:
        for name in ctx:
            if name not in seen:
                seen.append(name)
    return tuple(seen)


def unify(*polys: Poly) -> list[Poly]:
    ctx = merge_contexts(*(p.context for p in polys))
    return [p.with_context(ctx) for p in polys]


# -- printer --------------------------------------------------------------


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _format_monomial(exps: Exps, ctx: Context) -> str:
    parts = []
    for name, e in zip(ctx, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: Poly) -> str:
    if not p._terms:
        return "0"
    chunks = []
    for i, (exps, coeff) in enumerate(p._terms.items()):
        mono = _format_monomial(exps, p.context)
        mag = abs(coeff)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if i == 0:
            chunks.append(f"-{body}" if coeff < 0 else body)
        else:
            chunks.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(chunks)


# -- parser ---------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, ctx: Context):
        self.text = text
        self.pos = 0
        self.ctx = ctx

    def offset(self, pos: int | None = None) -> int:
        return len(self.text[: self.pos if pos is None else pos].encode("utf-8"))

    def error(self, message: str, pos: int | None = None):
        raise ParseError(message, self.offset(pos))

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def parse(self) -> Poly:
        result = self.poly()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected character {self.peek()!r}")
        return result

    def poly(self) -> Poly:
        self.skip_ws()
        sign = 1
        if self.peek() and self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            self.skip_ws()
        total = self.term() * sign
        while True:
            self.skip_ws()
            ch = self.peek()
            if ch not in ("+", "-"):
                return total
            self.pos += 1
            self.skip_ws()
            t = self.term()
            total = total + t if ch == "+" else total - t

    def term(self) -> Poly:
        if self.peek().isdigit() and self.peek().isascii():
            value = Poly.constant(self.coeff(), self.ctx)
        else:
            value = self.factor()
        while True:
            save = self.pos
            self.skip_ws()
            if self.peek() != "*":
                self.pos = save
                return value
            self.pos += 1
            self.skip_ws()
            value = value * self.factor()

    def natural(self) -> int:
        start = self.pos
        while self.peek().isdigit() and self.peek().isascii():
            self.pos += 1
        if start == self.pos:
            self.error("expected a non-negative integer")
        return int(self.text[start : self.pos])

    def coeff(self) -> Fraction:
        num = self.natural()
        save = self.pos
        self.skip_ws()
        if self.peek() == "/":
            self.pos += 1
            self.skip_ws()
            at = self.pos
            den = self.natural()
            if den == 0:
                self.error("zero denominator", at)
            return Fraction(num, den)
        self.pos = save
        return Fraction(num)

    def exponent(self) -> int:
        save = self.pos
        self.skip_ws()
        if self.peek() != "^":
            self.pos = save
            return 1
        self.pos += 1
        self.skip_ws()
        return self.natural()

    def factor(self) -> Poly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.poly()
            self.skip_ws()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner ** self.exponent()
        if ch and ch.isalpha():
            start = self.pos
            while self.peek() and self.peek().isalnum():
                self.pos += 1
            name = self.text[start : self.pos]
            if name not in self.ctx:
                raise UnknownVariable(
                    f"unknown variable {name!r} at byte {self.offset(start)}; context is {self.ctx}"
                )
            return Poly.var(name, self.ctx) ** self.exponent()
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")


def infer_context(text: str) -> Context:
    """Identifiers of ``text`` in order of first appearance."""
    names: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalnum():
                j += 1
            if text[i:j] not in names:
                names.append(text[i:j])
            i = j
        elif ch.isdigit():
            while i < len(text) and text[i].isalnum():
                i += 1
        else:
            i += 1
    return tuple(names)


def parse_polynomial(text: str, context: Iterable[str] | str = "infer") -> Poly:
    """Parse ``text`` into a canonical :class:`Poly`.

    ``context`` is either an explicit ordered list of variable names or the
    string ``"infer"``, which takes identifiers in order of first appearance.
    """
    if isinstance(context, str):
        if context != "infer":
            raise InvalidParameter("context must be a list of names or 'infer'")
        ctx = infer_context(text)
    else:
        ctx = _check_context(context)
    return _Parser(text, ctx).parse()


# -- substitution and calculus -------------------------------------------


@dataclass(frozen=True)
class Substitution:
    """Ring map sending each assigned variable to a polynomial in ``target``.

    Unassigned source variables map to the variable of the same name, which
    must then exist in the target context.
    """

    assignments: Mapping[str, Poly]
    target: Context

    @classmethod
    def build(cls, assignments: Mapping[str, Poly | int | Fraction], target: Iterable[str] | None = None):
        target_ctx = None if target is None else _check_context(target)
        polys = {k: v for k, v in assignments.items() if isinstance(v, Poly)}
        if target_ctx is None:
            contexts = {p.context for p in polys.values()}
            if len(contexts) > 1:
                raise ContextMismatch(f"images live in different contexts: {sorted(contexts)}")
            if not contexts:
                raise ContextMismatch("target context required when no image is a polynomial")
            target_ctx = contexts.pop()
        images = {}
        for name, value in assignments.items():
            if isinstance(value, Poly):
                if value.context != target_ctx:
                    raise ContextMismatch(f"image of {name!r} is not in target context {target_ctx}")
                images[name] = value
            else:
                images[name] = Poly.constant(value, target_ctx)
        return cls(MappingProxyType(images), target_ctx)


def substitute(p: Poly, s: Substitution | Mapping[str, Poly], target: Iterable[str] | None = None) -> Poly:
    """Image of ``p`` under the ring homomorphism ``s``."""
    if not isinstance(s, Substitution):
        s = Substitution.build(s, target)
    for name in s.assignments:
        if name not in p.context:
            raise ContextMismatch(f"substituted variable {name!r} not in context {p.context}")
    tctx = s.target
    images = []
    for name in p.context:
        if name in s.assignments:
            images.append(s.assignments[name])
        elif name in tctx:
            images.append(Poly.var(name, tctx))
        elif any(e[p.context.index(name)] for e in p._terms):
            raise ContextMismatch(f"unassigned variable {name!r} missing from target context {tctx}")
        else:
            images.append(None)

    powers: dict[tuple[int, int], dict[Exps, Fraction]] = {}

    def power(i: int, k: int) -> dict[Exps, Fraction]:
        key = (i, k)
        if key not in powers:
            if k == 1:
                powers[key] = dict(images[i]._terms)
            else:
                powers[key] = _mul_terms(power(i, k - 1), images[i]._terms)
        return powers[key]

    unit = (0,) * len(tctx)
    out: dict[Exps, Fraction] = {}
    cap = term_cap()
    for exps, coeff in p._terms.items():
        acc: dict[Exps, Fraction] = {unit: coeff}
        for i, k in enumerate(exps):
            if k:
                acc = _mul_terms(acc, power(i, k))
        for e, c in acc.items():
            out[e] = out.get(e, 0) + c
        if len(out) > cap:
            raise TermCapExceeded(f"substitution would produce more than {cap} terms")
    return Poly._raw(tctx, out)


def partial_derivative(p: Poly, v: str) -> Poly:
    (i,) = p._indices([v])
    out = {}
    for exps, coeff in p._terms.items():
        k = exps[i]
        if k:
            out[exps[:i] + (k - 1,) + exps[i + 1 :]] = coeff * k
    return Poly._raw(p.context, out)


def gradient(p: Poly) -> dict[str, Poly]:
    return {v: partial_derivative(p, v) for v in p.context}


def _point_values(p: Poly, point) -> list[Fraction]:
    if isinstance(point, Mapping):
        missing = [v for v in p.context if v not in point]
        if missing:
            raise MissingAssignment(f"no value for variables {missing}")
        return [_as_fraction(point[v]) for v in p.context]
    values = list(point)
    if len(values) != len(p.context):
        raise MissingAssignment(f"point has {len(values)} coordinates, context {p.context} needs {len(p.context)}")
    return [_as_fraction(v) for v in values]


def evaluate(p: Poly, point) -> Fraction:
    """Exact value of ``p`` at ``point`` (a name->value map or a coordinate list)."""
    values = _point_values(p, point)
    total = Fraction(0)
    for exps, coeff in p._terms.items():
        term = coeff
        for x, k in zip(values, exps):
            if k:
                term *= x**k
        total += term
    return total


def restrict(p: Poly, values: Mapping[str, object]) -> Poly:
    """Set some variables to constants and drop them from the context."""
    idx = p._indices(values)
    consts = {i: _as_fraction(values[p.context[i]]) for i in idx}
    keep = [i for i in range(len(p.context)) if i not in consts]
    out: dict[Exps, Fraction] = {}
    for exps, coeff in p._terms.items():
        c = coeff
        for i, x in consts.items():
            if exps[i]:
                c *= x ** exps[i]
        key = tuple(exps[i] for i in keep)
        out[key] = out.get(key, 0) + c
    return Poly._raw(tuple(p.context[i] for i in keep), out)


def coefficient_of(p: Poly, v: str, k: int) -> Poly:
    """Coefficient of ``v**k``, as a polynomial in the same context (free of ``v``)."""
    (i,) = p._indices([v])
    out = {e[:i] + (0,) + e[i + 1 :]: c for e, c in p._terms.items() if e[i] == k}
    return Poly._raw(p.context, out)


def graded_parts(p: Poly, vars: Iterable[str], base_degree: int) -> list[Poly]:
    """Split ``p`` by degree in ``vars``, starting at ``base_degree``.

    Entry ``j`` of the result collects the terms of degree ``base_degree + j``
    in ``vars``; its coefficients may involve the remaining variables.
    """
    if base_degree < 0:
        raise InvalidParameter("base degree must be non-negative")
    idx = p._indices(vars)
    buckets: dict[int, dict[Exps, Fraction]] = {}
    for exps, coeff in p._terms.items():
        deg = sum(exps[i] for i in idx)
        if deg < base_degree:
            raise DegreeBelowBase(
                f"term {format_polynomial(Poly._raw(p.context, {exps: coeff}))} has degree {deg} "
                f"< {base_degree} in {tuple(p.context[i] for i in idx)}"
            )
        buckets.setdefault(deg - base_degree, {})[exps] = coeff
    top = max(buckets, default=-1)
    return [Poly._raw(p.context, buckets.get(j, {})) for j in range(top + 1)]


def factor_out_power(p: Poly, v: str) -> tuple[int, Poly]:
    """Largest ``k`` with ``v**k`` dividing ``p``, and the quotient."""
    if not p._terms:
        raise ZeroPolynomial("cannot factor a power out of the zero polynomial")
    (i,) = p._indices([v])
    k = min(e[i] for e in p._terms)
    out = {e[:i] + (e[i] - k,) + e[i + 1 :]: c for e, c in p._terms.items()}
    return k, Poly._raw(p.context, out)


def translate(p: Poly, center) -> Poly:
    """``p(x + center)``: moves ``center`` to the origin."""
    values = _point_values(p, center)
    shifts = {
        v: Poly.var(v, p.context) + c for v, c in zip(p.context, values) if c
    }
    if not shifts:
        return p
    return substitute(p, Substitution.build(shifts, p.context))


def lowest_degree_part(p: Poly, center=None) -> tuple[int, Poly]:
    """Order of ``p`` at ``center`` (origin by default) and its lowest form."""
    if not p._terms:
        raise ZeroPolynomial("the zero polynomial has no lowest-degree part")
    q = p if center is None else translate(p, center)
    order = min(sum(e) for e in q._terms)
    return order, Poly._raw(q.context, {e: c for e, c in q._terms.items() if sum(e) == order})
