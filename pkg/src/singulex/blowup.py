"""Point blow-ups in the principal chart and the resolution identities they satisfy."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .algebra import (
    Poly,
    Substitution,
    coefficient_of,
    factor_out_power,
    graded_parts,
    lowest_degree_part,
    partial_derivative,
    restrict,
    substitute,
)
from .errors import ContextMismatch, DegreeBelowBase, InvalidParameter, ShapeViolation, SingulexError, ZeroPolynomial

GRAPH_OVER_S = "GRAPH_OVER_S"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class BlowupChart:
    """Chart ``x_i = y_i * y_n`` (i < n), ``x_n = y_n`` of the blow-up at the origin.

    The last source variable is the one the chart is centred on; its target
    is the exceptional coordinate.
    """

    source_vars: tuple[str, ...]
    target_vars: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "source_vars", tuple(self.source_vars))
        object.__setattr__(self, "target_vars", tuple(self.target_vars))
        if len(self.source_vars) != len(self.target_vars):
            raise InvalidParameter("a blow-up chart preserves the number of variables")
        if not self.source_vars:
            raise InvalidParameter("a blow-up chart needs at least one variable")
        if len(set(self.source_vars)) != len(self.source_vars) or len(set(self.target_vars)) != len(
            self.target_vars
        ):
            raise InvalidParameter("chart variables must be distinct")

    @classmethod
    def principal(cls, source: Iterable[str], target: Iterable[str] | None = None, prefix: str = "y"):
        source = tuple(source)
        if target is None:
            target = tuple(f"{prefix}{i}" for i in range(1, len(source) + 1))
        return cls(source, tuple(target))

    @property
    def exceptional(self) -> str:
        return self.target_vars[-1]

    def target_context(self, context: Sequence[str]) -> tuple[str, ...]:
        missing = [v for v in self.source_vars if v not in context]
        if missing:
            raise ContextMismatch(f"chart variables {missing} are not in context {tuple(context)}")
        rename = dict(zip(self.source_vars, self.target_vars))
        passive = [v for v in context if v not in rename]
        clash = [v for v in self.target_vars if v in passive]
        if clash:
            raise ContextMismatch(f"target names {clash} collide with untouched variables")
        return tuple(rename.get(v, v) for v in context)

    def substitution(self, context: Sequence[str]) -> Substitution:
        tctx = self.target_context(context)
        e = Poly.var(self.exceptional, tctx)
        images = {x: Poly.var(y, tctx) * e for x, y in zip(self.source_vars[:-1], self.target_vars[:-1])}
        images[self.source_vars[-1]] = e
        return Substitution.build(images, tctx)


@dataclass(frozen=True)
class TransformResult:
    total: Poly
    exceptional_multiplicity: int
    proper: Poly
    exceptional: str

    def to_json(self) -> dict:
        return {"total": str(self.total), "mult": self.exceptional_multiplicity, "proper": str(self.proper)}


def blowup_transform(p: Poly, chart: BlowupChart, exceptional: str | None = None) -> TransformResult:
    if p.is_zero():
        raise ZeroPolynomial("cannot blow up the zero polynomial")
    exceptional = exceptional or chart.exceptional
    if exceptional not in chart.target_vars:
        raise ContextMismatch(f"exceptional variable {exceptional!r} is not a chart coordinate")
    total = substitute(p, chart.substitution(p.context))
    mult, proper = factor_out_power(total, exceptional)
    return TransformResult(total, mult, proper, exceptional)


@dataclass(frozen=True)
class SmoothnessCertificate:
    kind: str
    witness: str


def smoothness_certificate(p: Poly, parameter: str = "s") -> SmoothnessCertificate:
    """``GRAPH_OVER_S`` when ``p = phi + s`` with ``phi`` free of ``s``.

    Such a zero locus is the graph of ``-phi`` and hence smooth.
    """
    if parameter in p.context and partial_derivative(p, parameter) == 1:
        return SmoothnessCertificate(GRAPH_OVER_S, parameter)
    return SmoothnessCertificate(UNKNOWN, parameter)


@dataclass(frozen=True)
class ShapeReport:
    ok: bool
    certificate: SmoothnessCertificate
    transform: TransformResult
    central_fiber_lowest: tuple[int, Poly] | None
    failures: list[str] = field(default_factory=list)


def verify_resolution_shape(
    p: Poly,
    m: int,
    parameter: str = "s",
    normal_var: str | None = None,
    chart: BlowupChart | None = None,
) -> ShapeReport:
    """Blow up a local model ``sum_j f_{j+m} + s * g`` and check the outcome.

    The ``f`` part must have order at least ``m`` in the variables other than
    ``normal_var`` (default: the last non-parameter variable).  The result is
    ``ok`` when the exceptional multiplicity is ``m`` and the proper transform
    is ``phi + s``.
    """
    if m < 2:
        raise InvalidParameter(f"multiplicity must be at least 2, got {m}")
    if parameter not in p.context:
        raise ShapeViolation(f"parameter {parameter!r} does not occur in the context")
    if p.degree_in([parameter]) > 1:
        raise ShapeViolation(f"the family is not linear in {parameter!r}")
    xs = [v for v in p.context if v != parameter]
    normal_var = normal_var or xs[-1]
    if normal_var not in xs:
        raise ShapeViolation(f"normal variable {normal_var!r} is not a coordinate")
    slice_vars = [v for v in xs if v != normal_var]
    f = coefficient_of(p, parameter, 0)
    g = coefficient_of(p, parameter, 1)
    if g.is_zero():
        raise ShapeViolation(f"the deformation term in {parameter!r} vanishes")
    try:
        graded_parts(f, slice_vars, m)
    except DegreeBelowBase as exc:
        raise ShapeViolation(f"f is not of order {m} along the slice: {exc}") from None

    if chart is None:
        chart = BlowupChart.principal(slice_vars + [normal_var])
    result = blowup_transform(p, chart)
    cert = smoothness_certificate(result.proper, parameter)
    failures = []
    if result.exceptional_multiplicity != m:
        failures.append(f"exceptional multiplicity is {result.exceptional_multiplicity}, expected {m}")
    if cert.kind != GRAPH_OVER_S:
        failures.append(f"proper transform is not of the form phi + {parameter}")
    central = restrict(result.proper, {parameter: 0})
    lowest = lowest_degree_part(central) if not central.is_zero() else None
    return ShapeReport(not failures, cert, result, lowest, failures)


def iterated_blowup(p: Poly, charts: Sequence[BlowupChart | tuple[BlowupChart, str]]) -> list[TransformResult]:
    """Blow up repeatedly, each step acting on the previous proper transform."""
    chain: list[TransformResult] = []
    current = p
    for step, item in enumerate(charts, start=1):
        chart, exceptional = item if isinstance(item, tuple) else (item, None)
        try:
            result = blowup_transform(current, chart, exceptional)
        except SingulexError as exc:
            raise type(exc)(f"step {step}: {exc}") from exc
        chain.append(result)
        current = result.proper
    return chain
