from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singulex.algebra import (
    Poly,
    Substitution,
    evaluate,
    factor_out_power,
    graded_parts,
    lowest_degree_part,
    parse_polynomial,
    partial_derivative,
    restrict,
    substitute,
    term_cap_override,
    unify,
)
from singulex.errors import (
    ContextMismatch,
    DegreeBelowBase,
    MissingAssignment,
    ParseError,
    TermCapExceeded,
    UnknownVariable,
    ZeroPolynomial,
)

from conftest import CTX4, polys


def P(text, ctx="infer"):
    return parse_polynomial(text, ctx)


class TestParse:
    def test_sum_of_powers(self):
        p = P("x1^2 + x2^3")
        assert p.context == ("x1", "x2")
        assert dict(p.terms) == {(2, 0): 1, (0, 3): 1}

    def test_zero(self):
        assert dict(P("0").terms) == {}

    def test_exact_cancellation(self):
        assert P("2/3*x*y - x*y + 1/3*x*y").is_zero()

    def test_explicit_context_keeps_unused_variables(self):
        p = P("x", ["x", "y"])
        assert p.context == ("x", "y")
        assert dict(p.terms) == {(1, 0): 1}

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable):
            P("x + t", ["x", "y"])

    @pytest.mark.parametrize(
        "text, offset",
        [("x + * y", 4), ("x^", 2), ("(x + y", 6), ("x y", 2), ("1/0*x", 2), ("", 0), ("x é", 2)],
    )
    def test_syntax_error_offsets(self, text, offset):
        with pytest.raises(ParseError) as info:
            P(text, ["x", "y"])
        assert info.value.offset == offset

    def test_offset_counts_bytes(self):
        with pytest.raises(ParseError) as info:
            P("é + )", ["é"])
        # 'é' is two bytes in UTF-8
        assert info.value.offset == 5

    def test_parenthesised_power_and_leading_sign(self):
        assert P("-(x-1)^2") == P("-x^2 + 2*x - 1")

    def test_printer_format(self):
        assert str(P("1/2*x*y^2 - 3 + y")) == "1/2*x*y^2 + y - 3"
        assert str(P("-x + 2/3")) == "-x + 2/3"

    @given(polys())
    def test_print_parse_roundtrip(self, p):
        assert parse_polynomial(str(p), p.context) == p


class TestArithmetic:
    def test_context_mismatch(self):
        with pytest.raises(ContextMismatch):
            P("x") + P("y")

    def test_unify_merges_contexts(self):
        a, b = unify(P("x"), P("y"))
        assert (a + b).context == ("x", "y")

    def test_with_context_refuses_dropping_used_variable(self):
        with pytest.raises(ContextMismatch):
            P("x*y").with_context(["x"])

    def test_term_cap(self):
        p = P("x + y + z + w + 1")
        with term_cap_override(50):
            with pytest.raises(TermCapExceeded):
                p**4

    def test_term_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("SINGULEX_TERM_CAP", "10")
        with pytest.raises(TermCapExceeded):
            P("x + y + 1") ** 4  # 15 terms

    @given(polys(), polys(), polys())
    def test_ring_laws(self, p, q, r):
        assert (p + q) + r == p + (q + r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r

    @given(polys(), polys(), st.sampled_from(CTX4))
    def test_leibniz(self, p, q, v):
        lhs = partial_derivative(p * q, v)
        assert lhs == partial_derivative(p, v) * q + p * partial_derivative(q, v)


class TestSubstitute:
    def test_blowup_chart_of_quadric(self):
        y = ("y1", "y2", "y3")
        s = {"x1": P("y1*y3", y), "x2": P("y2*y3", y), "x3": P("y3", y)}
        assert substitute(P("x1^2+x2^2", ("x1", "x2", "x3")), s) == P("y1^2*y3^2 + y2^2*y3^2", y)

    def test_identity(self):
        assert substitute(P("x"), {"x": P("x")}) == P("x")

    def test_to_constants(self):
        s = Substitution.build({"x": 1, "y": -1}, target=())
        assert substitute(P("x+y"), s) == Poly.zero(())

    def test_unassigned_variable_must_exist_in_target(self):
        with pytest.raises(ContextMismatch):
            substitute(P("x+y"), {"x": P("t")})

    def test_assigned_variable_must_exist_in_source(self):
        with pytest.raises(ContextMismatch):
            substitute(P("x"), {"q": P("x")})

    @settings(max_examples=60)
    @given(polys(max_degree=4, max_terms=4), polys(max_degree=4, max_terms=4), st.data())
    def test_homomorphism(self, p, q, data):
        target = ("u", "v")
        images = {
            v: data.draw(polys(ctx=target, max_degree=2, max_terms=2), label=v) for v in CTX4
        }
        s = Substitution.build(images, target)
        assert substitute(p * q, s) == substitute(p, s) * substitute(q, s)
        assert substitute(p + q, s) == substitute(p, s) + substitute(q, s)


class TestDerivative:
    def test_monomial_rules(self):
        p = P("x^2+y^3")
        assert partial_derivative(p, "x") == P("2*x", p.context)
        assert partial_derivative(p, "y") == P("3*y^2", p.context)

    def test_constant(self):
        assert partial_derivative(P("5", ["x"]), "x").is_zero()

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable):
            partial_derivative(P("x"), "y")


class TestGradedParts:
    def test_buckets_and_resum(self):
        ctx = ("x1", "x2", "x3")
        p = P("x1^2 + x2^2 + x3*x1^3", ctx)
        parts = graded_parts(p, ["x1", "x2"], 2)
        assert parts == [P("x1^2+x2^2", ctx), P("x3*x1^3", ctx)]
        assert sum(parts, Poly.zero(ctx)) == p

    def test_single_part(self):
        assert graded_parts(P("x1^2"), ["x1"], 2) == [P("x1^2")]

    def test_below_base(self):
        with pytest.raises(DegreeBelowBase, match="x1"):
            graded_parts(P("x1"), ["x1"], 2)

    @given(polys(), st.sets(st.sampled_from(CTX4), min_size=1))
    def test_roundtrip(self, p, names):
        names = sorted(names)
        base = min((sum(e[CTX4.index(v)] for v in names) for e in p.terms), default=0)
        parts = graded_parts(p, names, base)
        assert sum(parts, Poly.zero(CTX4)) == p
        for j, part in enumerate(parts):
            assert all(sum(e[CTX4.index(v)] for v in names) == base + j for e in part.terms)


class TestFactorOutPower:
    def test_exceptional_factor(self):
        ctx = ("y1", "y2", "y3", "s")
        k, q = factor_out_power(P("y1^2*y3^2 + y2^2*y3^2 + s*y3^2", ctx), "y3")
        assert (k, q) == (2, P("y1^2+y2^2+s", ctx))

    def test_no_factor(self):
        assert factor_out_power(P("x+1"), "x") == (0, P("x+1"))

    def test_pure_power(self):
        assert factor_out_power(P("x^3"), "x") == (3, P("1", ["x"]))

    def test_zero(self):
        with pytest.raises(ZeroPolynomial):
            factor_out_power(Poly.zero(["x"]), "x")

    @given(polys().filter(bool), st.sampled_from(CTX4))
    def test_roundtrip(self, p, v):
        k, q = factor_out_power(p, v)
        assert q * Poly.var(v, CTX4) ** k == p
        assert factor_out_power(q, v)[0] == 0


class TestEvaluate:
    def test_values(self):
        assert evaluate(P("x^2*y"), {"x": 0, "y": 3}) == 0
        assert evaluate(P("x^2+y^3"), {"x": 1, "y": 1}) == 2
        assert evaluate(P("1/2*x"), {"x": 3}) == Fraction(3, 2)

    def test_missing(self):
        with pytest.raises(MissingAssignment):
            evaluate(P("x+y"), {"x": 1})

    @given(polys(), polys(), st.lists(st.fractions(max_denominator=9, min_value=-5, max_value=5), min_size=4, max_size=4))
    def test_evaluation_is_a_homomorphism(self, p, q, pt):
        assert evaluate(p * q, pt) == evaluate(p, pt) * evaluate(q, pt)

    def test_restrict_drops_variable(self):
        q = restrict(P("x^2+y^3"), {"y": 1})
        assert q.context == ("x",)
        assert q == P("x^2+1")


class TestLowestDegreePart:
    def test_origin(self):
        p = P("x^2+y^2+y^3")
        assert lowest_degree_part(p) == (2, P("x^2+y^2", p.context))

    def test_translation(self):
        assert lowest_degree_part(P("x^2-2*x+1"), [1]) == (2, P("x^2"))

    def test_family_chart(self):
        p = P("x2^2+x3^2+x2^4+x3^4")
        assert lowest_degree_part(p) == (2, P("x2^2+x3^2", p.context))

    def test_zero(self):
        with pytest.raises(ZeroPolynomial):
            lowest_degree_part(Poly.zero(["x"]))
