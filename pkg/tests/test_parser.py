"""Surface syntax parsing, resolution, and render round-trips."""

import random

import pytest

from gen import random_program_text
from traitscope.parser import ParseError, parse_context
from traitscope.printer import render
from traitscope.syntax import (
    Function,
    ImplBlock,
    InferVar,
    TraitBound,
    TraitDecl,
    TupleType,
    Unit,
    strip_spans,
)
from traitscope.wellformed import check_well_formed


class TestBasics:
    def test_minimal_program(self):
        ctx = parse_context(
            "trait SystemParam; newtype Timer = unit; goal g1: Timer: SystemParam;"
        )
        assert len(ctx.declarations) == 2
        assert len(ctx.goals) == 1
        assert ctx.goals[0].label == "g1"

    def test_unresolved_symbol_named(self):
        with pytest.raises(ParseError) as err:
            parse_context("goal g: X: Y;")
        assert "'X'" in str(err.value)

    def test_duplicate_symbol(self):
        with pytest.raises(ParseError) as err:
            parse_context("newtype A = unit; newtype A = unit;")
        assert "duplicate" in str(err.value)

    def test_impl_binding_undeclared_assoc(self):
        source = """
        trait Tr { type Known; }
        newtype A = unit;
        impl Tr for A { type Known = unit; type Mystery = unit; }
        """
        with pytest.raises(ParseError) as err:
            parse_context(source)
        assert "Mystery" in str(err.value)

    def test_infer_vars_only_in_goals(self):
        with pytest.raises(ParseError) as err:
            parse_context("trait Tr; newtype A = ?0;")
        assert "goals" in str(err.value)

    def test_syntax_error_reports_location_and_expectation(self):
        with pytest.raises(ParseError) as err:
            parse_context("newtype A unit;")
        assert err.value.line == 1
        assert err.value.expected == ("=",)

    def test_spans_populated(self):
        source = "trait Tr;\nnewtype A = unit;\n\ngoal g: A: Tr;\n"
        ctx = parse_context(source, filename="prog.tl")
        assert ctx.declarations[0].span.line_start == 1
        assert ctx.declarations[1].span.line_start == 2
        assert ctx.goals[0].span.line_start == 4
        assert all(d.span.file == "prog.tl" for d in ctx.declarations)


class TestProvenanceAndModules:
    def test_extern_marks_external(self):
        ctx = parse_context("extern trait Tr; newtype A = unit;")
        assert ctx.declarations[0].provenance == "external"
        assert ctx.declarations[1].provenance == "local"

    def test_provenance_default(self):
        ctx = parse_context("trait Tr;", provenance_default="external")
        assert ctx.declarations[0].provenance == "external"

    def test_extern_mod_applies_to_contents(self):
        ctx = parse_context("extern mod lib { trait Tr; } newtype A = unit;")
        assert ctx.declarations[0].provenance == "external"
        assert ctx.path_of(ctx.declarations[0].name) == "lib::Tr"

    def test_nested_module_paths(self):
        ctx = parse_context(
            "mod a::b { newtype T = unit; trait Tr; } goal g: a::b::T: a::b::Tr;"
        )
        assert ctx.symbol_by_path("a::b::T") is not None
        assert ctx.symbol_by_path("a::b::Tr") is not None

    def test_relative_resolution_inside_module(self):
        ctx = parse_context(
            "mod lib { trait Tr; newtype W<T> = T; impl<T> Tr for W<T>; }"
        )
        impl = ctx.declarations[-1]
        assert isinstance(impl, ImplBlock)
        assert ctx.path_of(impl.instance.trait) == "lib::Tr"


class TestTypes:
    def test_function_desugars_curried_with_surface_arity(self):
        ctx = parse_context("newtype f = fn(unit, unit) -> unit;")
        body = ctx.declarations[0].body
        assert isinstance(body, Function)
        assert body.surface_arity == 2
        assert isinstance(body.result, Function)
        assert body.result.result == Unit()

    def test_tuples_right_nest(self):
        ctx = parse_context("newtype A = unit; newtype T = (A, A, A);")
        body = ctx.declarations[1].body
        assert isinstance(body, TupleType)
        assert isinstance(body.right, TupleType)

    def test_goal_infer_vars(self):
        ctx = parse_context("trait Tr<M>; newtype A = unit; goal g: A: Tr<?0>;")
        pred = ctx.goals[0].predicate
        assert isinstance(pred, TraitBound)
        assert pred.instance.type_args == (InferVar(0),)

    def test_callable_attribute(self):
        ctx = parse_context("#[callable(arity=2)] trait F2<A, B, Out>;")
        decl = ctx.declarations[0]
        assert isinstance(decl, TraitDecl)
        assert decl.callable_arity == 2

    def test_projection_eq_predicate(self):
        source = """
        trait Tr { type Out; }
        newtype A = unit;
        goal g: <A as Tr>::Out == A;
        """
        ctx = parse_context(source)
        assert ctx.goals[0].predicate.__class__.__name__ == "ProjectionEq"


class TestFixtureShapes:
    def test_bevy_has_two_intosystem_impls(self):
        from conftest import load_fixture

        ctx = load_fixture("bevy")
        into_system = ctx.symbol_by_path("bevy::IntoSystem")
        assert into_system is not None
        assert len(ctx.impls_of(into_system)) == 2

    def test_fixtures_parse_well_formed(self):
        from conftest import FIXTURE_NAMES, load_fixture

        for name in [*FIXTURE_NAMES, "hello"]:
            ctx = load_fixture(name)
            assert check_well_formed(ctx) == [], name


class TestRoundTrip:
    def test_fixture_round_trips(self):
        from conftest import FIXTURE_NAMES, load_fixture

        for name in [*FIXTURE_NAMES, "hello"]:
            ctx = load_fixture(name)
            again = parse_context(render(ctx))
            assert strip_spans(again) == strip_spans(ctx), name

    def test_random_programs_round_trip(self):
        rng = random.Random(2024)
        for i in range(200):
            source = random_program_text(random.Random(rng.randint(0, 10**9)))
            ctx = parse_context(source)
            assert check_well_formed(ctx) == [], source
            again = parse_context(render(ctx))
            assert strip_spans(again) == strip_spans(ctx), source
