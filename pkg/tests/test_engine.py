"""Solver behavior: candidate assembly, trees, cycles, and the
brute-force oracle equivalence."""

import random


from conftest import load_fixture
from gen import random_solver_plan
from oracle import oracle_solve
from traitscope.engine import (
    Ambiguous,
    BuiltIn,
    NoCandidates,
    Overflow,
    SolveConfig,
    UNRESOLVED,
    Unresolved,
    assemble_candidates,
    evaluate_predicate_kind,
    iter_goals,
    normalize_projection,
    solve,
    validate_tree,
)
from traitscope.parser import parse_context
from traitscope.printer import FULLY_QUALIFIED, SHORTENED, pretty_print
from traitscope.syntax import Constructor, InferVar, TraitBound, TraitInstance


class TestAssembleCandidates:
    def setup_method(self):
        self.ctx = load_fixture("bevy")
        self.system_param = self.ctx.symbol_by_path("bevy::SystemParam")
        self.resmut = self.ctx.symbol_by_path("bevy::ResMut")
        self.timer = self.ctx.symbol_by_path("Timer")

    def test_generic_impl_head_unifies(self):
        bound = TraitBound(
            Constructor(self.resmut, (Constructor(self.timer),)),
            TraitInstance(self.system_param),
        )
        cands = assemble_candidates(self.ctx, bound)
        assert len(cands) == 1
        impl_id, subst = cands[0]
        # the freshened impl binder T is bound to Timer
        assert Constructor(self.timer) in subst.mapping.values()

    def test_no_impl_for_bare_type(self):
        bound = TraitBound(
            Constructor(self.timer), TraitInstance(self.system_param)
        )
        assert assemble_candidates(self.ctx, bound) == []

    def test_infer_var_self_matches_every_head(self):
        source = """
        trait Tr;
        newtype A = unit;
        newtype B = unit;
        impl Tr for A;
        impl Tr for B;
        """
        ctx = parse_context(source)
        bound = TraitBound(InferVar(0), TraitInstance(ctx.symbol_by_path("Tr")))
        cands = assemble_candidates(ctx, bound)
        assert [impl_id for impl_id, _ in cands] == [0, 1]


class TestSolveBasics:
    def test_direct_impl_hit(self):
        ctx = parse_context(
            "trait SystemParam; newtype Timer = unit; impl SystemParam for Timer;"
            "goal g: Timer: SystemParam;"
        )
        tree = solve(ctx, ctx.goals[0].predicate)
        assert tree.result.value == "yes"
        assert len(tree.candidates) == 1
        assert tree.candidates[0].subgoals == []
        assert validate_tree(tree) == []

    def test_outlives_assumed(self):
        ctx = parse_context("trait Tr; newtype Timer = unit; goal g: Timer: 'static;")
        tree = evaluate_predicate_kind(ctx, ctx.goals[0].predicate)
        assert tree.result.value == "yes"
        assert tree.candidates[0].impl_ref == BuiltIn("outlives_assumed")
        assert tree.candidates[0].subgoals == []

    def test_evaluate_predicate_kind_matches_solve(self, bevy):
        pred = bevy.context.goals[0].predicate
        assert evaluate_predicate_kind(bevy.context, pred) == solve(
            bevy.context, pred
        )

    def test_no_candidates_reason(self):
        ctx = parse_context("trait Tr; newtype A = unit; goal g: A: Tr;")
        tree = solve(ctx, ctx.goals[0].predicate)
        assert tree.result.value == "no"
        assert isinstance(tree.result.reason, NoCandidates)

    def test_infer_var_without_candidates_is_ambiguous(self):
        ctx = parse_context("trait Tr; newtype A = unit; goal g: ?0: Tr;")
        tree = solve(ctx, ctx.goals[0].predicate)
        assert tree.result.value == "maybe"
        assert tree.result.reason == Ambiguous((0,))

    def test_full_exploration_no_short_circuit(self):
        source = """
        trait Tr;
        newtype A = unit;
        impl Tr for A;
        impl Tr for A;
        """
        ctx = parse_context(source)
        bound = TraitBound(
            Constructor(ctx.symbol_by_path("A")),
            TraitInstance(ctx.symbol_by_path("Tr")),
        )
        tree = solve(ctx, bound)
        assert [c.result.value for c in tree.candidates] == ["yes", "yes"]

    def test_determinism_including_ids(self, bevy):
        again = solve(bevy.context, bevy.context.goals[0].predicate)
        assert again == bevy.tree

    def test_existential_builtin(self):
        ctx = parse_context("trait Tr; trait Other; goal g: dyn Tr + Other: Tr;")
        tree = solve(ctx, ctx.goals[0].predicate)
        assert tree.result.value == "yes"
        assert tree.candidates[0].impl_ref == BuiltIn("dyn_bound")

    def test_existential_falls_through_to_impls(self):
        ctx = parse_context("trait Tr; trait Other; goal g: dyn Other: Tr;")
        tree = solve(ctx, ctx.goals[0].predicate)
        assert tree.result.value == "no"
        assert isinstance(tree.result.reason, NoCandidates)

    def test_depth_overflow(self):
        source = """
        trait Tr;
        newtype W<T> = T;
        newtype A = unit;
        impl<X> Tr for X where W<X>: Tr;
        goal g: A: Tr;
        """
        ctx = parse_context(source)
        tree = solve(ctx, ctx.goals[0].predicate, SolveConfig(max_depth=8))
        assert tree.result.value == "maybe"
        assert isinstance(tree.result.reason, Overflow)
        assert validate_tree(tree) == []

    def test_snapshot_dedup_keeps_single_sibling(self):
        source = """
        trait Tr;
        trait Req;
        newtype A = unit;
        impl Tr for A where A: Req, A: Req;
        goal g: A: Tr;
        """
        ctx = parse_context(source)
        tree = solve(ctx, ctx.goals[0].predicate)
        assert len(tree.candidates[0].subgoals) == 1
        no_dedup = solve(
            ctx, ctx.goals[0].predicate, SolveConfig(dedup_snapshots=False)
        )
        assert len(no_dedup.candidates[0].subgoals) == 2


class TestBevyTree:
    def test_root_is_no(self, bevy):
        assert bevy.tree.result.value == "no"

    def test_branch_goal_has_two_candidates(self, bevy):
        goal = bevy.goal_by_short("run_timer: IntoSystem<..>")
        assert len(goal.candidates) == 2
        text = pretty_print(goal.predicate, FULLY_QUALIFIED, bevy.context)
        assert text == "run_timer: bevy::IntoSystem<unit, unit, ?1>"

    def test_failing_leaves(self, bevy):
        from traitscope.views import failed_leaves

        leaves = {
            pretty_print(bevy.index[lid].predicate, SHORTENED, bevy.context)
            for lid in failed_leaves(bevy.tree)
        }
        assert leaves == {"Timer: SystemParam", "run_timer: System"}

    def test_validates(self, bevy):
        assert validate_tree(bevy.tree) == []


class TestAstOverflow:
    def test_cycle_detected(self, ast_fixture):
        tree = ast_fixture.tree
        assert tree.result.value == "maybe"
        assert isinstance(tree.result.reason, Overflow)
        assert len(tree.result.reason.cycle_path) == 3

    def test_cycle_chain_matches_recursion(self, ast_fixture):
        ctx = ast_fixture.context
        chain = [
            pretty_print(ast_fixture.index[nid].predicate, SHORTENED, ctx)
            for nid in ast_fixture.tree.result.reason.cycle_path
        ]
        assert chain == [
            "EmptyNode: AstAssocs",
            "EmptyNode: AssocData<..>",
            "EmptyNode: AstAssocs",
        ]

    def test_validates(self, ast_fixture):
        assert validate_tree(ast_fixture.tree) == []


class TestNormalizeProjection:
    def test_ast_projection_unresolved_with_overflow_evidence(self, ast_fixture):
        ctx = ast_fixture.context
        source = "goal d: <EmptyNode as AstAssocs>::Data == EmptyNode;"
        ctx2 = parse_context(
            (load_source := open("fixtures/ast.tl").read()) + source
        )
        pred = ctx2.goals[-1].predicate
        value, evidence = normalize_projection(ctx2, pred.projection)
        assert isinstance(value, Unresolved)
        assert evidence.result.value == "maybe"
        assert isinstance(evidence.result.reason, Overflow)

    def test_single_impl_substitution(self):
        source = """
        trait SystemParam { type Item; }
        trait Resource;
        newtype ResMut<T> = T;
        newtype Timer = unit;
        impl Resource for Timer;
        impl<T> SystemParam for ResMut<T> where T: Resource { type Item = ResMut<T>; }
        goal g: <ResMut<Timer> as SystemParam>::Item == ResMut<Timer>;
        """
        ctx = parse_context(source)
        pred = ctx.goals[0].predicate
        value, evidence = normalize_projection(ctx, pred.projection)
        text = pretty_print(value, FULLY_QUALIFIED, ctx)
        assert text == "ResMut<Timer>"
        assert evidence.result.value == "yes"
        tree = solve(ctx, pred)
        assert tree.result.value == "yes"

    def test_zero_impls_unresolved_no_candidates(self):
        source = """
        trait Tr { type Out; }
        newtype A = unit;
        goal g: <A as Tr>::Out == A;
        """
        ctx = parse_context(source)
        value, evidence = normalize_projection(ctx, ctx.goals[0].predicate.projection)
        assert value is UNRESOLVED
        assert evidence.result.value == "no"
        assert isinstance(evidence.result.reason, NoCandidates)

    def test_projection_mismatch_is_no(self, diesel):
        assert diesel.tree.result.value == "no"
        leaf = diesel.leaf_by_short("table.Count == Once")
        assert leaf.result.value == "no"

    def test_reflexive_projection_eq(self):
        source = """
        trait Tr { type Out; }
        newtype A = unit;
        goal g: <A as Tr>::Out == <A as Tr>::Out;
        """
        ctx = parse_context(source)
        tree = solve(ctx, ctx.goals[0].predicate)
        assert tree.result.value == "yes"

    def test_self_referential_binding_overflows(self):
        source = """
        trait Tr { type Out; }
        newtype A = unit;
        impl Tr for A { type Out = <A as Tr>::Out; }
        goal g: <A as Tr>::Out == A;
        """
        ctx = parse_context(source)
        tree = solve(ctx, ctx.goals[0].predicate)
        assert tree.result.value == "maybe"
        assert isinstance(tree.result.reason, Overflow)
        assert validate_tree(tree) == []

    def test_growing_recursive_binding_overflows(self):
        source = """
        trait Tr { type Out; }
        newtype W<T> = T;
        newtype A = unit;
        impl<T> Tr for T { type Out = <W<T> as Tr>::Out; }
        goal g: <A as Tr>::Out == A;
        """
        ctx = parse_context(source)
        tree = solve(ctx, ctx.goals[0].predicate, SolveConfig(max_depth=8))
        assert tree.result.value == "maybe"
        assert isinstance(tree.result.reason, Overflow)
        assert validate_tree(tree) == []

    def test_ambiguous_normalization_is_maybe(self):
        source = """
        trait Tr { type Out; }
        newtype A = unit;
        newtype B = unit;
        newtype C = unit;
        impl Tr for A { type Out = B; }
        impl Tr for A { type Out = C; }
        goal g: <A as Tr>::Out == B;
        """
        ctx = parse_context(source)
        tree = solve(ctx, ctx.goals[0].predicate)
        assert tree.result.value == "maybe"
        assert isinstance(tree.result.reason, Ambiguous)
        assert validate_tree(tree) == []

    def test_normalization_writes_into_rhs_variable(self):
        source = """
        trait Tr { type Out; }
        newtype A = unit;
        newtype B = unit;
        impl Tr for A { type Out = B; }
        goal g: <A as Tr>::Out == ?0;
        """
        ctx = parse_context(source)
        tree = solve(ctx, ctx.goals[0].predicate)
        assert tree.result.value == "yes"
        check = tree.candidates[0].subgoals[-1]
        assert (
            pretty_print(check.predicate, SHORTENED, ctx) == "A.Out == B"
        )


class TestProperties:
    def test_oracle_equivalence_small(self):
        rng = random.Random(99)
        config = SolveConfig(max_depth=8)
        for _ in range(300):
            plan = random_solver_plan(random.Random(rng.randint(0, 10**9)))
            ctx = parse_context(plan.to_source())
            tree = solve(ctx, ctx.goals[0].predicate, config)
            expected = oracle_solve(
                plan.impls, plan.goal_trait, plan.goal_type, config.max_depth
            )
            assert tree.result.value == expected, plan.to_source()
            assert validate_tree(tree) == [], plan.to_source()

    def test_monotone_failure(self):
        # adding impl blocks never turns yes into no
        rng = random.Random(4242)
        config = SolveConfig(max_depth=8)
        flips = 0
        for _ in range(200):
            seed = rng.randint(0, 10**9)
            sub_rng = random.Random(seed)
            plan = random_solver_plan(sub_rng, max_impls=3)
            ctx = parse_context(plan.to_source())
            before = solve(ctx, ctx.goals[0].predicate, config).result.value
            extra = random_solver_plan(sub_rng, max_impls=2)
            plan.impls.extend(extra.impls)
            ctx2 = parse_context(plan.to_source())
            after = solve(ctx2, ctx2.goals[0].predicate, config).result.value
            if before == "yes":
                assert after == "yes", plan.to_source()
                flips += 1
        assert flips > 10

    def test_and_or_consistency_random(self):
        rng = random.Random(31337)
        for _ in range(200):
            plan = random_solver_plan(random.Random(rng.randint(0, 10**9)))
            ctx = parse_context(plan.to_source())
            tree = solve(ctx, ctx.goals[0].predicate, SolveConfig(max_depth=8))
            assert validate_tree(tree) == [], plan.to_source()

    def test_overflow_cycle_paths_alpha_equivalent(self):
        from traitscope.syntax import alpha_key
        from traitscope.engine import node_index

        rng = random.Random(777)
        seen = 0
        for _ in range(300):
            plan = random_solver_plan(random.Random(rng.randint(0, 10**9)))
            ctx = parse_context(plan.to_source())
            tree = solve(ctx, ctx.goals[0].predicate, SolveConfig(max_depth=8))
            index = node_index(tree)
            for goal in iter_goals(tree):
                if isinstance(goal.result.reason, Overflow):
                    path = goal.result.reason.cycle_path
                    first, last = index[path[0]], index[path[-1]]
                    assert alpha_key(first.predicate) == alpha_key(last.predicate)
                    seen += 1
        assert seen > 20


class TestSubstitutionThreading:
    def test_builtin_sibling_does_not_wipe_bindings(self):
        # the dyn-rule candidate succeeds without adding bindings; the head
        # unifier must still thread into the following sibling subgoal
        source = """
        trait Tr;
        trait Other;
        trait OnlyB;
        newtype A = unit;
        newtype B = unit;
        newtype W<T> = T;
        impl Other for A;
        impl OnlyB for B;
        impl<T> Tr for W<T> where dyn Other: Other, T: OnlyB;
        goal bad: W<A>: Tr;
        goal good: W<B>: Tr;
        """
        ctx = parse_context(source)
        bad = solve(ctx, ctx.goal_by_label("bad").predicate)
        good = solve(ctx, ctx.goal_by_label("good").predicate)
        assert bad.result.value == "no"
        assert good.result.value == "yes"
        assert validate_tree(bad) == [] and validate_tree(good) == []

    def test_callable_resolution_threads_to_later_siblings(self, bevy):
        # the callable rule binds the parameter type, so the sibling
        # requirement is evaluated against the concrete type
        leaf = bevy.leaf_by_short("Timer: SystemParam")
        assert leaf.predicate.self_type.__class__.__name__ == "Constructor"
