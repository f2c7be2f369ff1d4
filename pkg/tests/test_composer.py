import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import local_inventory, local_lexicon
from gen_terms import outcome, random_instance, same_outcome
from sorted_montague.composer import (
    Apply,
    CoercionStep,
    ComposerOptions,
    Coord,
    Leaf,
    Reading,
    brute_force_oracle,
    compose,
    coordinate,
    enumerate_coercions,
    format_derivation,
    parse_derivation,
    render_trace,
    replay_trace,
)
from sorted_montague.errors import (
    AmbiguityOverflow,
    DerivationSyntaxError,
    InvalidTraceAddress,
    ModifierNotAvailable,
    RigidityViolation,
    SemanticAnomaly,
    UnknownWord,
)
from sorted_montague.kernel import (
    PROP,
    App,
    Arrow,
    Const,
    SortRef,
    Var,
    alpha_equal,
    conj,
    exists,
    is_normal,
    type_of,
)
from sorted_montague.lexicon import fixture_path, load_lexicon

T, P, Pl = SortRef("T"), SortRef("P"), SortRef("Pl")
BIRMINGHAM = Const("Birmingham", T)
T2, T3 = Const("t2", Arrow(T, P)), Const("t3", Arrow(T, Pl))
HUGE, VOTED = Const("huge_place", Arrow(Pl, PROP)), Const("voted", Arrow(P, PROP))


def names(reading):
    return [s.modifier for s in reading.trace]


def one(readings):
    assert len(readings) == 1
    return readings[0]


class TestDerivations:
    def test_parse(self):
        root = parse_derivation("(coord and is_a_huge_place voted Birmingham)")
        assert root == Coord("and", Leaf("is_a_huge_place"), Leaf("voted"), Leaf("Birmingham"))

    def test_nested(self):
        root = parse_derivation("(app (app leads_to Lux) route)")
        assert root == Apply(Apply(Leaf("leads_to"), Leaf("Lux")), Leaf("route"))
        assert format_derivation(root) == "(app (app leads_to Lux) route)"

    def test_bare_leaf(self):
        assert parse_derivation("Birmingham") == Leaf("Birmingham")

    @pytest.mark.parametrize("text", ["", "(app f", "(app f a))", "(app f a b)", "(coord or p q a)",
                                      "(frob a b)", "()"])
    def test_syntax_errors(self, text):
        with pytest.raises(DerivationSyntaxError):
            parse_derivation(text)


class TestEnumeration:
    def test_birmingham_place(self, birmingham):
        mods = birmingham.lookup("Birmingham").modifiers
        assert [[m.name for m in c] for c in enumerate_coercions(T, Pl, mods, 2)] == [["t3"]]

    def test_identity_repair(self, birmingham):
        mods = birmingham.lookup("Birmingham").modifiers
        assert enumerate_coercions(T, T, mods, 2) == [[]]

    def test_no_repair(self, birmingham):
        mods = birmingham.lookup("Birmingham").modifiers
        assert enumerate_coercions(Pl, T, mods, 3) == []


class TestGoldenReadings:
    def test_simple_coercion(self, birmingham):
        r = one(compose(parse_derivation("(app is_a_huge_place Birmingham)"), birmingham))
        assert alpha_equal(r.term, App(HUGE, App(T3, BIRMINGHAM)))
        assert names(r) == ["t3"] and r.cost == 1
        assert r.trace == (CoercionStep("t3", (1,), T, Pl),)

    def test_copredication(self, birmingham):
        r = one(compose(parse_derivation("(coord and is_a_huge_place voted Birmingham)"), birmingham))
        assert alpha_equal(r.term, conj(App(HUGE, App(T3, BIRMINGHAM)), App(VOTED, App(T2, BIRMINGHAM))))
        assert [(s.modifier, s.path) for s in r.trace] == [("t3", (0,)), ("t2", (1,))]
        assert render_trace(r.trace) == "t3@0: T -> Pl; t2@1: T -> P"

    def test_hound_barks(self, bark):
        r = one(compose(parse_derivation("(app barked the_hound)"), bark))
        animate = SortRef("Animate")
        assert r.cost == 0
        assert alpha_equal(r.term, App(Const("barked", Arrow(animate, PROP)), Const("the_hound", animate)))

    def test_vase_does_not_bark(self, bark):
        with pytest.raises(SemanticAnomaly) as info:
            compose(parse_derivation("(app barked the_vase)"), bark)
        assert info.value.expected == SortRef("Animate")
        assert info.value.actual == SortRef("Artifact")
        assert info.value.path == (1,)
        assert info.value.tried == ("Id_Artifact",)

    @pytest.mark.parametrize("predicate, expected", [
        ("is_closed_today", []),
        ("is_at_next_corner", ["location_of"]),
        ("has_gone_mad", ["agent_of"]),
        ("has_covered_for_the_extra_expenses", ["agent_of"]),
    ])
    def test_bank_facets(self, bank, predicate, expected):
        r = one(compose(parse_derivation(f"(app {predicate} the_bank)"), bank))
        assert names(r) == expected

    def test_bank_facet_sorts(self, bank):
        location = one(compose(parse_derivation("(app is_at_next_corner the_bank)"), bank))
        person = one(compose(parse_derivation("(app has_gone_mad the_bank)"), bank))
        assert location.trace[0].target == SortRef("Location")
        assert person.trace[0].target == SortRef("Person")

    def test_fictive_motion(self, itipy):
        r = one(compose(parse_derivation("(app descends route)"), itipy))
        traveller, path, road = SortRef("P"), SortRef("Path"), SortRef("Road")
        follow = Const("follow", Arrow(traveller, Arrow(path, PROP)))
        godown = Const("godown", Arrow(traveller, PROP))
        fm = Const("fm", Arrow(road, path))
        x = Var("x")
        expected = exists("x", traveller, conj(App(App(follow, x), App(fm, Const("route", road))),
                                               App(godown, x)))
        assert alpha_equal(r.term, expected)
        assert [(s.modifier, s.source, s.target) for s in r.trace] == [("fm", road, path)]

    def test_region_coercion(self, itipy):
        r = one(compose(parse_derivation("(app (app leads_to Lux) route)"), itipy))
        assert names(r) == ["coerce_Village_Region", "fm"]
        assert [s.path for s in r.trace] == [(0, 1), (1,)]


class TestCoordination:
    def test_rigid_modifier_blocks(self, birmingham):
        lex = local_lexicon("rigid_birmingham.lex", birmingham.inventory)
        with pytest.raises(RigidityViolation) as info:
            compose(parse_derivation("(coord and is_a_huge_place voted Birmingham)"), lex)
        assert info.value.modifier == "t2"

    def test_rigid_modifier_in_simple_application(self, birmingham):
        lex = local_lexicon("rigid_birmingham.lex", birmingham.inventory)
        assert names(one(compose(parse_derivation("(app voted Birmingham)"), lex))) == ["t2"]

    def test_rigid_same_facet_allowed(self, birmingham):
        lex = local_lexicon("rigid_birmingham.lex", birmingham.inventory)
        r = one(compose(parse_derivation("(coord and voted voted Birmingham)"), lex))
        assert names(r) == ["t2", "t2"]

    def test_degenerate_conjunction(self, birmingham):
        r = one(compose(parse_derivation("(coord and voted voted Birmingham)"), birmingham))
        assert alpha_equal(r.term, conj(App(VOTED, App(T2, BIRMINGHAM)), App(VOTED, App(T2, BIRMINGHAM))))

    def test_coordinate_directly(self, birmingham):
        def entry(word):
            e = birmingham.lookup(word)
            return [Reading(e.main_term, e.main_type)]

        out = coordinate("and", entry("is_a_huge_place"), entry("voted"), entry("Birmingham"),
                         birmingham, ComposerOptions(),
                         modifiers=birmingham.modifiers_for("Birmingham"))
        assert alpha_equal(one(out).term, conj(App(HUGE, App(T3, BIRMINGHAM)),
                                               App(VOTED, App(T2, BIRMINGHAM))))

    def test_identity_only_coordination(self):
        lex = local_lexicon("give.lex", local_inventory("e.sorts"))
        e = SortRef("e")
        p, q, x = Const("p", Arrow(e, PROP)), Const("q", Arrow(e, PROP)), Const("x", e)
        out = coordinate("and", [Reading(p, p.type)], [Reading(q, q.type)], [Reading(x, e)],
                         lex, ComposerOptions())
        assert one(out).term == conj(App(p, x), App(q, x))
        assert one(out).cost == 0

    def test_conjunction_word_checked(self, birmingham):
        with pytest.raises(ValueError):
            coordinate("or", [], [], [], birmingham, ComposerOptions())


class TestErrors:
    def test_unknown_word_carries_path(self, birmingham):
        with pytest.raises(UnknownWord) as info:
            compose(parse_derivation("(app voted (app of Birmingham))"), birmingham)
        assert info.value.word == "of" and info.value.path == (1, 0)

    def test_not_a_function(self, birmingham):
        with pytest.raises(SemanticAnomaly) as info:
            compose(parse_derivation("(app Birmingham voted)"), birmingham)
        assert info.value.expected is None and info.value.path == (0,)

    def test_overflow(self, birmingham):
        doc = """{"entries": [
          {"word": "it", "term": "it", "type": "T", "modifiers": [
            {"name": "a", "source": "T", "target": "P"},
            {"name": "b", "source": "T", "target": "P"},
            {"name": "c", "source": "T", "target": "P"}]},
          {"word": "voted", "term": "voted", "type": "P -> t"}]}"""
        lex = load_lexicon(doc, birmingham.inventory)
        root = parse_derivation("(app voted it)")
        assert [names(r) for r in compose(root, lex)] == [["a"], ["b"], ["c"]]
        with pytest.raises(AmbiguityOverflow) as info:
            compose(root, lex, ComposerOptions(max_readings=2))
        assert info.value.count == 3 and info.value.limit == 2

    @pytest.mark.parametrize("bad", [0, -1, True, 1.5])
    def test_options_validated(self, bad):
        with pytest.raises(ValueError):
            ComposerOptions(max_chain=bad)


def corpus_derivations():
    lines = fixture_path("itipy_corpus.txt").read_text(encoding="utf-8").splitlines()
    return [parse_derivation(l) for l in lines if l.strip() and not l.startswith("#")]


def fixture_cases(request):
    cases = [
        ("birmingham", "(app is_a_huge_place Birmingham)"),
        ("birmingham", "(coord and is_a_huge_place voted Birmingham)"),
        ("birmingham", "(coord and voted is_a_huge_place Birmingham)"),
        ("bark", "(app barked the_hound)"),
        ("bark", "(app barked the_vase)"),
        ("bark", "(app barked the_sergeant)"),
        ("bank", "(app is_closed_today the_bank)"),
        ("bank", "(app is_at_next_corner the_bank)"),
        ("bank", "(app has_gone_mad the_bank)"),
        ("bank", "(coord and is_at_next_corner has_gone_mad the_bank)"),
    ]
    return [(request.getfixturevalue(lex), parse_derivation(d)) for lex, d in cases]


class TestReplay:
    def test_t3_trace(self, birmingham):
        root = parse_derivation("(app is_a_huge_place Birmingham)")
        term = replay_trace(root, birmingham, [CoercionStep("t3", (1,), T, Pl)])
        assert alpha_equal(term, App(HUGE, App(T3, BIRMINGHAM)))

    def test_empty_trace(self, bark):
        root = parse_derivation("(app barked the_hound)")
        assert alpha_equal(replay_trace(root, bark, []), compose(root, bark)[0].term)

    def test_invalid_address(self, birmingham):
        root = parse_derivation("(app is_a_huge_place Birmingham)")
        with pytest.raises(InvalidTraceAddress):
            replay_trace(root, birmingham, [CoercionStep("t3", (0,), T, Pl)])
        with pytest.raises(InvalidTraceAddress):
            replay_trace(root, birmingham, [CoercionStep("t3", (1, 1), T, Pl)])

    def test_unavailable_modifier(self, birmingham):
        root = parse_derivation("(app is_a_huge_place Birmingham)")
        with pytest.raises(ModifierNotAvailable):
            replay_trace(root, birmingham, [CoercionStep("t9", (1,), T, Pl)])
        with pytest.raises(ModifierNotAvailable):
            replay_trace(root, birmingham, [CoercionStep("t3", (1,), T, P)])

    def test_chain_missing_the_site_type(self, birmingham):
        root = parse_derivation("(app is_a_huge_place Birmingham)")
        with pytest.raises(ModifierNotAvailable):
            replay_trace(root, birmingham, [CoercionStep("t2", (1,), T, P)])

    def test_empty_trace_on_a_clash(self, birmingham):
        root = parse_derivation("(app is_a_huge_place Birmingham)")
        with pytest.raises(SemanticAnomaly):
            replay_trace(root, birmingham, [])

    def test_corpus_sweep(self, itipy):
        for root in corpus_derivations():
            try:
                readings = compose(root, itipy, ComposerOptions(all_readings=True))
            except SemanticAnomaly:
                continue
            for r in readings:
                assert alpha_equal(replay_trace(root, itipy, r.trace), r.term)

    def test_fixture_sweep(self, request):
        for lex, root in fixture_cases(request):
            try:
                readings = compose(root, lex)
            except SemanticAnomaly:
                continue
            for r in readings:
                assert alpha_equal(replay_trace(root, lex, r.trace), r.term)


class TestInvariants:
    def test_soundness_on_corpus(self, itipy):
        for root in corpus_derivations():
            try:
                readings = compose(root, itipy, ComposerOptions(all_readings=True))
            except SemanticAnomaly:
                continue
            for r in readings:
                assert is_normal(r.term)
                assert type_of(r.term, None, itipy.inventory) == r.type == PROP

    def test_minimality(self, itipy):
        for root in corpus_derivations():
            try:
                every = compose(root, itipy, ComposerOptions(all_readings=True))
            except SemanticAnomaly:
                continue
            cheapest = compose(root, itipy)
            least = min(r.cost for r in every)
            assert all(r.cost == least for r in cheapest)
            assert [r for r in every if r.cost == least] == cheapest

    def test_readings_are_ranked(self, itipy):
        for root in corpus_derivations():
            try:
                readings = compose(root, itipy, ComposerOptions(all_readings=True))
            except SemanticAnomaly:
                continue
            keys = [(r.cost, render_trace(r.trace)) for r in readings]
            assert keys == sorted(keys)

    def test_deterministic(self, itipy):
        roots = corpus_derivations()

        def run():
            out = []
            for root in roots:
                try:
                    out.append(compose(root, itipy))
                except SemanticAnomaly as exc:
                    out.append(str(exc))
            return out

        assert run() == run()


class TestOracle:
    def test_fixture_cases(self, request):
        for lex, root in fixture_cases(request):
            for all_readings in (False, True):
                opts = ComposerOptions(all_readings=all_readings)
                a = _run(compose, root, lex, opts)
                b = _run(brute_force_oracle, root, lex, opts)
                assert same_outcome(a, b), format_derivation(root)

    def test_vase_verdict(self, bark):
        root = parse_derivation("(app barked the_vase)")
        with pytest.raises(SemanticAnomaly) as info:
            brute_force_oracle(root, bark)
        assert info.value.expected == SortRef("Animate")

    def test_copredication(self, birmingham):
        root = parse_derivation("(coord and is_a_huge_place voted Birmingham)")
        r = one(brute_force_oracle(root, birmingham))
        assert alpha_equal(r.term, conj(App(HUGE, App(T3, BIRMINGHAM)), App(VOTED, App(T2, BIRMINGHAM))))

    def test_rigid(self, birmingham):
        lex = local_lexicon("rigid_birmingham.lex", birmingham.inventory)
        root = parse_derivation("(coord and is_a_huge_place voted Birmingham)")
        assert same_outcome(_run(compose, root, lex), _run(brute_force_oracle, root, lex))

    def test_corpus(self, itipy):
        for root in corpus_derivations():
            a = _run(compose, root, itipy)
            b = _run(brute_force_oracle, root, itipy)
            assert same_outcome(a, b), format_derivation(root)

    @settings(max_examples=150, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_random_instances(self, rng):
        inst = random_instance(rng)
        assert same_outcome(outcome(compose, inst), outcome(brute_force_oracle, inst))


def _run(fn, root, lex, opts=None):
    try:
        return fn(root, lex, opts or ComposerOptions())
    except (SemanticAnomaly, RigidityViolation, AmbiguityOverflow, UnknownWord) as exc:
        return exc
