"""Birmingham: one name, a town, a people and a place.

The entry for "Birmingham" has the main type T (town) and two facet
modifiers, t2: T -> P and t3: T -> Pl.  A predicate selecting a place forces
t3; a coordination of a place predicate with a people predicate needs both
facets at once, which the polymorphic conjunction AND provides.
"""

from sorted_montague.composer import compose, parse_derivation, render_trace, replay_trace
from sorted_montague.errors import RigidityViolation
from sorted_montague.kernel import alpha_equal, format_term
from sorted_montague.lexicon import fixture_path, load_fixture_lexicon, load_lexicon
from sorted_montague.logic import canonicalize, render

RIGID_T2 = """{"entries": [
  {"word": "Birmingham", "term": "Birmingham", "type": "T", "modifiers": [
    {"name": "t2", "source": "T", "target": "P", "rigid": true},
    {"name": "t3", "source": "T", "target": "Pl"}]},
  {"word": "is_a_huge_place", "term": "huge_place", "type": "Pl -> t"},
  {"word": "voted", "term": "voted", "type": "P -> t"}]}"""


def show(lexicon, text):
    print(f"> {text}")
    for r in compose(parse_derivation(text), lexicon):
        print(f"  {render(canonicalize(r.term))}")
        print(f"  cost {r.cost}: {render_trace(r.trace) or '(no coercion)'}")
    print()


def main():
    lexicon = load_fixture_lexicon("birmingham.lex")
    print(f"lexicon: {fixture_path('birmingham.lex').name}")
    for m in lexicon.lookup("Birmingham").modifiers:
        print(f"  {m.name}: {m.source} -> {m.target}")
    print()

    show(lexicon, "(app is_a_huge_place Birmingham)")
    show(lexicon, "(coord and is_a_huge_place voted Birmingham)")

    # the trace alone is enough to rebuild the reading
    root = parse_derivation("(coord and is_a_huge_place voted Birmingham)")
    reading = compose(root, lexicon)[0]
    rebuilt = replay_trace(root, lexicon, reading.trace)
    print("replayed from its trace:", format_term(canonicalize(rebuilt)))
    print("alpha-equal to the reading:", alpha_equal(rebuilt, reading.term))
    print()

    # a rigid t2 may not be mixed with another facet inside one coordination
    rigid = load_lexicon(RIGID_T2, lexicon.inventory)
    try:
        compose(root, rigid)
    except RigidityViolation as exc:
        print("with t2 rigid:", exc)
    show(rigid, "(coord and voted voted Birmingham)")


if __name__ == "__main__":
    main()
