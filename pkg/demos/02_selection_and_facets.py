"""Selection restrictions and facet shifts.

A hound is Animate, so "barked" applies directly.  A vase is an Artifact and
nothing in its entry turns it into something animate: composition stops with
a SemanticAnomaly naming the expected and actual sorts.  A sergeant is Human,
and the entry licenses a shift to Animate.

The bank is an Organisation with two facets, a Location and a Person acting
for it; each predicate picks out the facet it needs.
"""

from sorted_montague.composer import compose, parse_derivation, render_trace
from sorted_montague.errors import SemanticAnomaly
from sorted_montague.lexicon import load_fixture_lexicon
from sorted_montague.logic import canonicalize, render


def analyse(lexicon, text):
    try:
        readings = compose(parse_derivation(text), lexicon)
    except SemanticAnomaly as exc:
        print(f"  * {text}")
        print(f"      expected {exc.expected}, got {exc.actual}, tried {list(exc.tried)}")
        return
    for r in readings:
        print(f"    {text}")
        print(f"      {render(canonicalize(r.term))}    [{render_trace(r.trace) or 'no coercion'}]")


def main():
    print("restriction of selection")
    bark = load_fixture_lexicon("bark.lex")
    for subject in ("the_hound", "the_vase", "the_sergeant"):
        analyse(bark, f"(app barked {subject})")

    print("\nfacets of the bank")
    bank = load_fixture_lexicon("bank.lex")
    for predicate in ("is_closed_today", "is_at_next_corner", "has_gone_mad",
                      "has_covered_for_the_extra_expenses"):
        analyse(bank, f"(app {predicate} the_bank)")

    print("\ntwo facets in one coordination")
    analyse(bank, "(coord and is_at_next_corner has_gone_mad the_bank)")


if __name__ == "__main__":
    main()
