"""Sort inventories drawn from classifier systems.

A Japanese counter inventory has a generic tier (Tsu, Nin, ...), a common tier
and specialised counters; a noun may take several classifiers depending on
the reading.  A sign-language inventory uses hand shapes as pro-forms.
"""

from sorted_montague.composer import enumerate_coercions
from sorted_montague.kernel import SortRef
from sorted_montague.lexicon import classifiers_of, coercion_constants, load_fixture_inventory, topological_sorts


def main():
    japanese = load_fixture_inventory("japanese.sorts")
    print(f"japanese counters: {len(japanese)} sorts")
    for s in topological_sorts(japanese):
        supers = ", ".join(japanese.hyperonyms(s.name)) or "-"
        print(f"  {s.name:<5} {s.tier:<12} below: {supers:<5} {s.gloss or ''}")
    print("  person ->", classifiers_of(japanese, "person"))
    print()

    # derivation of coercions is opt-in; the edges still allow chain search
    mods = coercion_constants(japanese)
    chains = enumerate_coercions(SortRef("Mai"), SortRef("Tsu"), mods, 1)
    print("Mai to Tsu through:", [[m.name for m in c] for c in chains])
    print()

    lsf = load_fixture_inventory("lsf.sorts")
    print(f"hand shapes: {', '.join(lsf.names)}")
    print("  car ->", classifiers_of(lsf, "car"))


if __name__ == "__main__":
    main()
