"""Itineraries: roads that descend and paths that lead to villages.

Motion verbs take a Path and introduce a traveller, existentially quantified
over the sort P.  A road is not a path, but its entry provides fm: Road -> Path.
Destinations are Regions; villages and mountains reach Region through the
subsumption coercions the inventory derives from its edges.
"""

import io

from sorted_montague.cli import RunConfig, cmd_analyze
from sorted_montague.composer import compose, parse_derivation, render_trace
from sorted_montague.lexicon import coercion_constants, fixture_path, load_fixture_lexicon
from sorted_montague.logic import canonicalize, dumps_report, reading_report, render


def main():
    lexicon = load_fixture_lexicon("itipy.lex")
    print("derived coercions:", ", ".join(m.name for m in coercion_constants(lexicon.inventory)))
    print()

    for text in ("(app descends route)", "(app descends sentier)",
                 "(app (app leads_to Gavarnie) route_de_Lux)",
                 "(coord and (app leads_to Vignemale) descends chemin)"):
        reading = compose(parse_derivation(text), lexicon)[0]
        print(text)
        print("  ", render(canonicalize(reading.term)))
        print("  ", render_trace(reading.trace) or "(no coercion)")
    print()

    reading = compose(parse_derivation("(app descends route)"), lexicon)[0]
    print("json report:", dumps_report(reading_report(reading)))
    print()

    # the whole shipped corpus, as the command line would print it
    out = io.StringIO()
    corpus = fixture_path("itipy_corpus.txt")
    cmd_analyze(RunConfig(str(fixture_path("itipy.sorts")), str(fixture_path("itipy.lex")), str(corpus)),
                out, io.StringIO())
    lines = out.getvalue().splitlines()
    anomalies = [l for l in lines if l.startswith("  anomaly:")]
    print(f"corpus: {len(lines)} output lines, {len(anomalies)} anomalies; last anomaly:")
    print(anomalies[-1])


if __name__ == "__main__":
    main()
