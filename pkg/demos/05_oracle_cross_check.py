"""Two routes to the same readings.

``compose`` searches coercion chains by type and normalizes node by node.
``brute_force_oracle`` tries every sequence of available modifiers, keeps what
the type checker accepts, builds the whole unreduced term and normalizes once.
On every shipped derivation the two agree, reading for reading.
"""

import time

from sorted_montague.composer import ComposerOptions, brute_force_oracle, compose, parse_derivation
from sorted_montague.errors import CompositionError
from sorted_montague.kernel import alpha_equal
from sorted_montague.lexicon import fixture_path, load_fixture_lexicon

CASES = {
    "birmingham.lex": ["(app is_a_huge_place Birmingham)", "(coord and is_a_huge_place voted Birmingham)"],
    "bark.lex": ["(app barked the_hound)", "(app barked the_vase)", "(app barked the_sergeant)"],
    "bank.lex": ["(app is_at_next_corner the_bank)", "(coord and is_closed_today has_gone_mad the_bank)"],
}


def run(fn, root, lexicon, opts):
    try:
        return fn(root, lexicon, opts)
    except CompositionError as exc:
        return exc


def agree(a, b):
    if isinstance(a, Exception) or isinstance(b, Exception):
        return type(a) is type(b) and str(a) == str(b)
    return len(a) == len(b) and all(alpha_equal(x.term, y.term) and x.trace == y.trace for x, y in zip(a, b))


def main():
    corpus = fixture_path("itipy_corpus.txt").read_text(encoding="utf-8").splitlines()
    cases = dict(CASES, **{"itipy.lex": [l for l in corpus if l and not l.startswith("#")]})
    for name, lines in cases.items():
        lexicon = load_fixture_lexicon(name)
        for all_readings in (False, True):
            opts = ComposerOptions(all_readings=all_readings)
            timings = [0.0, 0.0]
            same = 0
            for line in lines:
                root = parse_derivation(line)
                results = []
                for i, fn in enumerate((compose, brute_force_oracle)):
                    start = time.perf_counter()
                    results.append(run(fn, root, lexicon, opts))
                    timings[i] += time.perf_counter() - start
                same += agree(*results)
            mode = "all readings" if all_readings else "cheapest   "
            print(f"{name:<15} {mode} {same}/{len(lines)} agree   "
                  f"compose {timings[0] * 1000:7.1f} ms   oracle {timings[1] * 1000:7.1f} ms")


if __name__ == "__main__":
    main()
