import io
import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from sorted_montague.cli import RunConfig, cmd_analyze, main
from sorted_montague.lexicon import fixture_path

DATA = {name: str(fixture_path(name)) for name in (
    "birmingham.sorts", "birmingham.lex", "bark.sorts", "bark.lex", "bank.sorts", "bank.lex",
    "itipy.sorts", "itipy.lex", "japanese.sorts", "lsf.sorts", "itipy_corpus.txt")}
PAIRS = [("birmingham.sorts", "birmingham.lex"), ("bark.sorts", "bark.lex"),
         ("bank.sorts", "bank.lex"), ("itipy.sorts", "itipy.lex")]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def analyze(capsys, tmp_path, lexicon, lines, *flags):
    src = tmp_path / "input.txt"
    src.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return run(capsys, "analyze", "--inventory", DATA[lexicon + ".sorts"],
               "--lexicon", DATA[lexicon + ".lex"], "--input", str(src), *flags)


class TestCheck:
    @pytest.mark.parametrize("inventory, lexicon", PAIRS)
    def test_shipped_pairs(self, capsys, inventory, lexicon):
        assert run(capsys, "check", "--inventory", DATA[inventory], "--lexicon", DATA[lexicon]) == (0, "", "")

    @pytest.mark.parametrize("inventory", ["japanese.sorts", "lsf.sorts"])
    def test_inventory_only(self, capsys, inventory):
        assert run(capsys, "check", "--inventory", DATA[inventory]) == (0, "", "")

    def test_cycle(self, capsys):
        code, out, _ = run(capsys, "check", "--inventory", str(FIXTURES / "cyclic.sorts"))
        assert code == 3
        assert "A ⊑ B ⊑ C ⊑ A" in out

    def test_ill_typed_modifier(self, capsys):
        code, out, _ = run(capsys, "check", "--inventory", DATA["birmingham.sorts"],
                           "--lexicon", str(FIXTURES / "bad_modifier.lex"))
        assert code == 3
        assert "'Birmingham'" in out and "'t2'" in out
        assert out.startswith(str(FIXTURES / "bad_modifier.lex") + ":6:")

    def test_every_finding_is_printed(self, capsys):
        code, out, _ = run(capsys, "check", "--inventory", str(FIXTURES / "duplicate.sorts"))
        assert code == 3
        assert len(out.splitlines()) == 2

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "check", "--inventory", str(tmp_path / "nope.sorts"))
        assert code == 2 and "cannot read" in err

    def test_unparseable(self, capsys, tmp_path):
        bad = tmp_path / "bad.sorts"
        bad.write_text('{"sorts": [\n', encoding="utf-8")
        code, out, err = run(capsys, "check", "--inventory", str(bad))
        assert code == 2 and out == "" and "parse-error" in err


class TestSorts:
    def test_listing(self, capsys):
        code, out, _ = run(capsys, "sorts", "--inventory", DATA["japanese.sorts"])
        assert code == 0
        rows = [line.split("\t") for line in out.splitlines()]
        tsu = next(r for r in rows if r[0] == "Tsu")
        assert tsu[3].startswith("empty semantic content")
        names = [r[0] for r in rows]
        assert names.index("Tsu") < names.index("Mai")

    def test_noun(self, capsys):
        assert run(capsys, "sorts", "--inventory", DATA["japanese.sorts"], "--noun", "person") == (0, "Nin\nMei\n", "")

    def test_handshapes(self, capsys):
        code, out, _ = run(capsys, "sorts", "--inventory", DATA["lsf.sorts"], "--noun", "car")
        assert (code, out) == (0, "M_horizontal\nC_shape\n")

    def test_unknown_noun(self, capsys):
        assert run(capsys, "sorts", "--inventory", DATA["japanese.sorts"], "--noun", "unicorn") == (0, "", "")

    def test_invalid_inventory(self, capsys):
        code, _, _ = run(capsys, "sorts", "--inventory", str(FIXTURES / "cyclic.sorts"))
        assert code == 3


class TestAnalyze:
    def test_copredication(self, capsys, tmp_path):
        code, out, _ = analyze(capsys, tmp_path, "birmingham", ["(coord and is_a_huge_place voted Birmingham)"])
        assert code == 0
        assert out.splitlines() == [
            "(coord and is_a_huge_place voted Birmingham)",
            "  huge_place(t3(Birmingham)) ∧ voted(t2(Birmingham))",
            "    cost 2: t3@0: T -> Pl; t2@1: T -> P",
        ]

    def test_strict_anomaly(self, capsys, tmp_path):
        code, out, _ = analyze(capsys, tmp_path, "bark", ["(app barked the_vase)"], "--strict")
        assert code == 4
        assert "anomaly" in out and "Animate" in out and "Artifact" in out

    def test_anomaly_without_strict(self, capsys, tmp_path):
        code, _, _ = analyze(capsys, tmp_path, "bark", ["(app barked the_vase)"])
        assert code == 0

    def test_anomaly_json(self, capsys, tmp_path):
        code, out, _ = analyze(capsys, tmp_path, "bark", ["(app barked the_vase)"], "--format", "json")
        record = json.loads(out)["anomaly"]
        assert record["kind"] == "SemanticAnomaly"
        assert (record["expected"], record["actual"]) == ("Animate", "Artifact")
        assert record["tried"] == ["Id_Artifact"] and record["path"] == [1]

    def test_fictive_motion(self, capsys, tmp_path):
        _, out, _ = analyze(capsys, tmp_path, "itipy", ["(app descends route)"])
        assert "  ∃x0:P. follow(x0, fm(route)) ∧ godown(x0)" in out.splitlines()

    def test_ascii(self, capsys, tmp_path):
        _, out, _ = analyze(capsys, tmp_path, "itipy", ["(app descends route)"], "--ascii")
        assert "  exists x0:P. follow(x0, fm(route)) and godown(x0)" in out.splitlines()

    def test_json(self, capsys, tmp_path):
        _, out, _ = analyze(capsys, tmp_path, "birmingham",
                            ["(app is_a_huge_place Birmingham)", "(app voted Birmingham)"], "--format", "json")
        docs = [json.loads(line) for line in out.splitlines()]
        assert [d[0]["formula"] for d in docs] == ["huge_place(t3(Birmingham))", "voted(t2(Birmingham))"]
        assert docs[0][0]["trace"][0]["path"] == [1]

    def test_raw(self, capsys, tmp_path):
        _, out, _ = analyze(capsys, tmp_path, "birmingham", ["(app is_a_huge_place Birmingham)"], "--format", "raw")
        assert out.splitlines()[1] == "  huge_place (t3 Birmingham)"

    def test_all_readings(self, capsys, tmp_path):
        _, few, _ = analyze(capsys, tmp_path, "itipy", ["(app (app leads_to Lux) route)"])
        _, many, _ = analyze(capsys, tmp_path, "itipy", ["(app (app leads_to Lux) route)"], "--all")
        assert len(many.splitlines()) >= len(few.splitlines())

    def test_comments_and_blank_lines(self, capsys, tmp_path):
        _, out, _ = analyze(capsys, tmp_path, "bark", ["# comment", "", "(app barked the_hound)"])
        assert out.splitlines()[0] == "(app barked the_hound)"
        assert out.splitlines()[2] == "    cost 0: (no coercion)"

    def test_syntax_error_reports_line(self, capsys, tmp_path):
        code, out, err = analyze(capsys, tmp_path, "bark", ["(app barked", "(app barked the_hound)"])
        assert code == 2
        assert err.startswith(str(tmp_path / "input.txt") + ":1:")
        assert "(app barked the_hound)" in out

    def test_unknown_word(self, capsys, tmp_path):
        code, out, _ = analyze(capsys, tmp_path, "bark", ["(app barked the_cat)"], "--strict")
        assert code == 4 and "the_cat" in out

    def test_max_chain_must_be_positive(self, capsys, tmp_path):
        with pytest.raises(SystemExit) as info:
            analyze(capsys, tmp_path, "bark", ["(app barked the_hound)"], "--max-chain", "0")
        assert info.value.code == 2

    def test_missing_input(self, capsys, tmp_path):
        code, _, err = run(capsys, "analyze", "--inventory", DATA["bark.sorts"], "--lexicon",
                           DATA["bark.lex"], "--input", str(tmp_path / "none.txt"))
        assert code == 2 and "cannot read" in err

    def test_parallel_matches_sequential(self):
        def go(jobs):
            out = io.StringIO()
            config = RunConfig(DATA["itipy.sorts"], DATA["itipy.lex"], DATA["itipy_corpus.txt"], jobs=jobs)
            assert cmd_analyze(config, out, io.StringIO()) == 0
            return out.getvalue()

        assert go(4) == go(1)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sorted_montague", "sorts", "--inventory",
                           DATA["japanese.sorts"], "--noun", "person"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "Nin\nMei\n"


def test_subcommand_required(capsys):
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
