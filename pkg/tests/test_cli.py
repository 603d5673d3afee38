import json
import subprocess
import sys

import pytest

from lgw import data
from lgw.cli import main
from lgw.concordance import parse_concordance

CORPUS = (
    "A Sra. Joana da Silva falou com o Dr. Pedro.\n"
    "A rainha Isabel II encontrou Marilyn Monroe em Lisboa.\n"
)

G1_FILES = ("ReconheceFormasDeTratamento", "Preposicao", "Abreviacoes")


@pytest.fixture()
def ws(tmp_path):
    """Workspace with the shipped grammars, lexicons and a small corpus."""
    for name in data.GRAMMAR_NAMES:
        (tmp_path / f"{name}.lg").write_text(data.grammar_text(name), encoding="utf-8")
    for name in data.LEXICON_NAMES:
        (tmp_path / f"{name}.dic").write_text(data.lexicon_text(name), encoding="utf-8")
    (tmp_path / "corpus.txt").write_text(CORPUS, encoding="utf-8")
    return tmp_path


def _apply(ws, out, grammar_files, cnc, extra=()):
    argv = ["apply", "--out", str(out), "--cnc", cnc]
    for g in grammar_files:
        argv += ["--grammar", str(ws / f"{g}.lg")]
    for l in ("portugues", "ingles"):
        argv += ["--lexicon", str(ws / f"{l}.dic")]
    argv += list(extra)
    argv += [str(ws / "corpus.txt")]
    return main(argv)


def test_apply_writes_concordance(ws, capsys):
    assert _apply(ws, ws / "out", G1_FILES, "g1.cnc") == 0
    out = capsys.readouterr().out
    assert "2 occurrence(s)" in out
    c = parse_concordance((ws / "out" / "g1.cnc").read_text(encoding="utf-8"))
    assert c.source_grammar == "ReconheceFormasDeTratamento"
    assert c.source_text_id == "corpus.txt"
    assert [l.match for l in c.lines] == [
        "Sra. <NOME>Joana da Silva</NOME>",
        "Dr. <NOME>Pedro</NOME>",
    ]


def test_apply_deterministic_without_stamp(ws):
    _apply(ws, ws / "a", G1_FILES, "g.cnc")
    _apply(ws, ws / "b", G1_FILES, "g.cnc")
    assert (ws / "a" / "g.cnc").read_bytes() == (ws / "b" / "g.cnc").read_bytes()


def test_apply_stamp_adds_comment(ws):
    _apply(ws, ws / "out", G1_FILES, "g.cnc", extra=["--stamp"])
    first = (ws / "out" / "g.cnc").read_text(encoding="utf-8").splitlines()[0]
    assert first.startswith("# generated ")


def test_apply_multiple_corpus_files_sorted(ws):
    (ws / "b.txt").write_text("O Dr. Pedro chegou.", encoding="utf-8")
    (ws / "a.txt").write_text("A Sra. Joana saiu.", encoding="utf-8")
    argv = ["apply", "--out", str(ws / "out"), "--cnc", "m.cnc"]
    for g in G1_FILES:
        argv += ["--grammar", str(ws / f"{g}.lg")]
    argv += ["--lexicon", str(ws / "portugues.dic")]
    # pass the files in the "wrong" order; output must not depend on it
    argv += [str(ws / "b.txt"), str(ws / "a.txt")]
    assert main(argv) == 0
    c = parse_concordance((ws / "out" / "m.cnc").read_text(encoding="utf-8"))
    assert c.source_text_id == "a.txt+b.txt"
    assert [l.match for l in c.lines] == [
        "Sra. <NOME>Joana</NOME>",
        "Dr. <NOME>Pedro</NOME>",
    ]


def test_apply_xml_annotation(ws):
    _apply(ws, ws / "out", G1_FILES, "g.cnc", extra=["--xml", "sys.xml"])
    xml = (ws / "out" / "sys.xml").read_text(encoding="utf-8")
    assert '<EM CATEG="PESSOA" TIPO="INDIVIDUAL">Joana da Silva</EM>' in xml
    from lgw.evaluator import parse_gold

    plain, anns = parse_gold(xml)
    assert plain == CORPUS
    assert len(anns) == 2


def test_full_pipeline_diff_compose_eval(ws, capsys):
    out = ws / "out"
    _apply(ws, out, G1_FILES, "g1.cnc")
    _apply(ws, out, ("ReconheceNomesCompostos",), "g2.cnc")
    capsys.readouterr()

    # diff + relation
    rc = main(
        ["diff", str(out / "g1.cnc"), str(out / "g2.cnc"), "--out", str(out)]
    )
    assert rc == 0
    html = (out / "diff.html").read_text(encoding="utf-8")
    assert html.startswith("<!DOCTYPE html>")
    rel = json.loads((out / "relation.json").read_text(encoding="utf-8"))
    # G2's proper-name mask also hits the bare first names inside G1's
    # titled matches, so the sets are disjoint but their spans touch
    assert rel["relation"] == "disjoint_with_some_overlap"
    assert rel["action"] == "keep_both"
    assert "recommendation" in rel

    # compose from the relation report
    rc = main(
        ["compose", "--report", str(out / "relation.json"), "--out", str(out)]
    )
    assert rc == 0
    main_lg = (out / "main.lg").read_text(encoding="utf-8")
    assert ":ReconheceFormasDeTratamento" in main_lg
    assert ":ReconheceNomesCompostos" in main_lg
    decisions = json.loads((out / "decisions.json").read_text(encoding="utf-8"))
    assert all(d["kept"] for d in decisions)

    # apply the composed graph: its occurrences are the union of both
    argv = ["apply", "--out", str(out), "--cnc", "main.cnc", "--main", "Main"]
    for g in data.GRAMMAR_NAMES:
        argv += ["--grammar", str(ws / f"{g}.lg")]
    argv += ["--grammar", str(out / "main.lg")]
    for l in ("portugues", "ingles"):
        argv += ["--lexicon", str(ws / f"{l}.dic")]
    argv += [str(ws / "corpus.txt")]
    assert main(argv) == 0
    joined = parse_concordance((out / "main.cnc").read_text(encoding="utf-8"))
    g1c = parse_concordance((out / "g1.cnc").read_text(encoding="utf-8"))
    g2c = parse_concordance((out / "g2.cnc").read_text(encoding="utf-8"))
    want = {(l.start, l.end, l.match) for c in (g1c, g2c) for l in c.lines}
    assert {(l.start, l.end, l.match) for l in joined.lines} == want

    # annotate with the composed graph and score against hand-made gold
    assert main(argv + ["--xml", "sys.xml"]) == 0
    gold = (
        'A Sra. <EM CATEG="PESSOA" TIPO="INDIVIDUAL">Joana da Silva</EM> falou com '
        'o Dr. <EM CATEG="PESSOA" TIPO="INDIVIDUAL">Pedro</EM>.\n'
        'A rainha <EM CATEG="PESSOA" TIPO="INDIVIDUAL">Isabel II</EM> encontrou '
        '<EM CATEG="PESSOA" TIPO="INDIVIDUAL">Marilyn Monroe</EM> em '
        '<EM CATEG="LOCAL" TIPO="CIDADE">Lisboa</EM>.\n'
    )
    (ws / "gold.xml").write_text(gold, encoding="utf-8")
    capsys.readouterr()
    rc = main(
        [
            "eval",
            "--sys", str(out / "sys.xml"),
            "--gold", str(ws / "gold.xml"),
            "--categ", "PESSOA",
            "--tipo", "INDIVIDUAL",
            "--out", str(out),
        ]
    )
    assert rc == 0
    printed = capsys.readouterr().out
    assert "precision  100.00" in printed
    assert "recall     100.00" in printed
    rep = json.loads((out / "eval.json").read_text(encoding="utf-8"))
    assert rep["tp"] == 4 and rep["n_sys"] == 4 and rep["n_gold"] == 4
    assert rep["f_measure"] == 100.0


def test_relate_subcommand(ws, tmp_path):
    out = ws / "out"
    _apply(ws, out, G1_FILES, "g1.cnc")
    rc = main(["relate", str(out / "g1.cnc"), str(out / "g1.cnc"), "--out", str(out)])
    assert rc == 0
    rel = json.loads((out / "relation.json").read_text(encoding="utf-8"))
    assert rel["relation"] == "equal" and rel["action"] == "keep_either"


# --- exit codes --------------------------------------------------------------


def test_usage_error_exits_1():
    assert main(["no-such-command"]) == 1
    assert main(["apply", "--out", "x"]) == 1  # missing --grammar and corpus


def test_missing_file_exits_2(tmp_path):
    rc = main(
        [
            "apply",
            "--grammar", str(tmp_path / "nope.lg"),
            "--out", str(tmp_path),
            str(tmp_path / "nope.txt"),
        ]
    )
    assert rc == 2


def test_bad_grammar_exits_2(tmp_path, capsys):
    (tmp_path / "bad.lg").write_text("graph B\nbox x ???\n", encoding="utf-8")
    (tmp_path / "c.txt").write_text("x", encoding="utf-8")
    rc = main(
        [
            "apply",
            "--grammar", str(tmp_path / "bad.lg"),
            "--out", str(tmp_path),
            str(tmp_path / "c.txt"),
        ]
    )
    assert rc == 2
    assert "error" in capsys.readouterr().err


def test_text_mismatch_exits_3(ws):
    out = ws / "out"
    _apply(ws, out, G1_FILES, "g1.cnc")
    (ws / "other.txt").write_text("O Dr. Pedro chegou.", encoding="utf-8")
    argv = ["apply", "--out", str(out), "--cnc", "other.cnc"]
    for g in G1_FILES:
        argv += ["--grammar", str(ws / f"{g}.lg")]
    argv += ["--lexicon", str(ws / "portugues.dic"), str(ws / "other.txt")]
    main(argv)
    rc = main(["diff", str(out / "g1.cnc"), str(out / "other.cnc"), "--out", str(out)])
    assert rc == 3


def test_eval_text_mismatch_exits_3(tmp_path):
    (tmp_path / "sys.xml").write_text("aaa", encoding="utf-8")
    (tmp_path / "gold.xml").write_text("bbb", encoding="utf-8")
    rc = main(
        [
            "eval",
            "--sys", str(tmp_path / "sys.xml"),
            "--gold", str(tmp_path / "gold.xml"),
            "--categ", "PESSOA",
        ]
    )
    assert rc == 3


def test_error_exit_codes_are_documented():
    from lgw import errors

    assert errors.TextMismatch("x").exit_code == 3
    assert errors.EmptyKeepSet("x").exit_code == 4
    assert errors.MalformedLine(1, "x").exit_code == 2


def test_console_script_help():
    proc = subprocess.run(
        [sys.executable, "-m", "lgw.cli", "--help"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "apply" in proc.stdout and "compose" in proc.stdout
