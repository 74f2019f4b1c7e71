import json
import shutil

import pytest

from filesem import corpus as C
from filesem.cli import main

from conftest import DATA


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_true_against_m2(capsys):
    code, out, _ = run(capsys, "eval", DATA / "hotel.model", DATA / "memo_ud.box", "--context", "m2")
    assert (code, out) == (0, "true\n")


def test_eval_false_against_m1(capsys):
    code, out, _ = run(capsys, "eval", DATA / "hotel.model", DATA / "memo_ud.box", "--context", "m1")
    assert code == 1 and out.startswith("false\n  failed: 0: Ex x3")


def test_eval_presup_failure(capsys):
    code, out, _ = run(capsys, "eval", DATA / "agent.model", DATA / "empty_split.box")
    assert code == 2 and out.startswith("presup-failure: ")


def test_eval_malformed_box(capsys, tmp_path):
    bad = tmp_path / "bad.box"
    bad.write_text("[| hotel(x3")
    code, _, err = run(capsys, "eval", DATA / "hotel.model", bad)
    assert code == 3 and "line 1" in err


def test_eval_unbound_term(capsys, tmp_path):
    bad = tmp_path / "bad.box"
    bad.write_text("[| hotel(x3)]")
    code, _, err = run(capsys, "eval", DATA / "hotel.model", bad)
    assert code == 3 and "x3" in err


def test_eval_trace_and_json(capsys):
    code, out, _ = run(capsys, "eval", DATA / "agent.model", DATA / "agent_story.box", "--trace")
    assert code == 0 and "# p2 @ v1" in out and "x5" in out
    code, out, _ = run(capsys, "eval", DATA / "agent.model", DATA / "agent_story.box", "--trace", "--json")
    report = json.loads(out)
    assert report["verdict"] == "true" and report["failures"] == []
    assert any(k.startswith("p2") for k in report["trace"])


def test_readings_report(capsys):
    code, out, _ = run(capsys, "readings", DATA / "team.model", DATA / "team_a_undetermined.skel")
    lines = out.splitlines()
    assert code == 0
    assert [l for l in lines if "SURVIVES" in l] == ["narrow/p1/x2,p2 => SURVIVES"]
    assert "wide/top/r,p1 => FILTERED(presup [plan(r)])" in lines


def test_readings_two_survivors(capsys):
    _, out, _ = run(capsys, "readings", DATA / "team.model", DATA / "team_a_unspecified.skel")
    assert out.count("SURVIVES") == 2


def test_readings_quantifier_all_filtered(capsys):
    _, out, _ = run(capsys, "readings", DATA / "congress.model", DATA / "congress_most_identified.skel")
    assert out.strip() and all("FILTERED(dref-domain" in l for l in out.splitlines())


def test_readings_json_mirrors_text(capsys):
    _, text, _ = run(capsys, "readings", DATA / "team.model", DATA / "team_a_undisclosed.skel")
    _, js, _ = run(capsys, "readings", DATA / "team.model", DATA / "team_a_undisclosed.skel", "--json")
    rows = json.loads(js)
    rebuilt = [
        f"{r['scope']}/{r['landing']}/{r['y']},{r['q']} => "
        + ("SURVIVES" if r["status"] == "SURVIVES" else f"FILTERED({r['condition']})")
        for r in rows
    ]
    assert rebuilt == text.splitlines()


def test_readings_invalid_skeleton(capsys, tmp_path):
    bad = tmp_path / "bad.skel"
    bad.write_text("skeleton { source r; spine P(HOLE); }")
    code, _, err = run(capsys, "readings", DATA / "team.model", bad)
    assert code == 3 and "indef" in err


def test_shipped_corpus_passes(capsys):
    code, out, _ = run(capsys, "scenarios")
    assert code == 0 and out.splitlines()[-1] == "25/25 passed"


def test_output_is_deterministic(capsys):
    first = run(capsys, "scenarios", "--json")
    second = run(capsys, "scenarios", "--json")
    assert first == second


def _copy_corpus(tmp_path):
    target = tmp_path / "corpus"
    shutil.copytree(DATA, target)
    return target


def test_flipped_expectation_exits_4(capsys, tmp_path):
    corpus = _copy_corpus(tmp_path)
    fx = corpus / "memo-m2-unidentified.scenario"
    fx.write_text(fx.read_text().replace("expect: true", "expect: false"))
    code, out, err = run(capsys, "scenarios", corpus)
    assert code == 4 and "memo-m2-unidentified" in err
    assert "FAIL  memo-m2-unidentified" in out


def test_empty_corpus_warns(capsys, tmp_path):
    code, _, err = run(capsys, "scenarios", tmp_path)
    assert code == 0 and "warning" in err


def test_invalid_corpus_exits_3(capsys, tmp_path):
    (tmp_path / "x.scenario").write_text("name: x\nmodel: m.model\n")
    code, _, err = run(capsys, "scenarios", tmp_path)
    assert code == 3 and "missing" in err


def test_oracle_table(capsys):
    code, out, _ = run(capsys, "oracle", "--seed", 2, "--instances", 30, "--skeletons", 3)
    assert code == 0 and out.splitlines()[0] == "seed 2"
    code, out, _ = run(capsys, "oracle", "--seed", 2, "--instances", 30, "--skeletons", 3, "--json")
    assert json.loads(out)["id-expansion"]["rate"] == 1.0


@pytest.mark.parametrize("text, msg", [
    ("name: a\nmodel: m\ndiscourse: d\nskeleton: s\nexpect: true\nbasis: b\nanchor: c\n", "exactly one"),
    ("name: a\nmodel: m\ndiscourse: d\nexpect: maybe\nbasis: b\nanchor: c\n", "verdict"),
    ("name: a\nmodel: m\nskeleton: s\nexpect: wide\nbasis: b\nanchor: c\n", "reading set"),
    ("name: a\nmodel: m\nskeleton: s\ncontext: r\nexpect: {}\nbasis: b\nanchor: c\n", "context"),
    ("name: a\ncolour: red\n", "bad line"),
    ("name: a\nname: b\n", "duplicate"),
])
def test_fixture_validation(tmp_path, text, msg):
    p = tmp_path / "f.scenario"
    p.write_text(text)
    with pytest.raises(C.CorpusError, match=msg):
        C.load_fixture(p)


def test_every_fixture_documents_itself():
    for fx in C.load_corpus(DATA):
        assert fx.anchor and fx.basis in ("judgment", "constructed")
        assert fx.model.exists() and (fx.discourse or fx.skeleton).exists()
