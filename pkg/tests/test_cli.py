import json

import pytest

from boolcondense.cheatsheet import QueryTranscript
from boolcondense.cli import main


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_measure_modrub(capsys):
    code, rep = run_json(capsys, ["measure", "modrub:k=4", "--measures", "bs,fbs,C,C_0,C1"])
    assert code == 0
    assert set(rep) == {"function", "measures", "config", "timing_ms"}
    vals = {k: v["value"] for k, v in rep["measures"].items()}
    assert vals == {"bs": 8, "fbs": "8/1", "C": 8, "C0": 8, "C1": 4}
    assert rep["config"]["n"] == 16


def test_measure_csv(capsys):
    code = main(["measure", "tribes:k=4", "--measures", "D,C0"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0 and out == ["measure,value", "D,8", "C0,4"]


def test_measure_table_file(tmp_path, capsys):
    p = tmp_path / "f.txt"
    p.write_text("3\n00010111\n")
    code, rep = run_json(capsys, ["measure", str(p), "--measures", "fbs,s"])
    assert code == 0 and rep["measures"]["fbs"]["value"] == "2/1"
    assert rep["measures"]["s"]["value"] == 2


def test_measure_errors(tmp_path, capsys):
    assert main(["measure", "or:n=30", "--measures", "s"]) == 2
    assert main(["measure", "or:n=3", "--measures", "nope"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n011\n")
    assert main(["measure", str(bad)]) == 2
    assert main(["measure", "modrub:k=4", "--measures", "D"]) == 2
    err = capsys.readouterr().err
    assert err.count("error:") == 4


def test_condense_constructive(capsys):
    code, rep = run_json(capsys, ["condense", "modrub:k=4", "--measure", "C", "--constructive"])
    m = rep["measures"]["C"]
    assert code == 0 and m["value"] == 8 and m["witness"]["construction"] == "sensitivity"


def test_condense_search(capsys):
    code, rep = run_json(capsys, ["condense", "xor:n=4", "--measure", "deg", "--search", "--stars", "2"])
    assert code == 0 and rep["measures"]["deg"]["value"] == 2
    assert rep["measures"]["deg"]["witness"]["restriction"] == "**00"
    assert main(["condense", "xor:n=4", "--measure", "deg", "--search"]) == 2
    assert main(["condense", "or:n=12", "--measure", "s", "--search", "--stars", "6", "--budget", "5"]) == 2


def test_condense_sampled_threads_agree(capsys):
    argv = ["condense", "modrub:k=4", "--measure", "C", "--search", "--stars", "8",
            "--sample", "200", "--seed", "7"]
    _, a = run_json(capsys, argv + ["--threads", "1"])
    _, b = run_json(capsys, argv + ["--threads", "2"])
    assert a["measures"] == b["measures"]


def test_cheatsheet_plain_transcript(tmp_path, capsys):
    path = tmp_path / "t.txt"
    code, rep = run_json(capsys, ["cheatsheet", "--k", "4", "--t", "8", "--seed", "3",
                                  "--transcript", str(path)])
    assert code == 0
    tr = QueryTranscript.parse(path.read_text())
    assert tr.count == rep["measures"]["verdict"]["witness"]["queries"]


def test_cheatsheet_restricted_and_adversary(capsys):
    code, rep = run_json(capsys, ["cheatsheet", "--algorithm", "restricted", "--stars-budget", "64"])
    assert code == 0 and rep["measures"]["verdict"]["witness"]["agrees"]
    code, rep = run_json(capsys, ["cheatsheet", "--algorithm", "adversary"])
    w = rep["measures"]["verdict"]["witness"]
    assert code == 0 and w["consistent"] and w["queries"] >= 8
    assert main(["cheatsheet", "--k", "5"]) == 2


def test_laws(capsys):
    code, rep = run_json(capsys, ["laws", "--n", "2", "--count", "20"])
    assert code == 0 and rep["measures"]["violations"]["value"] == 0
    assert main(["laws", "--n", "6"]) == 2
    assert main(["laws", "--n", "5", "--uc"]) == 2


@pytest.mark.parametrize("target", ["thm-modrub", "prop-tribes", "lemma-cs-lb", "lemma-cs-ub",
                                    "lemma-cs-restricted", "thm-positive"])
def test_reproduce(target, capsys):
    assert main(["reproduce", target]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == f"PASS {target}"


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("BOOLCONDENSE_THREADS", "2")
    code, _ = run_json(capsys, ["laws", "--n", "2", "--count", "40"])
    assert code == 0


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["measure"])
    assert exc.value.code == 2
