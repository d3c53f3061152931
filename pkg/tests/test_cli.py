import json

import pytest

from nervelab import cases, io
from nervelab.cat import discrete_category
from nervelab.cli import main
from nervelab.sset import standard_simplex


def test_horn_image_summary(capsys):
    assert main(["horn-image", "--n", "3", "--i", "1", "--a", "0", "--b", "3"]) == 0
    assert capsys.readouterr().out.strip() == "cubic horn Π_{1,1}, 3 faces"


def test_ind_writes_json(tmp_path, capsys):
    out = tmp_path / "ind.json"
    assert main(["ind", "--n", "2", "-o", str(out)]) == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["count"] == 4 and len(doc["generators"]) == 4
    assert "4" in capsys.readouterr().out


def test_nerve_respects_cap_env(monkeypatch, capsys):
    monkeypatch.setenv("NERVELAB_CAP", "1")
    assert main(["nerve", "--example", "BZ2"]) == 0
    assert "up to 1" in capsys.readouterr().out
    monkeypatch.setenv("NERVELAB_CAP", "lots")
    assert main(["nerve", "--example", "BZ2"]) == 2


def test_kan_check_from_file_leaves_input_alone(tmp_path, capsys):
    src = tmp_path / "d2.json"
    text = io.dumps(io.sset_to_json(standard_simplex(2)))
    src.write_text(text, encoding="utf-8")
    assert main(["kan-check", str(src), "--dim", "2"]) == 0
    assert "Kan up to 2: no" in capsys.readouterr().out
    assert src.read_text(encoding="utf-8") == text


@pytest.mark.parametrize("argv", [
    ["nerve", "--example", "nope"],
    ["nerve"],
    ["kan-check", "/nonexistent/file.json"],
    ["replay-counterexample", "nope"],
    ["adjunction-check", "--example", "BZ2", "--n", "2", "--sub", "horn"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("nervelab: error:")


def test_bad_schema_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema": "sset/v1", "cap": -1, "cells": [], "faces": {}}), encoding="utf-8")
    assert main(["kan-check", str(bad)]) == 2
    assert "$.cap" in capsys.readouterr().err


def test_failed_scenario_exit_1(monkeypatch, capsys):
    toy = cases.Scenario("toy", lambda: {"C": discrete_category([0])},
                         [cases.Claim("two objects", 2, lambda d: (len(d["C"].objects), None))])
    monkeypatch.setitem(cases.SCENARIOS, "toy", lambda: toy)
    assert main(["replay-counterexample", "toy"]) == 1
    assert "FAIL two objects" in capsys.readouterr().out


def test_replay_passes(capsys):
    assert main(["replay-counterexample", "hc-counterexample"]) == 0
    assert capsys.readouterr().out.startswith("PASS")


def test_qf_check_product_example(capsys):
    assert main(["qf-check", "--example", "product-Z2"]) == 0
    out = capsys.readouterr().out
    assert "fibered: yes" in out and "isomorphism" in out
