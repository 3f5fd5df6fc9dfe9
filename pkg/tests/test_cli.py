import json
import os

import pytest

from sfdc import DiagramPoly
from sfdc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_reduce_golden(capsys):
    code, out, _ = run(capsys, "reduce", "abba")
    assert code == 0
    assert out.strip() == "θ^2 + (n-1)*K*θ"


def test_reduce_json_roundtrip(capsys):
    code, out, _ = run(capsys, "reduce", "abccba", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["word"] == "abccba" and obj["k"] == 3
    emitted = json.dumps(obj["poly"])
    assert json.dumps(DiagramPoly.from_json_obj(json.loads(emitted)).to_json_obj()) == emitted


def test_words_count(capsys):
    code, out, _ = run(capsys, "words", "--k", "3", "--count")
    assert code == 0 and out.strip() == "15"


def test_words_list(capsys):
    code, out, _ = run(capsys, "words", "--k", "2")
    assert code == 0
    assert out.split() == ["aabb", "abab", "abba"]


def test_words_cap(capsys):
    code, _, err = run(capsys, "words", "--k", "9")
    assert code == 2 and "cap" in err


def test_link_output(capsys):
    code, out, _ = run(capsys, "link", "aabccb", "--pairs", "1:2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "circles: 1"
    assert lines[1] == "word: abba"
    assert lines[2] == "value: n*θ^2 + (n^2-n)*K*θ"


def test_link_multi(capsys):
    code, out, _ = run(capsys, "link", "abba", "--pairs", "1:4,2:3")
    assert code == 0
    assert "circles: 2" in out and "value: n^2" in out


def test_conjecture_json(capsys):
    code, out, _ = run(capsys, "conjecture", "--k", "2", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["conj1_pass"] and obj["conj2_pass"] and obj["c_pass"]
    assert obj["coefficients"][0]["value"] == "-t/n"


def test_conjecture_summary(capsys):
    code, out, _ = run(capsys, "conjecture", "--k", "3")
    assert code == 0
    assert "x[1:2] = (2*K - θ)/(n + 2)" in out
    assert "pass" in out


def test_conjecture_numeric(capsys):
    code, out, _ = run(capsys, "conjecture", "--k", "3", "--mode", "numeric",
                       "--n-samples", "3,5")
    assert code == 0


def test_table_md(capsys):
    code, out, _ = run(capsys, "table", "--max-k", "1", "--format", "md")
    assert code == 0
    assert "| aa |" in out and "θ" in out


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--max-k", "2", "--format", "csv")
    assert code == 0
    assert "t^2" in out and "θ" not in out
    assert out.count("\r\n") >= 5  # header + 4 rows


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "--max-k", "2", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 4
    assert rows[0]["word"] == "aa"


def test_oracle_check_cli(capsys):
    code, out, _ = run(capsys, "oracle-check", "--n", "2", "--p", "1", "--max-k", "1")
    assert code == 0
    assert "all agree" in out


def test_bad_word_exit_2(capsys):
    code, _, err = run(capsys, "reduce", "aba")
    assert code == 2 and "error" in err


def test_bad_pairs_exit_2(capsys):
    code, _, err = run(capsys, "link", "aabb", "--pairs", "1:1")
    assert code == 2


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_cache_dir(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SFDC_CACHE_DIR", str(tmp_path))
    code, out1, _ = run(capsys, "reduce", "abab")
    assert code == 0
    cache = tmp_path / "reduce-cache.json"
    assert cache.exists()
    data = json.loads(cache.read_text())
    assert any(key for key in data)
    code, out2, _ = run(capsys, "reduce", "abab")
    assert code == 0 and out1 == out2
