from __future__ import annotations

import json
import subprocess
import sys

import pytest

from ultracycles.cli import CONFIG_ENV, main, parse_input
from ultracycles.corpus import corpus_dir
from ultracycles.errors import ParseError


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def _run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_parse_input_examples():
    doc = parse_input("ring Q[x,y]; ideal (y - x^2, y);")
    assert doc.ideals[0].is_zero_dimensional()
    doc = parse_input("sentence: exists x. x*x = -1;")
    assert doc.sentences[0].depth() == 1
    with pytest.raises(ParseError) as exc:
        parse_input("ring Q[x,y];\nideal (x + );")
    assert (exc.value.line, exc.value.column) == (2, 12)


def test_comments_keep_positions():
    text = "# header\nring Q[x]; # trailing\nideal (x^2 + );"
    with pytest.raises(ParseError) as exc:
        parse_input(text)
    assert exc.value.line == 3 and exc.value.column == 14


def test_cycle_command(tmp_path, capsys):
    path = _write(tmp_path, "c.txt", "ring Q[x];\nideal (x^2);\n")
    status, out, _ = _run(capsys, "cycle", path)
    assert status == 0
    data = json.loads(out)
    assert data["components"] == [{"degree": 1, "dimension": 0, "generators": ["x"], "multiplicity": 2}]


def test_resource_limit_exit_code(tmp_path, capsys):
    path = _write(tmp_path, "g.txt", "ring Q[x,y,z];\nideal (x^3 + y^3 + z^3 + x*y*z, x^2*y - z^3 + y*z^2);\n")
    status, _, err = _run(capsys, "gb", path, "--pair-cap", "1")
    assert status == 2
    assert json.loads(err)["error"] == "groebner.ResourceLimit"


def test_input_error_exit_code(tmp_path, capsys):
    path = _write(tmp_path, "bad.txt", "ring Q[x,y];\nideal (x + );\n")
    status, _, err = _run(capsys, "cycle", path)
    assert status == 1
    assert json.loads(err)["error"] == "cli.ParseError"


def test_mult_product_pushforward(tmp_path, capsys):
    m = _write(tmp_path, "m.txt", "ring Q[x,y];\nideal (y^2 - x^3);\nideal (y);\npoint (x, y);\n")
    status, out, _ = _run(capsys, "mult", m)
    assert status == 0 and json.loads(out)["euler_characteristic"] == 3
    p = _write(tmp_path, "p.txt", "ring Q[x,y,z];\nambient projective;\ncycle 2 (x);\ncycle 1 (y*z - x^2);\n")
    status, out, _ = _run(capsys, "product", p)
    assert status == 0 and json.loads(out)["degree"] == 4
    f = _write(tmp_path, "f.txt", "ring Q[x,y];\ncycle 3 (y^2 - x);\nkeep x;\n")
    status, out, _ = _run(capsys, "pushforward", f, "--text")
    assert status == 0 and out.strip() == "6*[V(0)]"


def test_compose_and_laws(tmp_path, capsys):
    text = "source Q[x];\nmiddle Q[y];\ntarget Q[z];\nlast Q[w];\nalpha (y^2 - x);\nbeta (z - y^2);\ngamma (w - 3*z);\n"
    path = _write(tmp_path, "k.txt", text)
    status, out, _ = _run(capsys, "compose", path)
    comps = json.loads(out)["components"]
    assert status == 0 and [c["multiplicity"] for c in comps] == [2]
    status, out, _ = _run(capsys, "laws", path)
    assert status == 0 and json.loads(out)["passed"]


def test_los_expectations(tmp_path, capsys):
    path = _write(tmp_path, "s.txt", "sentence: 1 + 1 != 0;\n")
    status, out, _ = _run(capsys, "los", path, "--primes", "30", "--above", "1", "--expect", "cofinite-holds")
    assert status == 0
    assert json.loads(out)["reports"][0]["exceptions"] == [2]
    status, _, _ = _run(capsys, "los", path, "--expect", "cofinite-fails")
    assert status == 3


def test_reports_are_byte_identical(tmp_path, capsys):
    path = _write(tmp_path, "c.txt", "ring Q[x,y];\nideal (x^2 - 2*y^2, y^3);\n")
    _, first, _ = _run(capsys, "cycle", path)
    _, second, _ = _run(capsys, "cycle", path)
    assert first == second


def test_config_from_environment(tmp_path, capsys, monkeypatch):
    cfg = _write(tmp_path, "cfg.json", json.dumps({"limits": {"pair_cap": 1}}))
    path = _write(tmp_path, "g.txt", "ring Q[x,y];\nideal (x^3 - 2*x*y, x^2*y - 2*y^2 + x);\n")
    monkeypatch.setenv(CONFIG_ENV, cfg)
    status, _, _ = _run(capsys, "gb", path)
    assert status == 2
    status, _, _ = _run(capsys, "gb", path, "--pair-cap", "100000")
    assert status == 0


def test_field_override(tmp_path, capsys):
    path = _write(tmp_path, "c.txt", "ring Q[x];\nideal (x^2 + 1);\n")
    _, out, _ = _run(capsys, "cycle", path, "--field", "GF(5)")
    assert len(json.loads(out)["components"]) == 2


def test_transfer_on_corpus(capsys):
    path = str(corpus_dir() / "transfer_pushforward.json")
    status, out, _ = _run(capsys, "transfer", path, "--text", "--primes", "10")
    assert status == 0
    assert out.splitlines()[0] == "cofinite-holds: 20/20"


def test_module_entry_point(tmp_path):
    path = _write(tmp_path, "c.txt", "ring Q[x];\nideal (x^2);\n")
    res = subprocess.run([sys.executable, "-m", "ultracycles", "cycle", path, "--text"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "2*[V(x)]"
