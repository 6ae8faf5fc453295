import json
from importlib import resources

import pytest

from descent_forge import __version__
from descent_forge.cli import main
from descent_forge.errors import InvalidInstance
from descent_forge.instances import (SHIPPED, builtin_names, builtin_text, data_filename, load_builtin,
                                     parse_instance)
from descent_forge.report import CHECKS, dumps, failed, run_suite

REPORT_KEYS = ["instance", "certificate", "monoids", "gamma", "gamma0", "prop31", "verdicts",
               "timing", "version"]


def test_split2_text_parses():
    spec = parse_instance(builtin_text("split2", 2))
    assert spec.extension.S.dim == 2 and spec.p == 2


@pytest.mark.parametrize("family,p", SHIPPED)
def test_shipped_files_match_generator(family, p):
    shipped = resources.files("descent_forge").joinpath("data", data_filename(family, p)).read_text()
    assert shipped == builtin_text(family, p)


def test_non_prime_modulus_rejected():
    text = builtin_text("split2", 2).replace("p = 2", "p = 4", 1)
    with pytest.raises(InvalidInstance) as exc:
        parse_instance(text)
    assert any("modulus must be prime" in e for e in exc.value.errors)


BROKEN_S = """name = "broken"
p = 2
seed = 0

[algebras.B]
dim = 1
unit = [1]
struct_consts = [[[1]]]

[algebras.S]
dim = 3
unit = [1, 0, 0]
struct_consts = [
  [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
  [[0, 1, 0], [0, 0, 1], [0, 1, 0]],
  [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
]

[extension]
base = "B"
top = "S"
matrix = [[1], [0], [0]]
"""


def test_associativity_failure_names_the_triple():
    with pytest.raises(InvalidInstance) as exc:
        parse_instance(BROKEN_S)
    hits = [e for e in exc.value.errors if "associativity violated at basis (" in e]
    assert hits and all(e.startswith("algebras.S") for e in hits)


def test_syntax_and_reference_errors():
    with pytest.raises(InvalidInstance):
        parse_instance("name = \n")
    text = builtin_text("split2", 2).replace('top = "S"', 'top = "T"')
    with pytest.raises(InvalidInstance) as exc:
        parse_instance(text)
    assert any("unknown algebra" in e for e in exc.value.errors)


def test_dimension_mismatch_located():
    text = builtin_text("split2", 2).replace("matrix = [\n  [1],\n  [1],\n]", "matrix = [\n  [1],\n]")
    with pytest.raises(InvalidInstance) as exc:
        parse_instance(text)
    assert any("matrix" in e for e in exc.value.errors)


def test_report_layout_and_determinism():
    spec = load_builtin("split2(3)")
    a, b = run_suite(spec), run_suite(load_builtin("split2(3)"))
    assert list(a) == REPORT_KEYS and a["version"] == __version__
    assert list(a["verdicts"]) == list(CHECKS)
    assert dumps(a) == dumps(b)
    assert a["verdicts"]["gamma-iso"]["status"] == "pass"
    assert len(a["monoids"]["I_l"]) == a["monoids"]["End"]["size"] == 2


def test_identity_extension_report_passes():
    report = run_suite(load_builtin("id-ext(2)"))
    assert failed(report) == []
    assert all(v["status"] in ("pass", "skipped") for v in report["verdicts"].values())


def test_mat2_report():
    report = run_suite(load_builtin("mat2(2)"), "gamma")
    assert report["verdicts"]["gamma-iso"]["status"] == "pass"
    assert len(report["monoids"]["I_l"]) == 6


def test_unverified_verdicts_are_observed(monkeypatch):
    import descent_forge.report as report_mod
    monkeypatch.setattr(report_mod, "certify", lambda *a, **k: None)
    report = run_suite(load_builtin("split2(3)"), "gamma")
    assert report["certificate"] is None
    v = report["verdicts"]["gamma-iso"]
    assert v["status"] == "observed" and v["observed"] is True


def test_cli_check_json(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["check", "dual-numbers(2)", "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    assert list(report) == REPORT_KEYS
    assert "gamma-iso" in capsys.readouterr().out


def test_cli_instance_file(tmp_path):
    path = tmp_path / "inst.toml"
    path.write_text(builtin_text("split2", 3))
    assert main(["endos", str(path)]) == 0
    assert main(["invertibles", str(path)]) == 0


def test_cli_exit_codes(tmp_path, monkeypatch, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text(builtin_text("split2", 2).replace("p = 2", "p = 4", 1))
    assert main(["check", str(bad)]) == 2
    assert main(["check", "no-such-instance"]) == 2
    assert main(["check", "mat2(2)", "--endo-budget", "10"]) == 3
    assert main(["check", "mat2(2)", "--subspace-budget", "3"]) == 3
    monkeypatch.setenv("DESCENT_FORGE_BUDGET_MB", "0.00001")
    assert main(["check", "split2(2)"]) == 3
    capsys.readouterr()


def test_cli_comatrix_and_timing(tmp_path):
    out = tmp_path / "c.json"
    assert main(["comatrix", "comatrix-diag-mat2(2)", "--timing", "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["gamma0"]["End_sigma"]["size"] == 4 and report["timing"]


def test_cli_fuzz_and_selftest(tmp_path, capsys):
    out = tmp_path / "f.json"
    assert main(["fuzz", "--p", "2", "--max-dim", "2", "--count", "3", "--seed", "7",
                 "--json", str(out)]) == 0
    assert json.loads(out.read_text())["certified"] == 3
    assert main(["selftest"]) == 0
    text = capsys.readouterr().out
    assert "caught" in text and all(name in text for name in builtin_names())
