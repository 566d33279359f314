import json

import pytest
from click.testing import CliRunner

from hecketransfer.cli import main, run
from hecketransfer.exactalg import SignedCycloProduct
from hecketransfer.tables import load_golden


def invoke(*args):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


def as_json(*args):
    res = invoke("--format", "json", *args)
    return res.exit_code, json.loads(res.output)


def test_report_schema():
    code, rep = as_json("residue", "G2", "3,1", "(1,q)")
    assert code == 0
    assert {"schema_version", "command", "config", "rows", "ok", "elapsed_ms"} <= rep.keys()
    assert rep["schema_version"] == 1 and rep["elapsed_ms"] is None
    assert rep["config"]["zeta_order"] == 24 and rep["config"]["seed"] == 0


def test_timings_flag_records_elapsed():
    code, rep = as_json("--timings", "residue", "G2", "3,1", "(1,q)")
    assert code == 0 and rep["elapsed_ms"] >= 0


def test_residue_g2():
    code, rep = as_json("residue", "G2", "3,1", "(1,q)")
    row = rep["rows"][0]
    assert row["is_residual"]
    assert SignedCycloProduct.parse(row["residue"]).equal_up_to_unit(
        SignedCycloProduct.make(1, 0, {2: -2, 3: -2, 6: -2}))


def test_residue_f4_with_unit_part():
    code, rep = as_json("residue", "F4", "2,1", "(q^2,t3*q^-4,q,q)")
    assert code == 0
    assert SignedCycloProduct.parse(rep["rows"][0]["residue"]).equal_up_to_unit(
        SignedCycloProduct.make(1, 0, {3: -2, 6: -3, 12: -1, 18: -1}))


def test_residue_non_residual_point():
    code, rep = as_json("residue", "F4", "2,1", "(q^2,q^2,i*q^{7/2},q)")
    assert code == 0 and rep["rows"][0]["is_residual"] is False


@pytest.mark.parametrize("args", [
    ("residue", "G2", "3,1", "(1,qq"),
    ("residue", "G2", "3,1", "(1,q,q)"),
    ("residue", "G7", "3,1", "(1,q)"),
    ("enumerate", "B5", "--params", "0,1"),
    ("verify", "phi", "--mminus", "1/2..x"),
    ("verify", "psi", "--base-cases"),
    ("--zeta-order", "7", "residue", "G2", "3,1", "(1,q)"),
])
def test_input_errors_exit_2(args):
    assert invoke(*args).exit_code == 2


def test_enumerate_counts():
    code, rep = as_json("enumerate", "B1", "--params", "0,1")
    assert code == 0 and rep["orbits"] == 1
    code, rep = as_json("enumerate", "G2", "--params", "3,1")
    assert code == 0 and rep["orbits"] == 4 and rep["exp_bound"] == 14
    assert "complete only" in rep["disclaimer"]


def test_enumerate_expect():
    assert invoke("enumerate", "G2", "--params", "3,1", "--expect", "4").exit_code == 0
    assert invoke("enumerate", "G2", "--params", "3,1", "--expect", "5").exit_code == 1


def test_verify_is_byte_stable():
    a = invoke("--format", "json", "verify", "all", "--seed", "7")
    b = invoke("--format", "json", "verify", "all", "--seed", "7")
    assert a.exit_code == 0 and a.output == b.output
    rep = json.loads(a.output)
    assert rep["ok"] and {r["family"] for r in rep["rows"]} == {"phi", "psi", "xi"}


def test_verify_xi_base_cases():
    code, rep = as_json("verify", "xi", "--base-cases")
    assert code == 0
    assert len(rep["rows"]) == 16 and all(r["ok"] for r in rep["rows"])


def test_tables_report_the_two_mismatched_rows():
    code, rep = as_json("tables")
    assert code == 1 and not rep["ok"]
    bad = {r["s"]: r for r in rep["rows"] if not r["match"]}
    assert set(bad) == {"A3A1", "B4(2)"}
    assert bad["B4(2)"]["diff"] == {"Phi8": 1}
    assert "not residual" in bad["A3A1"]["note"]
    assert invoke("tables", "3D4").exit_code == 0


def test_tables_detect_corrupted_golden(tmp_path):
    data = load_golden()
    row = data["3D4"]["rows"][0]
    row["residue"] = row["residue"].replace("Phi2^2", "Phi2^3", 1)
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(data))
    code, rep = as_json("tables", "3D4", "--golden", str(path))
    assert code == 1
    bad = [r for r in rep["rows"] if not r["match"]]
    assert [r["s"] for r in bad] == [row["s"]]
    # the corrupted factor sits in the denominator: computed -2 minus printed -3
    assert bad[0]["diff"] == {"Phi2": 1}


def test_tables_malformed_golden(tmp_path):
    path = tmp_path / "golden.json"
    path.write_text("{not json")
    assert invoke("tables", "--golden", str(path)).exit_code == 2


def test_markdown_and_out_file(tmp_path):
    out = tmp_path / "r.md"
    assert invoke("--out", str(out), "residue", "G2", "3,1", "(1,q)").exit_code == 0
    text = out.read_text()
    assert text.startswith("## residue") and "**OK**" in text


def test_run_returns_exit_codes(capsys):
    assert run(["residue", "G2", "3,1", "(1,q)"]) == 0
    assert run(["tables"]) == 1
    assert run(["enumerate", "B5", "--params", "0,1"]) == 2
    capsys.readouterr()
