"""Command-line interface: subcommands, exit codes, determinism."""

import json

from planar2.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_check_zero_poly_planar(capsys):
    code, out = run(capsys, "check", "--terms", "", "--m", "2", "--k", "2")
    rep = json.loads(out)
    assert code == 0 and rep["planar"] is True and rep["agree"] is True


def test_check_p3_instance_planar(capsys):
    # a=1: terms x^(2(q+1)) + x^(2(q^2+1)) at m=2
    code, out = run(capsys, "check", "--terms", "(1,1,3);(1,1,5)", "--m", "2", "--k", "3")
    rep = json.loads(out)
    assert code == 0 and rep["planar"] is True
    assert rep["criteria"]["coefficient_criterion"] is True


def test_check_cube_not_planar(capsys):
    code, out = run(capsys, "check", "--terms", "(1,0,1)", "--m", "1", "--k", "2")
    rep = json.loads(out)
    assert code == 0 and rep["planar"] is False and rep["agree"] is True


def test_check_parse_error_exit1(capsys):
    assert main(["check", "--terms", "garbage", "--m", "2", "--k", "2"]) == 1


def test_audit_deterministic_output(tmp_path, capsys):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["audit", "--family", "P1", "--m", "2", "--out", str(f1)]) == 0
    assert main(["audit", "--family", "P1", "--m", "2", "--out", str(f2)]) == 0
    assert f1.read_bytes() == f2.read_bytes()
    rep = json.loads(f1.read_text())
    assert rep["failures"] == [] and rep["tested"] == 11
    assert rep["seed"] == 0 and rep["modulus"] == "13" and rep["version"]


def test_audit_csv_format(tmp_path):
    out = tmp_path / "a.csv"
    assert main(["audit", "--family", "P1", "--m", "2", "--format", "csv",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "c0,c1"


def test_audit_budget_exit3(capsys):
    assert main(["audit", "--family", "P2", "--m", "2", "--mode", "converse",
                 "--budget", "10"]) == 3


def test_surface_p1_factor_recovery(capsys):
    code, out = run(capsys, "surface", "--family", "P1", "--coeffs", "2", "--m", "2")
    rep = json.loads(out)
    assert code == 0 and rep["planar"] is True and rep["orbit_has_zero"] is False
    # two conjugate linear factors, remainder constant
    assert len(rep["factors"]) == 2
    assert all(mu["multiplicity"] == 1 for mu in rep["factors"])
    assert rep["remainder"]["terms"][0]["exp"] == [0, 0]


def test_semifield_p3_nuclei(capsys):
    code, out = run(capsys, "semifield", "--family", "P3", "--coeffs", "1", "--m", "2")
    rep = json.loads(out)
    assert code == 0
    assert rep["left_size"] == 2 and rep["middle_size"] == 4
    assert rep["is_field"] is False


def test_semifield_table_dump(tmp_path, capsys):
    dump = tmp_path / "t.bin"
    code, _ = run(capsys, "semifield", "--family", "P1", "--coeffs", "2", "--m", "2",
                  "--dump-table", str(dump))
    assert code == 0
    assert dump.stat().st_size == 16 * 16 * 2


def test_problem27_report(capsys):
    code, out = run(capsys, "problem27", "--m", "2", "--support", "2")
    rep = json.loads(out)
    assert code == 0
    assert rep["tested"] == 256
    assert rep["candidates"] == []
    assert ["0", "0"] in rep["in_shape"]


def test_fields_table(capsys):
    code, out = run(capsys, "fields", "--max-n", "4")
    rep = json.loads(out)
    assert code == 0
    assert rep["moduli"] == [{"n": 1, "modulus": "3"}, {"n": 2, "modulus": "7"},
                             {"n": 3, "modulus": "b"}, {"n": 4, "modulus": "13"}]


def test_knuth_family_needs_explicit_k():
    assert main(["semifield", "--family", "Knuth", "--m", "1"]) == 1


def test_knuth_family_with_explicit_k(capsys):
    code, out = run(capsys, "semifield", "--family", "Knuth", "--m", "1", "--k", "5")
    rep = json.loads(out)
    assert code == 0 and rep["is_field"] is False  # proper nuclei at degree 5
