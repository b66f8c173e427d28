"""Command-line surface: outputs, exit codes, report formats."""

import json

import pytest

from divrel import make_record
from divrel.cli import (
    format_records_csv,
    format_records_json,
    main,
    parse_records_json,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_kappa_command(capsys):
    code, out, _ = run(capsys, "kappa", "--n", "12", "--j", "2")
    assert code == 0 and out.strip() == "15"


def test_factor_command(capsys):
    code, out, _ = run(capsys, "factor", "--n", "720")
    assert code == 0 and out.strip() == "2^4 * 3^2 * 5"
    code, out, _ = run(capsys, "factor", "--n", "1")
    assert code == 0 and out.strip() == "1"


def test_point_queries(capsys):
    assert run(capsys, "divisors", "--n", "12")[1].strip() == "1 2 3 4 6 12"
    assert run(capsys, "triples", "--n", "6")[1].strip() == "4"
    assert run(capsys, "energy", "--n", "6")[1].strip() == "32"
    assert run(capsys, "delta-hooley", "--n", "12")[1].strip() == "3"


def test_energy_decompose(capsys):
    code, out, _ = run(capsys, "energy", "--n", "2", "--decompose")
    assert code == 0
    assert out.strip().splitlines()[-1] == "total 6"


def test_residues_command(capsys):
    code, out, _ = run(capsys, "residues", "--n", "12", "--q", "5")
    payload = json.loads(out)
    assert code == 0 and payload["h"] == 10


def test_map_commands(capsys, tmp_path):
    path = tmp_path / "table.json"
    code, out, _ = run(capsys, "map", "build", "--kind", "sum", "--n", "6", "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "map", "check", "--file", str(path))
    report = json.loads(out)
    assert code == 0
    assert report["k"] == 1 and report["k_strong"] == 2 and report["size"] == 3
    code, out, _ = run(capsys, "map", "bound", "--file", str(path), "--bound", "thm1b")
    assert code == 0
    assert out.splitlines()[1].startswith("6,thm1b,3,")


def test_exact_e_command(capsys):
    code, out, _ = run(capsys, "exact-e", "--n", "6", "--j", "1", "--k", "1")
    assert code == 0 and out.strip() == "3"


def test_analytic_commands(capsys):
    code, out, _ = run(capsys, "analytic", "delta-j", "--j", "1")
    assert code == 0 and out.strip().startswith("0.08170416")
    code, out, _ = run(
        capsys, "analytic", "eval", "--fn", "f", "--alpha", "0.2288541994", "--x", "2"
    )
    assert code == 0 and out.strip().startswith("0.049517")


def test_verify_xi_exit_codes(capsys):
    code, out, _ = run(
        capsys, "analytic", "verify-xi", "--alpha", "0.2288541994",
        "--r", "0.692466598", "--delta", "0.045072", "--vmax", "1000",
    )
    assert code == 0
    cert = json.loads(out)
    assert cert["argmin_v"] == 1 and cert["min_margin"] > 0
    code, _, _ = run(
        capsys, "analytic", "verify-xi", "--alpha", "0.2288541994",
        "--r", "0.692466598", "--delta", "0.04512", "--vmax", "10",
    )
    assert code == 1


def test_split_thm4_command(capsys):
    code, out, _ = run(capsys, "split-thm4", "--n", "1524096000", "--q", "11")
    assert code == 0
    payload = json.loads(out)
    assert payload["a"] * payload["b"] == 1524096000


def test_sweep_report_csv(capsys, tmp_path):
    path = tmp_path / "report.csv"
    code, _, _ = run(
        capsys, "sweep", "--bounds", "corollary1", "--n-hi", "8",
        "--format", "csv", "--out", str(path),
    )
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "n,bound_id,lhs,log_rhs,margin,pass,params"
    assert lines[6].startswith("6,corollary1,4,2.710105663,1.323811302,true,")
    assert len(lines) == 9


def test_sweep_deterministic_and_parallel_identical(capsys, tmp_path):
    args = ["sweep", "--bounds", "corollary1,thm2b", "--n-hi", "40", "--format", "csv"]
    p1, p2, p3 = (tmp_path / f"r{i}.csv" for i in range(3))
    assert run(capsys, *args, "--out", str(p1))[0] == 0
    assert run(capsys, *args, "--out", str(p2))[0] == 0
    assert run(capsys, *args, "--workers", "3", "--out", str(p3))[0] == 0
    assert p1.read_bytes() == p2.read_bytes() == p3.read_bytes()


def test_sweep_header_only_when_no_rows(capsys, tmp_path):
    # thm3a applies to squarefree n only; n = 4 contributes nothing
    path = tmp_path / "empty.csv"
    code, _, _ = run(
        capsys, "sweep", "--bounds", "thm3a", "--n-lo", "4", "--n-hi", "4",
        "--out", str(path),
    )
    assert code == 0
    assert path.read_text() == "n,bound_id,lhs,log_rhs,margin,pass,params\n"


def test_sweep_rejects_unknown_bound(capsys):
    code, _, err = run(capsys, "sweep", "--bounds", "bogus", "--n-hi", "5")
    assert code == 2 and "error: domain:" in err


def test_sweep_exit_one_on_asserted_violation(capsys):
    # the literal eq4.2 cell bound genuinely fails at n = 2, which makes it a
    # real probe of the asserted-violation exit path
    code, out, err = run(capsys, "sweep", "--bounds", "eq4.2", "--n-lo", "2", "--n-hi", "2")
    assert code == 1
    assert "error: bound-violation:" in err
    assert any(line.endswith("false,e=1;m=3") for line in out.splitlines())


def test_map_check_accepts_builtin_kind(capsys):
    code, out, _ = run(capsys, "map", "check", "--kind", "midpoint-exact", "--n", "6")
    assert code == 0 and json.loads(out)["k"] == 1


def test_json_round_trip():
    records = [
        make_record("corollary1", 6, 4, 2.7101056628667824),
        make_record("lemma6", 12, 3, 0.9877832533, extra="y"),
        make_record("corollary1", 1, 0, 0.0),
    ]
    text = format_records_json(records)
    parsed = parse_records_json(text)
    originals = sorted(records, key=lambda r: (r.n, r.bound_id, r.params))
    for rec, back in zip(originals, parsed):
        assert back.n == rec.n and back.bound_id == rec.bound_id
        assert back.lhs == rec.lhs
        assert back.log_rhs == rec.log_rhs  # exact float round trip
        assert back.margin == rec.margin
        assert back.passed == rec.passed
    assert format_records_json(parsed) == text


def test_csv_formatting_is_idempotent():
    records = [make_record("corollary1", 6, 4, 2.7101056628667824)]
    text = format_records_csv(records)
    assert text == format_records_csv(records)
    assert "2.710105663" in text


def test_domain_error_exit(capsys):
    code, _, err = run(capsys, "residues", "--n", "6", "--q", "3")
    assert code == 2 and err.startswith("error: domain:")


def test_resource_error_exit(capsys):
    code, _, err = run(capsys, "energy", "--n", "720720", "--cap-divisors", "100")
    assert code == 3 and err.startswith("error: resource:")


def test_env_var_overrides_divisor_cap(capsys, monkeypatch):
    monkeypatch.setenv("DIVREL_CAP_DIVISORS", "100")
    code, _, err = run(capsys, "energy", "--n", "720720")
    assert code == 3 and err.startswith("error: resource:")
    monkeypatch.setenv("DIVREL_CAP_DIVISORS", "1000")
    code, _, _ = run(capsys, "energy", "--n", "720720")
    assert code == 0


def test_unknown_flag_rejected(capsys):
    code = main(["kappa", "--n", "12", "--j", "2", "--frob"])
    capsys.readouterr()
    assert code == 2


def test_usage_error_exit(capsys):
    code = main(["kappa", "--n", "12"])  # missing --j
    capsys.readouterr()
    assert code == 2


def test_help_lists_flags(capsys):
    code = main(["sweep", "--help"])
    out = capsys.readouterr().out
    assert code == 0
    for flag in ("--bounds", "--n-lo", "--n-hi", "--squarefree-only",
                 "--format", "--out", "--workers", "--cap-divisors"):
        assert flag in out
