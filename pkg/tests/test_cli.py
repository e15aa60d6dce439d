import csv
import io
import json
import os
import subprocess
import sys

import pytest

from zetalab import audits
from zetalab.cli import main

# citation anchors a record may carry
ANCHORS = frozenset({
    "as the Dirichlet series", "is the (classical) gamma function", "standard Gaussian function",
    "zero-polar factor", "the right-hand product runs over", 'gives an "open symmetry"',
    "then Re(s)=1/2", "fixed point of the Fourier transform", "also the minus fixed point",
    "Hecke's theta formula", "Poisson Summation Formula", "Fixed point HRace = Face",
    "has no roots in the domain", "Existence of quasi-fixed points", "amplitude A and frequency",
    "Casteulnovo-Serre-Weil inequality", "its solution is given by",
    "quasi-invariant under the substitutions", "A Rouche choice of the amplitude",
    "A non-contradictory choice of the amplitude", "the positivity of Weil's trace",
    "are called exponents corresponding", "do not divide ab", "the ultrametricity of",
    "the unit adic sphere", "each non-zero rational number", "defines the Haar module",
    "Bogoluboff-Kriloff measure",
})


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fe_audit_fields(capsys):
    for field in ("Q", "Q(i)"):
        code, out, _ = run(["fe-audit", "--field", field], capsys)
        recs = json.loads(out)
        assert code == 0 and len(recs) == 100
        assert {r["verdict"] for r in recs} == {"PASS"}


def test_fe_audit_strict_tolerance_fails(capsys):
    code, out, _ = run(["fe-audit", "--field", "Q", "--tolerance", "1e-30",
                        "--grid", "0.2:0.8:2,5:6:2"], capsys)
    assert code == 1
    assert any(r["verdict"] == "FAIL" for r in json.loads(out))


def test_unknown_field_is_usage_error(capsys):
    code, _, err = run(["fe-audit", "--field", "Q(sqrt(-5))"], capsys)
    assert code == 2 and "unknown field" in err


def test_bad_subcommand_and_flag(capsys):
    assert main(["nope"]) == 2
    assert main(["zeros", "--bogus"]) == 2
    capsys.readouterr()


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_zeros(capsys):
    code, out, _ = run(["zeros", "--field", "Q", "--range", "10:30"], capsys)
    rows = _rows(out)
    assert code == 0 and len(rows) == 3
    assert abs(float(rows[0]["ordinate_t"]) - 14.134725) < 1e-4
    code, out, _ = run(["zeros", "--field", "Q(i)", "--range", "5:8"], capsys)
    assert any(abs(float(r["ordinate_t"]) - 6.0209) < 1e-3 for r in _rows(out))


def test_zeros_empty_range(capsys):
    code, out, _ = run(["zeros", "--field", "Q", "--range", "1:5"], capsys)
    assert code == 0 and out.strip().split(",")[0] == "ordinate_t" and len(_rows(out)) == 0
    code, out, _ = run(["zeros", "--field", "Q", "--range", "7:7"], capsys)
    assert code == 0 and len(_rows(out)) == 0 and out.startswith("ordinate_t")


def test_bad_range(capsys):
    code, _, err = run(["zeros", "--range", "10-30"], capsys)
    assert code == 2 and "bad range" in err


def test_corrupt_config(tmp_path, capsys):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[run]\nseed = 1\nbogus = 3\n")
    code, _, err = run(["all", "--config", str(cfg)], capsys)
    assert code == 2 and "bogus" in err
    cfg.write_text("[tolerances]\nfe = tight\n")
    code, _, err = run(["fe-audit", "--config", str(cfg)], capsys)
    assert code == 2 and "fe" in err
    cfg.write_text("this is not ini")
    code, _, err = run(["all", "--config", str(cfg)], capsys)
    assert code == 2
    code, _, err = run(["all", "--config", str(tmp_path / "missing.ini")], capsys)
    assert code == 2


def test_config_is_read(tmp_path, capsys):
    cfg = tmp_path / "ok.ini"
    cfg.write_text("[run]\nformat = csv\n[grids]\nfe_re = 0.2:0.8:2\nfe_im = 3:4:2\n")
    code, out, _ = run(["fe-audit", "--config", str(cfg)], capsys)
    rows = _rows(out)
    assert code == 0 and len(rows) == 4
    assert tuple(rows[0]) == audits.CSV_COLUMNS


def test_module_subcommands(capsys):
    for cmd in ("face-audit", "trace", "amplitude", "fourier-audit", "mellin-audit", "padic",
                "quat", "weil", "catalogue"):
        code, out, _ = run([cmd], capsys)
        assert code == 0, cmd
        data = json.loads(out)
        assert data, cmd


def test_report_only_never_fails(capsys):
    code, out, _ = run(["trace"], capsys)
    recs = json.loads(out)
    assert code == 0 and len(recs) == 24 + 12
    assert {r["verdict"] for r in recs} == {"REPORT-ONLY"}
    assert sum(r["claim_id"] == "positivity.cws_trace" for r in recs) == 24


def test_all_csv_per_module(tmp_path, capsys):
    out = tmp_path / "o"
    code, _, err = run(["all", "--format", "csv", "--out", str(out)], capsys)
    assert code == 0
    files = sorted(os.listdir(out))
    assert files == sorted([f"{m}.csv" for m in audits.MODULES] + ["summary.json"])
    summary = json.loads((out / "summary.json").read_text())
    assert set(summary["counts"]) == {"PASS", "FAIL", "REPORT-ONLY"}
    assert summary["counts"]["FAIL"] == 0 and "total_runtime_s" in summary
    for m in audits.MODULES:
        rows = _rows((out / f"{m}.csv").read_text())
        assert rows and all(r["paper_ref"] in ANCHORS for r in rows)


def test_all_csv_needs_out(capsys):
    code, _, err = run(["all", "--format", "csv"], capsys)
    assert code == 2


def test_claim_anchors_are_known():
    assert set(audits.CLAIMS.values()) <= ANCHORS


def test_all_json_deterministic(tmp_path):
    env = dict(os.environ)
    outs = []
    for i, threads in enumerate(("4", "1")):
        env["ZETA_AUDIT_THREADS"] = threads
        d = tmp_path / f"r{i}"
        p = subprocess.run([sys.executable, "-m", "zetalab", "all", "--out", str(d), "--seed", "7"],
                           env=env, capture_output=True, text=True, timeout=600)
        assert p.returncode == 0, p.stderr
        outs.append((d / "audit.json").read_bytes())
    assert outs[0] == outs[1]
    recs = json.loads(outs[0])
    assert all(set(r) == set(audits.CSV_COLUMNS) for r in recs)
    assert all(r["paper_ref"] in ANCHORS for r in recs)
