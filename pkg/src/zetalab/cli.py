"""Command-line front end: ``zetalab <subcommand> [flags]``.

Exit codes: 0 success, 1 a PASS-class audit failed, 2 usage or config error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

import numpy as np

from . import audits
from .audits import ConfigError, RunConfig, parse_range
from .fields import UnknownFieldError

USAGE_ERROR = 2


class UsageError(ValueError):
    pass


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="INI config file")
    p.add_argument("--format", choices=("json", "csv"), help="output format")
    p.add_argument("--out", help="output directory (default: stdout)")
    p.add_argument("--seed", type=int, help="Monte Carlo / sampling seed")
    p.add_argument("--tolerance", type=float, help="override the PASS tolerance")
    p.add_argument("--field", help="field label, e.g. Q, Q(i), Q(sqrt(-3))")
    p.add_argument("--range", help="t-range a:b")
    p.add_argument("--grid", help="grid spec, e.g. -0.5:1.5:10,1:25:10")


SUBCOMMANDS = ("fe-audit", "zeros", "all", "face-audit", "trace", "amplitude", "fourier-audit",
               "mellin-audit", "padic", "quat", "weil", "catalogue")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zetalab", description="Dedekind zeta audit toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)
    for name in SUBCOMMANDS:
        _common(sub.add_parser(name))
    return ap


def _config(args) -> RunConfig:
    cfg = RunConfig.from_ini(args.config) if args.config else RunConfig()
    kw = {}
    if args.seed is not None:
        kw["seed"] = args.seed
    if args.format:
        kw["format"] = args.format
    if args.out:
        kw["out"] = args.out
    if kw:
        d = dict(seed=cfg.seed, format=cfg.format, out=cfg.out, threads=cfg.threads,
                 tol=dict(cfg.tol), grids=dict(cfg.grids))
        d.update(kw)
        cfg = RunConfig(**d)
    return cfg


def _field(args, default="Q") -> str:
    from .fields import make_field
    label = args.field or default
    make_field(label)
    return label


def _emit(text: str, cfg: RunConfig, filename: str):
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
        with open(os.path.join(cfg.out, filename), "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_records(records, cfg: RunConfig, stem: str) -> int:
    if cfg.format == "csv":
        _emit(audits.records_to_csv(records), cfg, stem + ".csv")
    else:
        _emit(audits.records_to_json(records), cfg, stem + ".json")
    return audits.exit_code(records)


def _select(records, prefixes):
    return [r for r in records if r.claim_id.startswith(prefixes)]


def _with_tol(cfg: RunConfig, args, *keys) -> RunConfig:
    if args.tolerance is None:
        return cfg
    tol = dict(cfg.tol)
    for k in keys:
        tol[k] = args.tolerance
    return RunConfig(cfg.seed, cfg.format, cfg.out, cfg.threads, tol, dict(cfg.grids))


def cmd_fe_audit(args, cfg):
    from .completed import fe_residual
    label = _field(args)
    cfg = _with_tol(cfg, args, "fe")
    if args.grid:
        try:
            re_s, im_s = args.grid.split(",")
        except ValueError:
            raise UsageError("--grid needs re0:re1:n,im0:im1:m") from None
        (a, b, n), (c, d, m) = parse_range(re_s, True), parse_range(im_s, True)
    else:
        (a, b, n) = parse_range(cfg.grids["fe_re"], True)
        (c, d, m) = parse_range(cfg.grids["fe_im"], True)
    tol = cfg.tol["fe"]
    recs = []
    for u in np.linspace(a, b, n):
        for v in np.linspace(c, d, m):
            s = complex(u, v)
            r = fe_residual(s, label)
            recs.append(audits._check("completed.fe_residual", {"field": label, "s": s}, r, tol,
                                      r < tol))
    return _emit_records(recs, cfg, "fe-audit")


ZERO_COLUMNS = ("ordinate_t", "bracket_lo", "bracket_hi", "refined_to", "field_label",
                "sign_pair")


def cmd_zeros(args, cfg):
    from .completed import scan_zeros
    label = _field(args)
    lo, hi = parse_range(args.range or cfg.grids["zeros_q"])
    step = float(args.grid) if args.grid else float(cfg.grids["zero_step"])
    rows = scan_zeros(label, lo, hi, step) if hi > lo else []
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ZERO_COLUMNS)
    for z in rows:
        w.writerow([repr(z.ordinate_t), repr(z.bracket[0]), repr(z.bracket[1]), repr(z.refined_to),
                    z.field_label, f"{z.sign_pair[0]}:{z.sign_pair[1]}"])
    _emit(buf.getvalue(), cfg, "zeros.csv")
    return 0


def cmd_all(args, cfg):
    t0 = time.perf_counter()
    res = audits.run_all(cfg)
    records = [r for recs in res["by_module"].values() for r in recs]
    if cfg.format == "csv":
        if not cfg.out:
            raise UsageError("--format csv with `all` needs --out DIR (one file per module)")
        for name, recs in res["by_module"].items():
            _emit(audits.records_to_csv(recs), cfg, f"{name}.csv")
    else:
        _emit(audits.records_to_json(records), cfg, "audit.json")
    summary = {"counts": audits.summarize(records),
               "module_runtime_s": {k: round(v, 3) for k, v in sorted(res["timings"].items())},
               "total_runtime_s": round(time.perf_counter() - t0, 3)}
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        _emit(text, cfg, "summary.json")
    sys.stderr.write(text)
    return audits.exit_code(records)


def _module_cmd(module, prefixes, stem, tol_keys=()):
    def run(args, cfg):
        cfg2 = _with_tol(cfg, args, *tol_keys)
        recs, _ = audits.run_module(module, cfg2)
        return _emit_records(_select(recs, prefixes), cfg2, stem)
    return run


def cmd_face_audit(args, cfg):
    from .fields import make_field
    from .harmonic import face_sides, gaussian, gaussian_n
    label = _field(args)
    f = make_field(label)
    if f.label not in ("Q", "Q(i)", "Q(sqrt(-3))", "Q(zeta_3)", "Q(zeta_4)", "Q(sqrt(-1))"):
        raise UsageError(f"face-audit supports Q, Q(i), Q(sqrt(-3)); got {label}")
    omega = gaussian() if f.r2 == 0 else gaussian_n(2)
    key = "face_q" if f.r2 == 0 else "face_qi"
    cfg = _with_tol(cfg, args, key)
    tol = cfg.tol[key]
    recs = []
    for s in (2, 3, complex(0.5, 1)):
        d = face_sides(label, omega, s)
        r = abs(d["lhs"] - d["rhs"])
        recs.append(audits._check("harmonic.face", {"field": label, "omega": omega.name,
                                                    "s": complex(s)},
                                  {"residual": r, "lhs": d["lhs"]}, tol, r < tol))
        recs.append(audits._rec("harmonic.face_literal", {"field": label, "omega": omega.name,
                                                          "s": complex(s)},
                                {"literal_rhs": d["literal_rhs"], "lhs": d["lhs"],
                                 "residual": abs(d["lhs"] - d["literal_rhs"])}, tol,
                                audits.REPORT))
    return _emit_records(recs, cfg, "face-audit")


def cmd_weil(args, cfg):
    from .completed import scan_zeros
    from .positivity import SchwartzBarnerFunction, weil_trace
    lo, hi = parse_range(args.range or "10:50")
    zeros = scan_zeros(_field(args), lo, hi, float(cfg.grids["zero_step"]))
    w = weil_trace(SchwartzBarnerFunction((1.0,), 1.0), zeros) if zeros else 0j
    tol = args.tolerance if args.tolerance is not None else cfg.tol["weil_imag"]
    rec = audits._check("positivity.weil_trace", {"F0": "exp(-x^2)", "range": [lo, hi],
                                                  "zeros": len(zeros), "side": "zero sum only"},
                        w, tol, abs(w.imag) < tol)
    return _emit_records([rec], cfg, "weil")


def cmd_catalogue(args, cfg):
    from .fields import catalogue_labels, make_field
    rows = [make_field(l).as_dict() for l in catalogue_labels()]
    _emit(json.dumps(audits._jsonable(rows), indent=2, sort_keys=True) + "\n", cfg,
          "catalogue.json")
    return 0


HANDLERS = {
    "fe-audit": cmd_fe_audit,
    "zeros": cmd_zeros,
    "all": cmd_all,
    "face-audit": cmd_face_audit,
    "trace": _module_cmd("positivity_traces", ("positivity.cws_trace",
                                               "positivity.transformed_amplitude"), "trace"),
    "amplitude": _module_cmd("positivity_traces", ("positivity.sine_positivity",
                                                   "positivity.plus_seam",
                                                   "positivity.minus_build", "positivity.cramer",
                                                   "positivity.j_substitution"), "amplitude"),
    "fourier-audit": _module_cmd("harmonic", ("harmonic.eigen", "harmonic.hecke",
                                              "harmonic.poisson", "harmonic.afe"),
                                 "fourier-audit"),
    "mellin-audit": lambda a, c: _emit_records(
        _select(audits.run_module("harmonic", c)[0], ("harmonic.mellin",))
        + _select(audits.run_module("positivity_traces", c)[0], ("positivity.rouche",)),
        c, "mellin-audit"),
    "padic": _module_cmd("adic_quaternion", ("adic.",), "padic"),
    "quat": _module_cmd("adic_quaternion", ("quat.",), "quat", ("quat_det",)),
    "weil": cmd_weil,
    "catalogue": cmd_catalogue,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    try:
        cfg = _config(args)
        return HANDLERS[args.cmd](args, cfg)
    except (ConfigError, UsageError, UnknownFieldError) as e:
        msg = e.args[0] if e.args else str(e)
        sys.stderr.write(f"zetalab {args.cmd}: error: {msg}\n")
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
