"""Command-line surface: parse a config, run one operation, persist results.

Exit codes: 0 on success, 1 on a module error (solver failure), 2 on a
malformed or invalid configuration / usage error.  Errors are emitted as a
single JSON object on stdout so callers never have to scrape tracebacks.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .classify import classify, critical_mu, identity_map
from .config import ModelConfig
from .dynamics import compare_runs, run_free_boundary
from .errors import EpifrontError, ParseError, ValidationError
from .io_utils import ManifestTimer, write_csv, write_json
from .spectral import critical_length, principal_eigen
from .steady import solve_bounded_steady, solve_halfline_steady


def parse_config(path: str | Path) -> tuple[ModelConfig, list]:
    """Load, schema-check and hypothesis-validate a JSON config file."""
    p = Path(path)
    if not p.exists():
        raise ParseError(f"config file not found: {p}")
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {p}: {exc}") from exc
    cfg = ModelConfig.from_dict(raw)
    reports = cfg.validate()
    return cfg, reports


def _error_json(exc: Exception) -> dict:
    payload = {"type": type(exc).__name__, "message": str(exc)}
    clause = getattr(exc, "clause", None)
    if clause is not None:
        payload["clause"] = clause
    return {"error": payload}


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _parse_sweep(spec: str) -> np.ndarray:
    try:
        parts = spec.split(":")
        l0, l1, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 1 or l0 <= 0 or l1 < l0:
            raise ValueError
    except (ValueError, IndexError):
        raise ParseError(f"sweep must be 'l0:l1:n' with 0 < l0 <= l1 and n >= 1, got {spec!r}")
    return np.linspace(l0, l1, n)


def _parse_mu_map(spec: str):
    if spec == "identity":
        return identity_map
    if spec.startswith("linear:"):
        k = float(spec.split(":", 1)[1])
        if k <= 0:
            raise ParseError("linear mu map needs a positive slope")
        return lambda mu1: k * mu1
    raise ParseError(f"unknown mu map {spec!r}; use 'identity' or 'linear:<k>'")


def _cmd_check(cfg: ModelConfig, reports, args, timer: ManifestTimer, outdir: Path) -> dict:
    diag = cfg.diagnostics()
    payload = {
        "reports": [r.to_dict() for r in reports],
        "diagnostics": diag.to_dict(),
        "resolved_numerics": {"dx": cfg.dx, "dt": cfg.dt, "L_max": cfg.L_max, "dt_stab": cfg.dt_stab},
    }
    write_json(timer.add(outdir / "check.json"), payload)
    return payload


def _cmd_eigen(cfg: ModelConfig, reports, args, timer: ManifestTimer, outdir: Path) -> dict:
    if args.sweep:
        lengths = _parse_sweep(args.sweep)
    elif args.l is not None:
        lengths = np.array([args.l])
    else:
        raise ParseError("eigen needs --l or --sweep")
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(lambda l: principal_eigen(cfg, float(l)), lengths))
    rows = [(r.l, r.lambda_p, r.iterations, r.residual) for r in results]
    write_csv(timer.add(outdir / "eigen.csv"), ["l", "lambda_p", "iterations", "residual"], rows)
    return {
        "count": len(results),
        "lambda_p": [r.lambda_p for r in results],
        "l": [r.l for r in results],
    }


def _cmd_critlen(cfg: ModelConfig, reports, args, timer: ManifestTimer, outdir: Path) -> dict:
    res = critical_length(cfg)
    write_csv(
        timer.add(outdir / "critlen_trace.csv"),
        ["step", "l", "lambda_p"],
        [(i, l, lam) for i, (l, lam) in enumerate(res.trace)],
    )
    payload = {"lstar": res.lstar, "applicable": res.applicable, "reason": res.reason}
    write_json(timer.add(outdir / "critlen.json"), payload)
    return payload


def _cmd_steady(cfg: ModelConfig, reports, args, timer: ManifestTimer, outdir: Path) -> dict:
    if args.halfline:
        sol = solve_halfline_steady(cfg, args.ltrunc)
    elif args.l is not None:
        sol = solve_bounded_steady(cfg, args.l)
    else:
        raise ParseError("steady needs --l or --halfline")
    rows = list(zip(sol.x, sol.u, sol.v))
    write_csv(timer.add(outdir / "steady.csv"), ["x", "u", "v"], rows)
    payload = {
        "l": sol.l,
        "halfline": sol.halfline,
        "residual": sol.residual,
        "iterations": sol.iterations,
        "bracket_gap": sol.bracket_gap,
        "lambda_p": sol.lambda_p,
        "max_u": float(np.max(sol.u)),
        "max_v": float(np.max(sol.v)),
    }
    write_json(timer.add(outdir / "steady.json"), payload)
    return payload


def _classification_payload(cfg: ModelConfig, cls) -> dict:
    diag = cfg.diagnostics()
    out = cls.to_dict()
    out["diagnostics"]["gammaA"] = diag.gammaA
    out["diagnostics"]["gammaB"] = diag.gammaB
    out["diagnostics"]["ustar"] = diag.ustar
    out["diagnostics"]["vstar"] = diag.vstar
    return out


def _cmd_simulate(cfg: ModelConfig, reports, args, timer: ManifestTimer, outdir: Path) -> dict:
    traj = run_free_boundary(cfg, args.tmax)
    cls = classify(cfg, args.tmax, traj=traj)
    front_rows = zip(traj.t, traj.h, traj.hprime, traj.sup_u, traj.sup_v)
    write_csv(timer.add(outdir / "front.csv"), ["t", "h", "hprime", "sup_u", "sup_v"], front_rows)
    snap_rows = []
    for snap in traj.snapshots:
        x = np.arange(snap.u.shape[0]) * traj.dx
        for xi, ui, vi in zip(x, snap.u, snap.v):
            snap_rows.append((snap.t, xi, ui, vi))
    write_csv(timer.add(outdir / "snapshots.csv"), ["t", "x", "u", "v"], snap_rows)
    payload = _classification_payload(cfg, cls)
    payload["run"] = {"status": traj.status, "steps": int(traj.t.size), "t_final": float(traj.t[-1]),
                      "h_final": traj.h_final, "dx": traj.dx, "dt": traj.dt}
    write_json(timer.add(outdir / "summary.json"), payload)
    return payload


def _cmd_classify(cfg: ModelConfig, reports, args, timer: ManifestTimer, outdir: Path) -> dict:
    cls = classify(cfg, args.tmax)
    payload = _classification_payload(cfg, cls)
    write_json(timer.add(outdir / "classification.json"), payload)
    return payload


def _cmd_critmu(cfg: ModelConfig, reports, args, timer: ManifestTimer, outdir: Path) -> dict:
    res = critical_mu(cfg, f=_parse_mu_map(args.f), tol=args.tol, T_max=args.tmax)
    write_csv(
        timer.add(outdir / "critmu_trace.csv"),
        ["probe", "mu1", "mu2", "verdict", "certificate"],
        [(i, m1, m2, verd, cert) for i, (m1, m2, verd, cert) in enumerate(res.probes)],
    )
    payload = res.to_dict()
    del payload["probes"]
    write_json(timer.add(outdir / "critmu.json"), payload)
    return payload


def _cmd_compare(cfg: ModelConfig, reports, args, timer: ManifestTimer, outdir: Path) -> dict:
    cfg2, _ = parse_config(args.config2)
    t1 = run_free_boundary(cfg, args.tmax)
    t2 = run_free_boundary(cfg2, args.tmax)
    rep = compare_runs(t1, t2)
    payload = rep.to_dict()
    write_json(timer.add(outdir / "compare.json"), payload)
    return payload


_COMMANDS = {
    "check": _cmd_check,
    "eigen": _cmd_eigen,
    "critlen": _cmd_critlen,
    "steady": _cmd_steady,
    "simulate": _cmd_simulate,
    "classify": _cmd_classify,
    "critmu": _cmd_critmu,
    "compare": _cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="epifront", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("config", help="model configuration JSON file")
        p.add_argument("-o", "--outdir", default=".", help="directory for output artifacts")

    common(sub.add_parser("check", help="hypothesis reports and scalar diagnostics"))

    p = sub.add_parser("eigen", help="principal eigenvalue at one length or over a sweep")
    common(p)
    p.add_argument("--l", type=float, default=None, help="domain length")
    p.add_argument("--sweep", default=None, help="length sweep l0:l1:n")

    common(sub.add_parser("critlen", help="critical domain length with bisection trace"))

    p = sub.add_parser("steady", help="steady state on a bounded domain or the half line")
    common(p)
    p.add_argument("--l", type=float, default=None, help="domain length")
    p.add_argument("--halfline", action="store_true", help="solve the half-line problem")
    p.add_argument("--ltrunc", type=float, default=10.0, help="half-line observation window")

    p = sub.add_parser("simulate", help="free-boundary run with front and snapshot tables")
    common(p)
    p.add_argument("--tmax", type=float, required=True)

    p = sub.add_parser("classify", help="spreading/vanishing verdict with certificate")
    common(p)
    p.add_argument("--tmax", type=float, default=None)

    p = sub.add_parser("critmu", help="threshold expansion rate by verdict bisection")
    common(p)
    p.add_argument("--f", default="identity", help="map mu2 = f(mu1): 'identity' or 'linear:<k>'")
    p.add_argument("--tol", type=float, default=1e-3, help="relative bracket width")
    p.add_argument("--tmax", type=float, default=None, help="probe horizon")

    p = sub.add_parser("compare", help="order-check two runs (second should dominate)")
    p.add_argument("config", help="lower configuration JSON")
    p.add_argument("config2", help="upper configuration JSON")
    p.add_argument("-o", "--outdir", default=".", help="directory for output artifacts")
    p.add_argument("--tmax", type=float, default=20.0)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg, reports = parse_config(args.config)
    except (ParseError, ValidationError) as exc:
        _emit(_error_json(exc))
        return 2

    if getattr(args, "tmax", None) is None and args.command in ("classify", "critmu"):
        gamma_b = cfg.diagnostics().gammaB
        args.tmax = 50.0 / max(abs(gamma_b), 1e-6)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    timer = ManifestTimer(args.command, cfg.to_dict(), cfg.dx, cfg.dt)
    try:
        payload = _COMMANDS[args.command](cfg, reports, args, timer, outdir)
    except (ParseError, ValidationError) as exc:
        _emit(_error_json(exc))
        timer.finish(outdir / "manifest.json", status=f"error:{type(exc).__name__}")
        return 2
    except EpifrontError as exc:
        _emit(_error_json(exc))
        timer.finish(outdir / "manifest.json", status=f"error:{type(exc).__name__}")
        return 1
    timer.finish(outdir / "manifest.json")
    _emit(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
