#!/usr/bin/env python3
"""Drive the full pipeline on the reference configuration.

Produces every artifact the plotting package consumes:
  out/check.json            scalar diagnostics and hypothesis reports
  out/eigen.csv             eigenvalue sweep over domain lengths
  out/critlen.json + trace  critical length bisection
  out/steady.csv            half-line steady profile
  out/front.csv, snapshots.csv, summary.json   spreading run
  out/vanish/...            a vanishing run (same tables)
  out/critmu.json + trace   expansion-rate threshold

Usage: python scripts/run_reference_suite.py [outdir]
"""

import json
import shutil
import sys
from pathlib import Path

from epifront.cli import main as cli

ROOT = Path(__file__).resolve().parent.parent
P0 = ROOT / "configs" / "p0.json"


def run(outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    base = json.loads(P0.read_text())

    steps = [
        ["check", str(P0)],
        ["eigen", str(P0), "--sweep", "0.2:24:40"],
        ["critlen", str(P0)],
        ["steady", str(P0), "--halfline", "--ltrunc", "8"],
        ["simulate", str(P0), "--tmax", "40"],
    ]
    # the half-line ladder needs headroom beyond the default grid
    wide = dict(base, numerics={"L_max": 80.0})
    wide_path = outdir / "p0_wide.json"
    wide_path.write_text(json.dumps(wide, indent=2))
    steps[3] = ["steady", str(wide_path), "--halfline", "--ltrunc", "8"]

    for argv in steps:
        code = cli(argv + ["-o", str(outdir)])
        if code != 0:
            sys.exit(f"step {argv} failed with exit code {code}")

    # vanishing companion run: subcritical reproduction number
    sub = dict(base, d1=1.0, d2=1.0)
    sub["reactions"] = {"family": "monod", "p": 1.0, "q": 1.0, "r": 1.0, "s": 1.0}
    sub_path = outdir / "subcritical.json"
    sub_path.write_text(json.dumps(sub, indent=2))
    vanish_dir = outdir / "vanish"
    code = cli(["simulate", str(sub_path), "--tmax", "60", "-o", str(vanish_dir)])
    if code != 0:
        sys.exit(f"vanishing run failed with exit code {code}")

    # threshold search on a narrow initial domain
    mid = dict(base, h0=0.3)
    mid_path = outdir / "narrow.json"
    mid_path.write_text(json.dumps(mid, indent=2))
    code = cli(["critmu", str(mid_path), "--tol", "1e-3", "--tmax", "2000", "-o", str(outdir)])
    if code != 0:
        sys.exit(f"threshold search failed with exit code {code}")

    print(f"reference suite written to {outdir}")


if __name__ == "__main__":
    run(Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "out")
