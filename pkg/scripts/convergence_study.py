#!/usr/bin/env python3
"""Grid and time-step refinement study on the reference configuration.

Prints eigenvalue refinement ratios (expected ~4 per halving of dx) and the
front position at a fixed horizon under joint (dx, dt) halving.
"""

import json
import sys
from dataclasses import replace
from pathlib import Path

import epifront as ef
from epifront.cli import parse_config
from epifront.config import NumericsConfig

ROOT = Path(__file__).resolve().parent.parent


def run() -> None:
    cfg, _ = parse_config(ROOT / "configs" / "p0.json")

    print("eigenvalue refinement at l = 4:")
    lams = []
    for dx in (0.2, 0.1, 0.05, 0.025):
        lam = ef.principal_eigen(replace(cfg, numerics=NumericsConfig(dx=dx)), 4.0).lambda_p
        lams.append(lam)
        print(f"  dx={dx:<6g} lambda_p={lam:.12f}")
    for i in range(len(lams) - 2):
        num = abs(lams[i] - lams[i + 1])
        den = abs(lams[i + 1] - lams[i + 2])
        print(f"  ratio {i}: {num / den:.3f}")

    print("front position at T = 10 under joint refinement:")
    for k in (1, 2, 4):
        num = NumericsConfig(dx=cfg.dx / k, dt=cfg.dt_stab / k)
        traj = ef.run_free_boundary(replace(cfg, numerics=num), 10.0)
        print(f"  dx={cfg.dx / k:<7g} dt={cfg.dt_stab / k:<8.4f} h(10)={traj.h[-1]:.6f}")


if __name__ == "__main__":
    run()
