"""Closed-form scalar diagnostics and the positive equilibrium.

gamma_A / gamma_B are the dominant roots of the reaction matrix A and of the
dispersal-damped matrix B; they bound the principal eigenvalue of the
linearized operator from above and below and their signs encode the two
reproduction numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import BracketFailure, NoPositiveEquilibrium
from .reactions import ReactionPair

EQ_BISECT_TOL = 1e-13
EQ_SCAN_START = 1e-6
EQ_SCAN_MAX_DOUBLINGS = 200


def gamma_theta(d1: float, d2: float, a: float, b: float, hp0: float, gp0: float) -> tuple[float, float, float, float]:
    """Dominant roots and positive-eigenvector ratios of the 2x2 matrices.

    Returns (gamma_A, gamma_B, theta_A, theta_B) where
    (gamma I - A)(theta_A, 1)^T = 0 for A = [[-a, H'(0)], [G'(0), -b]] and
    analogously for B with the diffusion rates added to the decay rates.
    """
    gamma_a = 0.5 * (-a - b + math.sqrt((a - b) ** 2 + 4.0 * hp0 * gp0))
    gamma_b = 0.5 * (-(a + d1) - (b + d2) + math.sqrt((a + d1 - b - d2) ** 2 + 4.0 * hp0 * gp0))
    theta_a = hp0 / (gamma_a + a)
    theta_b = hp0 / (gamma_b + d1 + a)
    return gamma_a, gamma_b, theta_a, theta_b


@dataclass(frozen=True)
class ScalarDiagnostics:
    R0: float
    Rstar: float
    gammaA: float
    gammaB: float
    thetaA: float
    thetaB: float
    ustar: Optional[float] = None
    vstar: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "R0": self.R0,
            "Rstar": self.Rstar,
            "gammaA": self.gammaA,
            "gammaB": self.gammaB,
            "thetaA": self.thetaA,
            "thetaB": self.thetaB,
            "ustar": self.ustar,
            "vstar": self.vstar,
        }


def solve_equilibrium_scalar(
    reactions: ReactionPair,
    a: float,
    b: float,
    scan_start: float = EQ_SCAN_START,
    bisect_tol: float = EQ_BISECT_TOL,
) -> tuple[float, float]:
    """Unique positive root of G(H(v)/a) = b v, bracketed then bisected.

    Requires R0 > 1 (otherwise the slope at zero is nonpositive and no
    positive root exists).
    """
    r0 = reactions.dH(0.0) * reactions.dG(0.0) / (a * b)
    if r0 <= 1.0:
        raise NoPositiveEquilibrium(f"R0={r0:.6g} <= 1")

    def F(v: float) -> float:
        return reactions.G(reactions.H(v) / a) - b * v

    lo = scan_start
    # Guard against equilibria below the nominal scan start.
    while F(lo) <= 0.0:
        lo *= 0.5
        if lo < 1e-300:
            raise NoPositiveEquilibrium("no positive slope detected near zero")

    hi = lo
    for _ in range(EQ_SCAN_MAX_DOUBLINGS):
        hi *= 2.0
        if F(hi) < 0.0:
            break
        lo = hi
    else:
        raise BracketFailure("no sign change of the equilibrium residual in the scan range")

    while hi - lo > bisect_tol:
        mid = 0.5 * (lo + hi)
        if F(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
    vstar = 0.5 * (lo + hi)
    ustar = reactions.H(vstar) / a
    return ustar, vstar


def scalar_diagnostics(cfg) -> ScalarDiagnostics:
    """All closed-form scalars for a model configuration; equilibrium when R0 > 1."""
    hp0 = cfg.reactions.dH(0.0)
    gp0 = cfg.reactions.dG(0.0)
    r0 = hp0 * gp0 / (cfg.a * cfg.b)
    rstar = hp0 * gp0 / ((cfg.a + cfg.d1) * (cfg.b + cfg.d2))
    gamma_a, gamma_b, theta_a, theta_b = gamma_theta(cfg.d1, cfg.d2, cfg.a, cfg.b, hp0, gp0)
    ustar = vstar = None
    if r0 > 1.0:
        ustar, vstar = solve_equilibrium_scalar(cfg.reactions, cfg.a, cfg.b)
    return ScalarDiagnostics(
        R0=r0,
        Rstar=rstar,
        gammaA=gamma_a,
        gammaB=gamma_b,
        thetaA=theta_a,
        thetaB=theta_b,
        ustar=ustar,
        vstar=vstar,
    )


def solve_equilibrium(cfg) -> tuple[float, float]:
    """Positive equilibrium of the space-free system for a model configuration."""
    return solve_equilibrium_scalar(cfg.reactions, cfg.a, cfg.b)
