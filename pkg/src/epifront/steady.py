"""Monotone bracketing iteration for the steady dispersal system.

The map Gamma[(u, v)] = ((d1 K1*u + H(v))/(d1+a), (d2 K2*v + G(u))/(d2+b)) is
order-preserving; iterating it from the constant equilibrium gives a
nonincreasing upper sequence, and from a small multiple of the principal
eigenfunction a nondecreasing lower one.  Both converge to the unique
positive steady state whenever the principal eigenvalue is positive, and the
recorded gap between them turns uniqueness into a measurable quantity.

The half-line problem is reached through a geometric ladder of bounded
domains whose restrictions stabilize on the requested window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import ModelConfig
from .diagnostics import solve_equilibrium_scalar
from .errors import LadderExhausted, NoConvergence, NotUniquelyBracketed, PreconditionFailed
from .spectral import CooperativeOperator, EigenResult, assemble_operator, principal_eigen

_EPS_HALVINGS = 80


@dataclass
class SteadyResult:
    l: float
    halfline: bool
    x: np.ndarray
    u: np.ndarray
    v: np.ndarray
    residual: float
    iterations: int
    bracket_gap: float
    lambda_p: Optional[float] = None


def gamma_map(cfg: ModelConfig, l: float, u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One application of the monotone fixed-point map on [0, l]."""
    ws = assemble_operator(cfg, l)
    if u.shape[0] != ws.n or v.shape[0] != ws.n:
        raise ValueError(f"profiles must have {ws.n} nodes for l={l:.6g}")
    return _gamma(ws, cfg, u, v)


def _gamma(ws: CooperativeOperator, cfg: ModelConfig, u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    pu = ws.op1.convolve(ws.tau * u)
    pv = ws.op2.convolve(ws.tau * v)
    gu = (cfg.d1 * pu + cfg.reactions.H(v)) / (cfg.d1 + cfg.a)
    gv = (cfg.d2 * pv + cfg.reactions.G(u)) / (cfg.d2 + cfg.b)
    return gu, gv


def steady_residual(cfg: ModelConfig, l: float, u: np.ndarray, v: np.ndarray) -> float:
    """Sup-norm residual of the steady equations at (u, v)."""
    gu, gv = gamma_map(cfg, l, u, v)
    return _residual_from_gamma(cfg, u, v, gu, gv)


def _residual_from_gamma(cfg, u, v, gu, gv) -> float:
    r1 = (cfg.d1 + cfg.a) * float(np.max(np.abs(gu - u)))
    r2 = (cfg.d2 + cfg.b) * float(np.max(np.abs(gv - v)))
    return max(r1, r2)


def _lower_start(ws: CooperativeOperator, cfg: ModelConfig, eig: EigenResult, ustar: float, vstar: float):
    """Scale the eigenfunction down until it verifies as a discrete subsolution."""
    eps = 0.1 * min(ustar, vstar)
    phi1, phi2 = eig.phi1, eig.phi2
    for _ in range(_EPS_HALVINGS):
        lo_u, lo_v = eps * phi1, eps * phi2
        gu, gv = _gamma(ws, cfg, lo_u, lo_v)
        if np.all(gu >= lo_u) and np.all(gv >= lo_v):
            return lo_u, lo_v
        eps *= 0.5
    raise PreconditionFailed("no subsolution scale found; lambda_p(l) is likely nonpositive")


def solve_bounded_steady(
    cfg: ModelConfig,
    l: float,
    eig: Optional[EigenResult] = None,
    lower0: Optional[tuple[np.ndarray, np.ndarray]] = None,
) -> SteadyResult:
    """Unique positive steady state on [0, l] via two-sided monotone iteration.

    Requires lambda_p(l) > 0 (checked through the eigen solve unless a lower
    bracket start is supplied, in which case the caller vouches for it).
    """
    ws = assemble_operator(cfg, l)
    ustar, vstar = solve_equilibrium_scalar(cfg.reactions, cfg.a, cfg.b)
    lam = None
    if lower0 is None:
        if eig is None:
            eig = principal_eigen(cfg, l)
        lam = eig.lambda_p
        if lam <= 0.0:
            raise PreconditionFailed(f"lambda_p({l:.6g}) = {lam:.6g} <= 0: only the trivial steady state exists")
        lo_u, lo_v = _lower_start(ws, cfg, eig, ustar, vstar)
    else:
        lo_u, lo_v = np.asarray(lower0[0], float).copy(), np.asarray(lower0[1], float).copy()
        if lo_u.shape[0] != ws.n:
            raise ValueError("lower bracket start has the wrong node count")

    up_u = np.full(ws.n, ustar)
    up_v = np.full(ws.n, vstar)
    ss_tol = cfg.numerics.ss_tol

    for it in range(1, cfg.numerics.ss_max_iter + 1):
        gu_up, gv_up = _gamma(ws, cfg, up_u, up_v)
        gu_lo, gv_lo = _gamma(ws, cfg, lo_u, lo_v)
        res = _residual_from_gamma(cfg, up_u, up_v, gu_up, gv_up)
        gap = max(float(np.max(np.abs(up_u - lo_u))), float(np.max(np.abs(up_v - lo_v))))
        if res <= ss_tol and gap <= ss_tol:
            return SteadyResult(
                l=l, halfline=False, x=ws.x.copy(), u=up_u, v=up_v,
                residual=res, iterations=it, bracket_gap=gap, lambda_p=lam,
            )
        move = max(
            float(np.max(np.abs(gu_up - up_u))),
            float(np.max(np.abs(gv_up - up_v))),
            float(np.max(np.abs(gu_lo - lo_u))),
            float(np.max(np.abs(gv_lo - lo_v))),
        )
        if move <= 1e-3 * ss_tol and gap > 100.0 * ss_tol:
            raise NotUniquelyBracketed(f"brackets stalled with gap {gap:.3e}; refine the grid")
        up_u, up_v = gu_up, gv_up
        lo_u, lo_v = gu_lo, gv_lo
    raise NoConvergence(f"steady iteration exceeded {cfg.numerics.ss_max_iter} steps at l={l:.6g}")


def solve_halfline_steady(cfg: ModelConfig, L_trunc: float) -> SteadyResult:
    """Half-line steady state observed on [0, L_trunc].

    Solves bounded problems on a doubling ladder of lengths, seeding each rung
    with the previous solution extended by zero (a subsolution of the larger
    problem), until the restriction to the window moves by at most 10x the
    steady tolerance.
    """
    dx = cfg.dx
    nt = max(1, int(round(L_trunc / dx)))
    Lt = nt * dx
    cap = cfg.L_max
    if Lt > cap:
        raise LadderExhausted(f"truncation window {Lt:.6g} exceeds L_max={cap:.6g}")

    l = Lt
    prev: Optional[SteadyResult] = None
    prev_window: Optional[tuple[np.ndarray, np.ndarray]] = None
    total_iters = 0
    while l <= cap * (1.0 + 1e-12):
        if prev is None:
            try:
                sol = solve_bounded_steady(cfg, l)
            except PreconditionFailed:
                l *= 2.0
                continue
        else:
            n_new = int(round(l / dx)) + 1
            ext_u = np.zeros(n_new)
            ext_v = np.zeros(n_new)
            ext_u[: prev.u.shape[0]] = prev.u
            ext_v[: prev.v.shape[0]] = prev.v
            sol = solve_bounded_steady(cfg, l, lower0=(ext_u, ext_v))
        total_iters += sol.iterations
        window = (sol.u[: nt + 1].copy(), sol.v[: nt + 1].copy())
        if prev_window is not None:
            move = max(
                float(np.max(np.abs(window[0] - prev_window[0]))),
                float(np.max(np.abs(window[1] - prev_window[1]))),
            )
            if move <= 10.0 * cfg.numerics.ss_tol:
                return SteadyResult(
                    l=Lt, halfline=True, x=sol.x[: nt + 1].copy(),
                    u=window[0], v=window[1],
                    residual=sol.residual, iterations=total_iters,
                    bracket_gap=sol.bracket_gap, lambda_p=sol.lambda_p,
                )
        prev = sol
        prev_window = window
        l *= 2.0
    raise LadderExhausted(f"ladder hit L_max={cap:.6g} before the window stabilized")
