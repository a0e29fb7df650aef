"""Spreading/vanishing decision logic and the expansion-rate threshold.

Every verdict carries a certificate naming the criterion that produced it:
subcritical reproduction number, supercritical damped reproduction number,
initial domain at or above the critical length, the front crossing the
critical length during a run, or sustained numerical stagnation.  Timeouts
stay Undetermined rather than being forced into either class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .config import ModelConfig
from .diagnostics import scalar_diagnostics
from .dynamics import STAGNATED, Trajectory, initial_state, run_free_boundary
from .errors import NoBracket, PreconditionFailed
from .grid import Grid, trapezoid_weights
from .spectral import critical_length

VERDICT_SPREADING = "Spreading"
VERDICT_VANISHING = "Vanishing"
VERDICT_UNDETERMINED = "Undetermined"

CERT_R0_SUBCRITICAL = "R0Subcritical"
CERT_RSTAR_SUPERCRITICAL = "RstarSupercritical"
CERT_INITIAL_DOMAIN = "InitialDomainSupercritical"
CERT_FRONT_CROSSED = "FrontCrossedCritical"
CERT_STAGNATED = "Stagnated"
CERT_TIMEOUT = "Timeout"

_MAX_BRACKET_MOVES = 60


@dataclass
class Classification:
    verdict: str
    certificate: str
    R0: float
    Rstar: float
    lstar: Optional[float] = None
    h_final: Optional[float] = None
    sup_final: Optional[float] = None
    vanishing_bound: Optional[float] = None
    t_cross: Optional[float] = None
    trajectory: Optional[Trajectory] = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "certificate": self.certificate,
            "diagnostics": {
                "R0": self.R0,
                "Rstar": self.Rstar,
                "lstar": self.lstar,
                "h_final": self.h_final,
                "sup_final": self.sup_final,
                "vanishing_bound": self.vanishing_bound,
                "t_cross": self.t_cross,
            },
        }


def vanishing_bound(cfg: ModelConfig) -> float:
    """Upper bound on the final front position in the subcritical regime.

    h0 plus the initial mass of u + (H'(0)/b) v divided by the slower of the
    two dissipation-to-expansion ratios; an expansion rate of zero drops its
    ratio from the minimum (that channel cannot move the front at all).
    """
    diag = scalar_diagnostics(cfg)
    if diag.R0 > 1.0:
        raise PreconditionFailed(f"vanishing bound requires R0 <= 1, got {diag.R0:.6g}")
    hp0 = cfg.reactions.dH(0.0)
    ratios = []
    if cfg.mu1 > 0:
        ratios.append(cfg.d1 / cfg.mu1)
    if cfg.mu2 > 0:
        ratios.append(hp0 * cfg.d2 / (cfg.b * cfg.mu2))
    if not ratios:
        return cfg.h0

    grid = Grid.cover(cfg.L_max, cfg.dx)
    state = initial_state(cfg, grid)
    tau = trapezoid_weights(state.u.shape[0])
    mass = float(np.dot(tau, state.u + (hp0 / cfg.b) * state.v)) * grid.dx
    return cfg.h0 + mass / min(ratios)


def classify(
    cfg: ModelConfig,
    T_max: float,
    lstar: Optional[float] = None,
    lam_tol: float = 1e-6,
    simulate_subcritical: bool = True,
    traj: Optional[Trajectory] = None,
) -> Classification:
    """Decide spreading vs vanishing for one configuration.

    The decision cascade tries the rigorous scalar criteria first and only
    simulates when the outcome genuinely depends on the expansion rates:
    R0 <= 1 always vanishes; Rstar >= 1 always spreads; an initial domain at
    or above the critical length spreads; otherwise the run spreads as soon
    as the front passes the critical length and vanishes on stagnation.
    A precomputed free-boundary trajectory may be supplied to avoid rerunning
    the simulation.
    """
    diag = scalar_diagnostics(cfg)

    if diag.R0 <= 1.0:
        bound = vanishing_bound(cfg)
        result = Classification(
            verdict=VERDICT_VANISHING,
            certificate=CERT_R0_SUBCRITICAL,
            R0=diag.R0,
            Rstar=diag.Rstar,
            vanishing_bound=bound,
        )
        if traj is None and simulate_subcritical:
            traj = run_free_boundary(cfg, T_max)
        if traj is not None:
            result.h_final = traj.h_final
            result.sup_final = traj.sup_final
            result.trajectory = traj
        return result

    def _with_traj(result: Classification) -> Classification:
        if traj is not None:
            result.h_final = traj.h_final
            result.sup_final = traj.sup_final
            result.trajectory = traj
        return result

    if diag.Rstar >= 1.0:
        return _with_traj(
            Classification(
                verdict=VERDICT_SPREADING,
                certificate=CERT_RSTAR_SUPERCRITICAL,
                R0=diag.R0,
                Rstar=diag.Rstar,
            )
        )

    if lstar is None:
        lstar = critical_length(cfg, lam_tol=lam_tol).lstar

    if cfg.h0 >= lstar:
        return _with_traj(
            Classification(
                verdict=VERDICT_SPREADING,
                certificate=CERT_INITIAL_DOMAIN,
                R0=diag.R0,
                Rstar=diag.Rstar,
                lstar=lstar,
            )
        )

    if traj is None:
        traj = run_free_boundary(cfg, T_max, front_threshold=lstar)
    common = dict(R0=diag.R0, Rstar=diag.Rstar, lstar=lstar,
                  h_final=traj.h_final, sup_final=traj.sup_final, trajectory=traj)
    crossed = np.nonzero(traj.h > lstar)[0]
    if crossed.size:
        return Classification(
            verdict=VERDICT_SPREADING,
            certificate=CERT_FRONT_CROSSED,
            t_cross=float(traj.t[crossed[0]]),
            **common,
        )
    if traj.status == STAGNATED:
        return Classification(verdict=VERDICT_VANISHING, certificate=CERT_STAGNATED, **common)
    return Classification(verdict=VERDICT_UNDETERMINED, certificate=CERT_TIMEOUT, **common)


@dataclass
class CriticalMuResult:
    mu1_lo: float
    mu1_hi: float
    verdict_lo: str
    verdict_hi: str
    lstar: float
    tol: float
    probes: list = field(default_factory=list)  # (mu1, mu2, verdict, certificate) in probe order

    @property
    def width(self) -> float:
        return self.mu1_hi - self.mu1_lo

    def to_dict(self) -> dict:
        return {
            "mu1_lo": self.mu1_lo,
            "mu1_hi": self.mu1_hi,
            "width": self.width,
            "tol": self.tol,
            "verdict_lo": self.verdict_lo,
            "verdict_hi": self.verdict_hi,
            "lstar": self.lstar,
            "probes": [
                {"mu1": m1, "mu2": m2, "verdict": verd, "certificate": cert}
                for (m1, m2, verd, cert) in self.probes
            ],
        }


def identity_map(mu1: float) -> float:
    return mu1


def critical_mu(
    cfg: ModelConfig,
    f: Callable[[float], float] = identity_map,
    tol: float = 1e-3,
    T_max: Optional[float] = None,
    mu_init: float = 1.0,
) -> CriticalMuResult:
    """Bisect the expansion rate mu1 (with mu2 = f(mu1)) to the spreading threshold.

    Returns a bracket [mu1_lo, mu1_hi] of relative width <= tol whose lower
    end vanished and upper end spread at the probe horizon.  Undetermined
    probes are treated as vanishing, which can only push the bracket upward,
    keeping the spreading endpoint certified.
    """
    diag = scalar_diagnostics(cfg)
    if not (diag.Rstar < 1.0 < diag.R0):
        raise PreconditionFailed("threshold search requires Rstar < 1 < R0")
    lstar = critical_length(cfg).lstar
    if cfg.h0 >= lstar:
        raise PreconditionFailed(f"h0={cfg.h0:.6g} already at or above the critical length {lstar:.6g}")
    if T_max is None:
        T_max = 50.0 / abs(diag.gammaB)

    probes: list[tuple[float, float, str, str]] = []
    cache: dict[float, Classification] = {}

    def probe(mu1: float) -> Classification:
        if mu1 not in cache:
            mu2 = f(mu1)
            result = classify(cfg.with_mu(mu1, mu2), T_max, lstar=lstar)
            cache[mu1] = result
            probes.append((mu1, mu2, result.verdict, result.certificate))
        return cache[mu1]

    hi = mu_init
    for _ in range(_MAX_BRACKET_MOVES):
        if probe(hi).verdict == VERDICT_SPREADING:
            break
        hi *= 2.0
    else:
        raise NoBracket(f"no spreading verdict up to mu1={hi:.3e}")

    lo = hi / 2.0
    for _ in range(_MAX_BRACKET_MOVES):
        if probe(lo).verdict != VERDICT_SPREADING:
            break
        lo *= 0.5
    else:
        raise NoBracket(f"no vanishing verdict down to mu1={lo:.3e}")

    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if probe(mid).verdict == VERDICT_SPREADING:
            hi = mid
        else:
            lo = mid

    return CriticalMuResult(
        mu1_lo=lo,
        mu1_hi=hi,
        verdict_lo=cache[lo].verdict,
        verdict_hi=cache[hi].verdict,
        lstar=lstar,
        tol=tol,
        probes=probes,
    )
