"""Explicit time integration of the free-boundary system and its fixed-domain variants.

The dispersal operator is bounded, so forward Euler is stable under a time
step independent of the grid spacing; the bound also keeps the one-step map
order-preserving, which is what the trajectory-comparison checks rely on.
The front position h advances continuously by the outward dispersal flux
while the active node window is snapped to the nearest node; freshly
activated nodes start at zero, the value the boundary condition prescribes
at the front itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .config import ModelConfig
from .errors import DomainExceedsGrid, IncomparableRuns, StabilityViolation
from .grid import Grid, NonlocalOperator, front_flux
from .spectral import fitted_nodes

REACHED_TMAX = "ReachedTmax"
FRONT_CROSSED_CRITICAL = "FrontCrossedCritical"
STAGNATED = "Stagnated"
GRID_EXHAUSTED = "GridExhausted"


@dataclass
class StateSnapshot:
    t: float
    h: float
    m: int
    u: np.ndarray
    v: np.ndarray


@dataclass
class Trajectory:
    t: np.ndarray
    h: np.ndarray
    hprime: np.ndarray
    sup_u: np.ndarray
    sup_v: np.ndarray
    snapshots: list[StateSnapshot]
    status: str
    dx: float
    dt: float
    fixed_domain: bool = False
    l: Optional[float] = None
    t_cross: Optional[float] = None

    @property
    def h_final(self) -> float:
        return float(self.h[-1])

    @property
    def sup_final(self) -> float:
        last = self.snapshots[-1]
        return float(np.max(last.u + last.v)) if last.u.size else 0.0


def state_ceilings(cfg: ModelConfig) -> tuple[float, float]:
    """A-priori sup bounds: initial peak or the saturated reaction ceiling."""
    amp_u, amp_v = cfg.initial_amplitudes()
    m1 = max(amp_u, cfg.reactions.H_sup / cfg.a)
    m2 = max(amp_v, cfg.reactions.G_sup / cfg.b)
    return m1, m2


class _Engine:
    """Euler stepping with operators preassembled for one lattice spacing."""

    def __init__(self, cfg: ModelConfig, dx: float):
        self.cfg = cfg
        self.dx = dx
        self.op1 = NonlocalOperator(cfg.kernel1, dx, cfg.numerics.fft_threshold)
        self.op2 = NonlocalOperator(cfg.kernel2, dx, cfg.numerics.fft_threshold)

    def step_densities(
        self, u: np.ndarray, v: np.ndarray, dt: float, n_active: int, clamp_last: bool
    ) -> tuple[np.ndarray, np.ndarray]:
        """Euler update on the active window [0, n_active).

        With ``clamp_last`` the final active node carries the zero boundary
        value of the moving front and is excluded from the update.
        """
        cfg = self.cfg
        ua = u[:n_active]
        va = v[:n_active]
        pu = self.op1.apply(ua)
        pv = self.op2.apply(va)
        upto = n_active - 1 if clamp_last else n_active
        nu = u.copy()
        nv = v.copy()
        nu[:upto] = ua[:upto] + dt * (
            cfg.d1 * pu[:upto] - (cfg.d1 + cfg.a) * ua[:upto] + cfg.reactions.H(va[:upto])
        )
        nv[:upto] = va[:upto] + dt * (
            cfg.d2 * pv[:upto] - (cfg.d2 + cfg.b) * va[:upto] + cfg.reactions.G(ua[:upto])
        )
        if clamp_last:
            nu[n_active - 1] = 0.0
            nv[n_active - 1] = 0.0
        return nu, nv


def _check_dt(cfg: ModelConfig, dt: float) -> None:
    if dt > cfg.dt_stab * (1.0 + 1e-12):
        raise StabilityViolation(f"dt={dt:.6g} exceeds the stability bound {cfg.dt_stab:.6g}")


def _flux(cfg: ModelConfig, u: np.ndarray, v: np.ndarray, h: float, dx: float) -> float:
    return front_flux(u, v, h, dx, cfg.mu1, cfg.mu2, cfg.kernel1, cfg.kernel2)


def initial_state(cfg: ModelConfig, grid: Grid) -> StateSnapshot:
    m0 = grid.front_index(cfg.h0)
    x = grid.nodes[: m0 + 1]
    u0, v0 = cfg.initial_profiles(x)
    u0 = u0.copy()
    v0 = v0.copy()
    u0[m0] = 0.0
    v0[m0] = 0.0
    return StateSnapshot(t=0.0, h=cfg.h0, m=m0, u=u0, v=v0)


def step_free_boundary(state: StateSnapshot, cfg: ModelConfig, dt: float) -> StateSnapshot:
    """One explicit step of the full free-boundary system."""
    _check_dt(cfg, dt)
    grid = Grid.cover(cfg.L_max, cfg.dx)
    engine = _Engine(cfg, grid.dx)
    m = state.m
    flux = _flux(cfg, state.u, state.v, state.h, grid.dx)
    h_new = state.h + dt * flux
    m_new = grid.front_index(h_new)
    u = np.zeros(m_new + 1)
    v = np.zeros(m_new + 1)
    u[: m + 1] = state.u
    v[: m + 1] = state.v
    nu, nv = engine.step_densities(u, v, dt, m + 1, clamp_last=True)
    nu[m_new] = 0.0
    nv[m_new] = 0.0
    return StateSnapshot(t=state.t + dt, h=h_new, m=m_new, u=nu, v=nv)


def run_free_boundary(
    cfg: ModelConfig,
    T_max: float,
    front_threshold: Optional[float] = None,
    on_step: Optional[Callable[[StateSnapshot], None]] = None,
) -> Trajectory:
    """Integrate the free-boundary system until T_max or a terminal event.

    Terminal events: the front crosses ``front_threshold`` (a spreading
    certificate), the run stagnates (front stalled and densities below the
    vanishing tolerance for a sustained window), or the front leaves the grid.
    """
    dt = cfg.dt
    _check_dt(cfg, dt)
    grid = Grid.cover(cfg.L_max, cfg.dx)
    num = cfg.numerics
    engine = _Engine(cfg, grid.dx)

    u = np.zeros(grid.n_max)
    v = np.zeros(grid.n_max)
    state0 = initial_state(cfg, grid)
    m = state0.m
    h = state0.h
    u[: m + 1] = state0.u
    v[: m + 1] = state0.v

    n_steps = int(math.ceil(T_max / dt - 1e-12))
    ts: list[float] = []
    hs: list[float] = []
    fluxes: list[float] = []
    sups_u: list[float] = []
    sups_v: list[float] = []
    snapshots: list[StateSnapshot] = []
    status = REACHED_TMAX
    t_cross = None
    stagnant = 0
    t = 0.0

    for step_idx in range(n_steps + 1):
        flux = _flux(cfg, u[: m + 1], v[: m + 1], h, grid.dx)
        ts.append(t)
        hs.append(h)
        fluxes.append(flux)
        sups_u.append(float(np.max(u[: m + 1])))
        sups_v.append(float(np.max(v[: m + 1])))
        if step_idx % num.snapshot_every == 0:
            snapshots.append(StateSnapshot(t=t, h=h, m=m, u=u[: m + 1].copy(), v=v[: m + 1].copy()))
        if on_step is not None:
            on_step(StateSnapshot(t=t, h=h, m=m, u=u[: m + 1], v=v[: m + 1]))

        if front_threshold is not None and h > front_threshold:
            status = FRONT_CROSSED_CRITICAL
            t_cross = t
            break
        sup_total = float(np.max(u[: m + 1] + v[: m + 1]))
        if flux < num.front_stall_tol and sup_total < num.vanish_tol:
            stagnant += 1
            if stagnant >= num.stagnation_window:
                status = STAGNATED
                break
        else:
            stagnant = 0
        if step_idx == n_steps:
            break

        u, v = engine.step_densities(u, v, dt, m + 1, clamp_last=True)
        h = h + dt * flux
        t += dt
        try:
            m = grid.front_index(h)
        except DomainExceedsGrid:
            status = GRID_EXHAUSTED
        u[m + 1 :] = 0.0
        v[m + 1 :] = 0.0
        u[m] = 0.0
        v[m] = 0.0
        if status == GRID_EXHAUSTED:
            flux = _flux(cfg, u[: m + 1], v[: m + 1], h, grid.dx)
            ts.append(t)
            hs.append(h)
            fluxes.append(flux)
            sups_u.append(float(np.max(u[: m + 1])))
            sups_v.append(float(np.max(v[: m + 1])))
            break

    if not snapshots or snapshots[-1].t != t:
        snapshots.append(StateSnapshot(t=t, h=h, m=m, u=u[: m + 1].copy(), v=v[: m + 1].copy()))

    return Trajectory(
        t=np.array(ts),
        h=np.array(hs),
        hprime=np.array(fluxes),
        sup_u=np.array(sups_u),
        sup_v=np.array(sups_v),
        snapshots=snapshots,
        status=status,
        dx=grid.dx,
        dt=dt,
        fixed_domain=False,
        t_cross=t_cross,
    )


def run_fixed_domain(
    cfg: ModelConfig,
    l: float,
    T_max: float,
    init: Optional[tuple[np.ndarray, np.ndarray]] = None,
    halfline: bool = False,
) -> Trajectory:
    """Integrate the fixed-domain system on [0, l] (no moving front).

    With ``halfline=True``, l is the truncation window of the half-line
    problem; for compactly supported kernels the truncated dynamics coincide
    with the bounded-domain dynamics on that window.
    """
    dt = cfg.dt
    _check_dt(cfg, dt)
    x, dx = fitted_nodes(l, cfg.dx)
    n = x.shape[0]
    engine = _Engine(cfg, dx)
    num = cfg.numerics

    if init is None:
        u, v = cfg.initial_profiles(x, scale=l)
        u = u.copy()
        v = v.copy()
    else:
        u = np.asarray(init[0], float).copy()
        v = np.asarray(init[1], float).copy()
        if u.shape[0] != n or v.shape[0] != n:
            raise ValueError(f"initial profiles must have {n} nodes for l={l:.6g}")

    n_steps = int(math.ceil(T_max / dt - 1e-12))
    ts: list[float] = []
    sups_u: list[float] = []
    sups_v: list[float] = []
    snapshots: list[StateSnapshot] = []
    t = 0.0
    for step_idx in range(n_steps + 1):
        ts.append(t)
        sups_u.append(float(np.max(u)))
        sups_v.append(float(np.max(v)))
        if step_idx % num.snapshot_every == 0:
            snapshots.append(StateSnapshot(t=t, h=l, m=n - 1, u=u.copy(), v=v.copy()))
        if step_idx == n_steps:
            break
        u, v = engine.step_densities(u, v, dt, n, clamp_last=False)
        t += dt

    if snapshots[-1].t != t:
        snapshots.append(StateSnapshot(t=t, h=l, m=n - 1, u=u.copy(), v=v.copy()))

    ts_arr = np.array(ts)
    return Trajectory(
        t=ts_arr,
        h=np.full_like(ts_arr, l),
        hprime=np.zeros_like(ts_arr),
        sup_u=np.array(sups_u),
        sup_v=np.array(sups_v),
        snapshots=snapshots,
        status=REACHED_TMAX,
        dx=dx,
        dt=dt,
        fixed_domain=True,
        l=l,
    )


@dataclass
class OrderReport:
    ordered: bool
    max_violation: float
    tol: float
    first_violation: Optional[dict] = None
    steps_compared: int = 0
    snapshots_compared: int = 0

    def to_dict(self) -> dict:
        return {
            "ordered": self.ordered,
            "max_violation": self.max_violation,
            "tol": self.tol,
            "first_violation": self.first_violation,
            "steps_compared": self.steps_compared,
            "snapshots_compared": self.snapshots_compared,
        }


def compare_runs(t1: Trajectory, t2: Trajectory, tol: float = 1e-10) -> OrderReport:
    """Check that run 2 dominates run 1: h2 >= h1 at shared steps and u2 >= u1, v2 >= v1 nodewise."""
    if t1.dx != t2.dx or t1.dt != t2.dt or t1.fixed_domain != t2.fixed_domain:
        raise IncomparableRuns("runs use different grids or time steps")
    n_steps = min(t1.h.shape[0], t2.h.shape[0])
    max_viol = 0.0
    first = None

    h_gap = t1.h[:n_steps] - t2.h[:n_steps]
    if h_gap.size:
        worst = float(np.max(h_gap))
        max_viol = max(max_viol, worst)
        if worst > tol:
            idx = int(np.argmax(h_gap > tol))
            first = {"kind": "front", "t": float(t1.t[idx]), "violation": float(h_gap[idx])}

    n_snap = 0
    for s1, s2 in zip(t1.snapshots, t2.snapshots):
        if s1.t != s2.t:
            break
        n_snap += 1
        n_ov = min(s1.u.shape[0], s2.u.shape[0])
        for kind, a1, a2 in (("u", s1.u, s2.u), ("v", s1.v, s2.v)):
            gap = a1[:n_ov] - a2[:n_ov]
            worst = float(np.max(gap)) if gap.size else 0.0
            max_viol = max(max_viol, worst)
            if worst > tol and first is None:
                first = {"kind": kind, "t": float(s1.t), "violation": worst}

    return OrderReport(
        ordered=max_viol <= tol,
        max_violation=max_viol,
        tol=tol,
        first_violation=first,
        steps_compared=n_steps,
        snapshots_compared=n_snap,
    )
