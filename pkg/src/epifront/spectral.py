"""Principal eigenvalue of the linearized cooperative dispersal operator.

The operator on [0, l] acts on two-component profiles as
    L[phi]_1 = d1 K1*phi1 - (d1 + a) phi1 + H'(0) phi2
    L[phi]_2 = d2 K2*phi2 + G'(0) phi1 - (d2 + b) phi2
with Ki* the truncated kernel convolution.  Discretized on a uniform grid
fitted to [0, l] (n = round(l/dx) + 1 nodes), the shifted matrix is
nonnegative and primitive, so power iteration from a positive start converges
to the Perron pair.  The subdominant gap closes like 1/l^2, so for long
domains the solver switches to Lanczos on a symmetrized similarity transform
of the same matrix; both paths are checked against each other in the tests.

The eigenvalue is strictly increasing in l and runs from gamma_B (l -> 0) to
gamma_A (l -> infinity); when gamma_B < 0 < gamma_A the unique zero crossing
l* is located by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from .config import ModelConfig
from .diagnostics import scalar_diagnostics
from .errors import BracketFailure, DomainExceedsGrid, NoConvergence
from .grid import NonlocalOperator, trapezoid_weights
from .kernels import KernelSpec

# Above this many nodes per component, power iteration's geometric rate
# (1 - O(1/l^2) after shifting) makes eig_tol unreachable; go straight to Lanczos.
LANCZOS_NODE_THRESHOLD = 1200
_RATE_CHECK_EVERY = 250
_RATE_CHECK_START = 500


def fitted_nodes(l: float, dx_target: float, origin: float = 0.0) -> tuple[np.ndarray, float]:
    """Uniform nodes covering [origin, origin + l] with spacing closest to dx_target.

    Fitting the grid to the interval (instead of snapping l to a fixed
    lattice) makes the discrete eigenvalue vary continuously with l, which the
    critical-length bisection relies on.
    """
    n = max(2, int(round(l / dx_target)) + 1)
    dx = l / (n - 1)
    return origin + np.arange(n) * dx, dx


@dataclass
class EigenResult:
    lambda_p: float
    phi1: np.ndarray
    phi2: np.ndarray
    iterations: int
    residual: float
    l: float
    dx: float
    x: np.ndarray
    method: str = "power"


class CooperativeOperator:
    """Matrix-free action of the linearized operator on a fitted grid."""

    def __init__(self, cfg: ModelConfig, l: float, origin: float = 0.0):
        self.cfg = cfg
        self.l = l
        self.x, self.dx = fitted_nodes(l, cfg.dx, origin)
        self.n = self.x.shape[0]
        self.op1 = NonlocalOperator(cfg.kernel1, self.dx, cfg.numerics.fft_threshold)
        self.op2 = NonlocalOperator(cfg.kernel2, self.dx, cfg.numerics.fft_threshold)
        self.hp0 = cfg.reactions.dH(0.0)
        self.gp0 = cfg.reactions.dG(0.0)
        self.c11 = -(cfg.d1 + cfg.a)
        self.c22 = -(cfg.d2 + cfg.b)
        self.tau = trapezoid_weights(self.n)

    @property
    def shift(self) -> float:
        """Shift making the discrete operator entrywise nonnegative."""
        return max(self.cfg.d1 + self.cfg.a, self.cfg.d2 + self.cfg.b) + 1.0

    def apply(self, phi1: np.ndarray, phi2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        fw1 = self.op1.convolve(self.tau * phi1)
        fw2 = self.op2.convolve(self.tau * phi2)
        out1 = self.cfg.d1 * fw1 + self.c11 * phi1 + self.hp0 * phi2
        out2 = self.cfg.d2 * fw2 + self.gp0 * phi1 + self.c22 * phi2
        return out1, out2

    def apply_flat(self, phi: np.ndarray) -> np.ndarray:
        out1, out2 = self.apply(phi[: self.n], phi[self.n :])
        return np.concatenate([out1, out2])

    def as_dense(self) -> np.ndarray:
        """Dense matrix by application to unit vectors (small grids only)."""
        m = 2 * self.n
        out = np.empty((m, m))
        for j in range(m):
            e = np.zeros(m)
            e[j] = 1.0
            out[:, j] = self.apply_flat(e)
        return out

    def sym_matvec_factory(self):
        """Matvec of the symmetrized similarity transform, plus back-transform.

        diag(sqrt(tau)) symmetrizes the trapezoid column weights and a
        component rescaling by sqrt(H'(0)/G'(0)) symmetrizes the coupling, so
        the transform has the same spectrum with orthogonal eigenvectors.
        """
        sq = np.sqrt(self.tau)
        comp = math.sqrt(self.hp0 / self.gp0)
        coupling = math.sqrt(self.hp0 * self.gp0)
        d1, d2 = self.cfg.d1, self.cfg.d2
        c11, c22 = self.c11, self.c22
        op1, op2 = self.op1, self.op2
        n = self.n

        def matvec(psi: np.ndarray) -> np.ndarray:
            p1 = psi[:n]
            p2 = psi[n:]
            out1 = d1 * sq * op1.convolve(sq * p1) + c11 * p1 + coupling * p2
            out2 = d2 * sq * op2.convolve(sq * p2) + coupling * p1 + c22 * p2
            return np.concatenate([out1, out2])

        def back_transform(psi: np.ndarray) -> np.ndarray:
            phi1 = comp * psi[:n] / sq
            phi2 = psi[n:] / sq
            return np.concatenate([phi1, phi2])

        return matvec, back_transform


def assemble_operator(cfg: ModelConfig, l: float, origin: float = 0.0, L_cap: Optional[float] = None) -> CooperativeOperator:
    cap = cfg.L_max if L_cap is None else L_cap
    if l > cap * (1.0 + 1e-12):
        raise DomainExceedsGrid(f"domain length {l:.6g} exceeds cap {cap:.6g}")
    if l <= 0:
        raise ValueError("domain length must be positive")
    return CooperativeOperator(cfg, l, origin)


def _finalize(op: CooperativeOperator, lam: float, phi: np.ndarray, iterations: int, method: str) -> EigenResult:
    peak = np.max(np.abs(phi))
    phi = phi / peak
    if phi[int(np.argmax(np.abs(phi)))] < 0:
        phi = -phi
    resid = float(np.max(np.abs(op.apply_flat(phi) - lam * phi)))
    return EigenResult(
        lambda_p=float(lam),
        phi1=phi[: op.n].copy(),
        phi2=phi[op.n :].copy(),
        iterations=iterations,
        residual=resid,
        l=op.l,
        dx=op.dx,
        x=op.x.copy(),
        method=method,
    )


def _power_iteration(op: CooperativeOperator, cfg: ModelConfig, start: Optional[np.ndarray], allow_switch: bool):
    sigma = op.shift
    eig_tol = cfg.numerics.eig_tol
    max_iter = cfg.numerics.eig_max_iter
    phi = np.ones(2 * op.n) if start is None else np.asarray(start, dtype=float).copy()
    phi /= np.max(np.abs(phi))
    res_marks: list[tuple[int, float]] = []
    for it in range(1, max_iter + 1):
        y = op.apply_flat(phi) + sigma * phi
        rho = float(np.dot(phi, y) / np.dot(phi, phi))
        res = float(np.max(np.abs(y - rho * phi)))
        if res <= eig_tol:
            return _finalize(op, rho - sigma, phi, it, "power")
        if allow_switch and it >= _RATE_CHECK_START and it % _RATE_CHECK_EVERY == 0:
            res_marks.append((it, res))
            if len(res_marks) >= 2:
                (it0, r0), (it1, r1) = res_marks[-2], res_marks[-1]
                if r1 > 0 and r0 > 0 and r1 < r0:
                    rate = (r1 / r0) ** (1.0 / (it1 - it0))
                    projected = it1 + math.log(eig_tol / r1) / math.log(rate) if rate < 1.0 else math.inf
                else:
                    projected = math.inf
                if projected > max_iter:
                    return None
        phi = y / np.max(np.abs(y))
    if allow_switch:
        return None
    raise NoConvergence(f"power iteration: residual {res:.3e} above {eig_tol:.1e} after {max_iter} iterations")


def _lanczos(op: CooperativeOperator, cfg: ModelConfig) -> EigenResult:
    matvec, back = op.sym_matvec_factory()
    count = {"n": 0}

    def counted(psi):
        count["n"] += 1
        return matvec(psi)

    m = 2 * op.n
    lin = LinearOperator((m, m), matvec=counted, dtype=float)
    v0 = np.ones(m)
    last_exc: Exception | None = None
    for ncv in (min(m, 64), min(m, 256)):
        try:
            vals, vecs = eigsh(lin, k=1, which="LA", v0=v0, ncv=ncv, tol=1e-14, maxiter=200 * m)
        except ArpackNoConvergence as exc:
            last_exc = exc
            continue
        result = _finalize(op, vals[0], back(vecs[:, 0]), count["n"], "lanczos")
        if result.residual <= cfg.numerics.eig_tol:
            return result
        last_exc = NoConvergence(f"lanczos residual {result.residual:.3e} above tolerance")
    raise NoConvergence(f"lanczos failed to reach eig_tol: {last_exc}")


def principal_eigen(
    cfg: ModelConfig,
    l: float,
    origin: float = 0.0,
    method: str = "auto",
    start: Optional[np.ndarray] = None,
    L_cap: Optional[float] = None,
) -> EigenResult:
    """Principal eigenvalue and positive eigenfunction on [origin, origin + l].

    The eigenfunction is normalized to sup-norm one; the result's residual is
    measured on the original (unsymmetrized) operator.  Deterministic start
    vector (1, 1) unless one is supplied.
    """
    op = assemble_operator(cfg, l, origin=origin, L_cap=L_cap)
    if method == "power":
        return _power_iteration(op, cfg, start, allow_switch=False)
    if method == "lanczos":
        return _lanczos(op, cfg)
    if method != "auto":
        raise ValueError(f"unknown eigen method {method!r}")
    if op.n >= LANCZOS_NODE_THRESHOLD:
        return _lanczos(op, cfg)
    result = _power_iteration(op, cfg, start, allow_switch=True)
    if result is None:
        result = _lanczos(op, cfg)
    return result


@dataclass
class CriticalLengthResult:
    lstar: Optional[float]
    applicable: bool
    reason: Optional[str] = None
    trace: list = field(default_factory=list)


def critical_length(cfg: ModelConfig, lam_tol: float = 1e-6) -> CriticalLengthResult:
    """Unique domain length with vanishing principal eigenvalue.

    Exists exactly when Rstar < 1 < R0 (gamma_B < 0 < gamma_A); outside that
    window the eigenvalue has one sign for every length and the result is
    marked not applicable.  Bisection runs until |lambda_p| <= lam_tol.
    """
    diag = scalar_diagnostics(cfg)
    if diag.R0 <= 1.0:
        return CriticalLengthResult(None, False, reason="R0 <= 1: lambda_p < 0 for all lengths")
    if diag.Rstar >= 1.0:
        return CriticalLengthResult(None, False, reason="Rstar >= 1: lambda_p > 0 for all lengths")

    trace: list[tuple[float, float]] = []

    def lam(l: float, cap: float) -> float:
        value = principal_eigen(cfg, l, L_cap=cap).lambda_p
        trace.append((l, value))
        return value

    cap = cfg.L_max
    lo, hi = cfg.dx, cap
    lam_lo = lam(lo, cap)
    if lam_lo >= 0.0:
        if abs(lam_lo) <= lam_tol:
            return CriticalLengthResult(lo, True, trace=trace)
        raise BracketFailure("lambda_p already positive at one grid spacing; refine dx")
    lam_hi = lam(hi, cap)
    if lam_hi < 0.0:
        # One enlargement before giving up: the crossing can exceed the default window.
        cap = 2.0 * cap
        hi = cap
        lam_hi = lam(hi, cap)
        if lam_hi < 0.0:
            raise BracketFailure(f"lambda_p still negative at L_max={hi:.6g}; enlarge the grid")

    while hi - lo > 1e-13 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        lam_mid = lam(mid, cap)
        if abs(lam_mid) <= lam_tol:
            return CriticalLengthResult(mid, True, trace=trace)
        if lam_mid > 0.0:
            hi = mid
        else:
            lo = mid
    raise BracketFailure("bisection bracket collapsed without meeting the eigenvalue tolerance")


def tent_inequality_check(kernel: KernelSpec, eps: float, l: float, dx_target: Optional[float] = None) -> bool:
    """Check the tent-function lower bound for the kernel on [-l, l].

    Verifies int J(x-y) xi(y) dy >= (1-eps) xi(x) with xi(x) = l - |x| at
    every grid node under trapezoid quadrature.
    """
    if not (0.0 < eps < 1.0):
        raise ValueError("eps must lie in (0, 1)")
    dx_target = 0.05 * kernel.support_radius if dx_target is None else dx_target
    half = max(1, int(round(l / dx_target)))
    x = np.linspace(-l, l, 2 * half + 1)
    dx = x[1] - x[0]
    xi = l - np.abs(x)
    op = NonlocalOperator(kernel, dx)
    lhs = op.apply(xi)
    return bool(np.all(lhs >= (1.0 - eps) * xi - 1e-12))
