"""Checkers for the standing hypotheses on kernels and reactions.

Each checker returns a clause-by-clause report with measured residuals so a
failing configuration can name the exact clause it violates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import HypothesisViolated
from .kernels import KernelSpec
from .reactions import ReactionPair

QTOL = 1e-8

# Geometric scan for the saturation clause G(H(z)/a) < b z: powers of two
# times a unit reference value.  Boundedness of G makes a witness inevitable
# once z exceeds sup(G)/b.
ZHAT_SCAN_EXPONENTS = range(0, 21)


@dataclass(frozen=True)
class ClauseCheck:
    name: str
    passed: bool
    residual: float
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    subject: str
    clauses: tuple[ClauseCheck, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def failing_clauses(self) -> list[str]:
        return [c.name for c in self.clauses if not c.passed]

    def raise_if_failed(self) -> None:
        bad = self.failing_clauses()
        if bad:
            raise HypothesisViolated(bad[0], f"{self.subject}: failing clauses {bad}")

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "clauses": [
                {"name": c.name, "passed": c.passed, "residual": c.residual, "detail": c.detail}
                for c in self.clauses
            ],
        }


def validate_kernel(kernel: KernelSpec, qtol: float = QTOL, n_samples: int = 2001) -> ValidationReport:
    """Check evenness, positivity at 0, nonnegativity, unit mass and tail identities.

    Unit mass is measured by adaptive quadrature of the density, independently
    of the analytic normalization baked into each family.
    """
    R = kernel.support_radius
    xs = np.linspace(0.0, R, n_samples)
    clauses = []

    even_res = float(np.max(np.abs(kernel.eval(xs) - kernel.eval(-xs))))
    clauses.append(ClauseCheck("even", even_res <= qtol, even_res))

    peak = float(kernel.eval(0.0))
    clauses.append(ClauseCheck("positive_at_zero", peak > 0.0, -peak, f"J(0)={peak:.6g}"))

    min_val = float(np.min(kernel.eval(np.linspace(-R, R, n_samples))))
    clauses.append(ClauseCheck("nonnegative", min_val >= 0.0, max(0.0, -min_val)))

    # break the quadrature at the origin: the triangle density has a kink there
    mass, _ = quad(kernel.eval, -R, R, limit=400, points=[0.0], epsabs=1e-12)
    mass_res = abs(mass - 1.0)
    clauses.append(ClauseCheck("unit_mass", mass_res <= qtol, mass_res, f"integral={mass:.17g}"))

    half_res = abs(kernel.tail(0.0) - 0.5)
    clauses.append(ClauseCheck("tail_half_at_zero", half_res <= qtol, half_res))

    s_grid = np.linspace(-1.5 * R, 1.5 * R, n_samples)
    tails = kernel.tail(s_grid)
    worst_increase = float(np.max(np.diff(tails)))
    clauses.append(ClauseCheck("tail_nonincreasing", worst_increase <= qtol, max(0.0, worst_increase)))

    sym_res = float(np.max(np.abs(tails + kernel.tail(-s_grid) - 1.0)))
    clauses.append(ClauseCheck("tail_symmetry", sym_res <= qtol, sym_res))

    # Closed-form tail must agree with quadrature of the density.
    probe = [0.25 * R, 0.5 * R, 0.75 * R]
    tail_res = max(
        abs(quad(kernel.eval, s, R, limit=400, epsabs=1e-12)[0] - kernel.tail(s)) for s in probe
    )
    clauses.append(ClauseCheck("tail_matches_density", tail_res <= qtol, tail_res))

    return ValidationReport(subject=f"kernel:{kernel.family}", clauses=tuple(clauses))


def validate_reactions(
    reactions: ReactionPair,
    a: float,
    b: float,
    z_max: float = 10.0,
    n_samples: int = 512,
) -> ValidationReport:
    """Check the reaction clauses against the given decay rates ``a`` and ``b``.

    Monotonicity and concavity are checked on a sampled grid; the saturation
    clause is a geometric scan whose witness value is reported.
    """
    clauses = []

    origin_res = max(abs(reactions.H(0.0)), abs(reactions.G(0.0)))
    clauses.append(ClauseCheck("origin", origin_res == 0.0, origin_res))

    zs = np.linspace(0.0, z_max, n_samples)
    min_slope = float(min(np.min(reactions.dH(zs)), np.min(reactions.dG(zs))))
    clauses.append(ClauseCheck("increasing", min_slope > 0.0, max(0.0, -min_slope), f"min slope {min_slope:.6g}"))

    zs_pos = zs[1:]
    max_curv = float(max(np.max(reactions.d2H(zs_pos)), np.max(reactions.d2G(zs_pos))))
    clauses.append(ClauseCheck("concave", max_curv < 0.0, max(0.0, max_curv), f"max curvature {max_curv:.6g}"))

    witness = None
    for k in ZHAT_SCAN_EXPONENTS:
        z = float(2**k)
        if reactions.G(reactions.H(z) / a) < b * z:
            witness = z
            break
    clauses.append(
        ClauseCheck(
            "saturation",
            witness is not None,
            0.0 if witness is not None else float("inf"),
            f"witness z={witness}" if witness is not None else "no witness in scan",
        )
    )

    return ValidationReport(subject="reactions:monod", clauses=tuple(clauses))
