"""Model configuration: parameters, initial data, numerics controls.

A ``ModelConfig`` is pure data; ``validate`` runs the hypothesis checkers and
returns their reports, raising when a clause fails.  Numerics defaults are
resolved lazily so a config file only needs the physics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .diagnostics import ScalarDiagnostics, scalar_diagnostics
from .errors import IllegalParams, ParseError, ValidationError
from .kernels import KernelSpec
from .reactions import ReactionPair
from .validation import ValidationReport, validate_kernel, validate_reactions

SCALED_BUMP = "scaled_bump"
CONSTANT = "constant"


@dataclass(frozen=True)
class InitialProfile:
    """Initial density shape on [0, scale]; the bump vanishes at the endpoint."""

    shape: str = SCALED_BUMP
    amplitude: Optional[float] = None  # None: amplitude set from the equilibrium scale

    def __post_init__(self):
        if self.shape not in (SCALED_BUMP, CONSTANT):
            raise IllegalParams(f"unknown initial profile shape {self.shape!r}")
        if self.amplitude is not None and not (math.isfinite(self.amplitude) and self.amplitude > 0):
            raise IllegalParams("initial profile amplitude must be positive")

    def sample(self, x: np.ndarray, scale: float, amplitude: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.shape == CONSTANT:
            return np.full_like(x, amplitude)
        return amplitude * np.maximum(0.0, 1.0 - np.square(x / scale))

    def to_dict(self) -> dict:
        return {"shape": self.shape, "amplitude": self.amplitude}

    @classmethod
    def from_dict(cls, d: dict) -> "InitialProfile":
        return cls(shape=d.get("shape", SCALED_BUMP), amplitude=d.get("amplitude"))


@dataclass(frozen=True)
class NumericsConfig:
    """Discretization and tolerance controls; None fields resolve to defaults."""

    dx: Optional[float] = None          # default: 0.05 * smallest kernel support radius
    dt: Optional[float] = None          # default: explicit-Euler stability bound
    L_max: Optional[float] = None       # default: max(40, 4 h0)
    eig_tol: float = 1e-10
    eig_max_iter: int = 100_000
    ss_tol: float = 1e-10
    ss_max_iter: int = 200_000
    vanish_tol: float = 1e-6
    front_stall_tol: float = 1e-8
    stagnation_window: int = 100
    snapshot_every: int = 50
    fft_threshold: int = 1_000_000
    qtol: float = 1e-8

    def to_dict(self) -> dict:
        return {
            "dx": self.dx,
            "dt": self.dt,
            "L_max": self.L_max,
            "eig_tol": self.eig_tol,
            "eig_max_iter": self.eig_max_iter,
            "ss_tol": self.ss_tol,
            "ss_max_iter": self.ss_max_iter,
            "vanish_tol": self.vanish_tol,
            "front_stall_tol": self.front_stall_tol,
            "stagnation_window": self.stagnation_window,
            "snapshot_every": self.snapshot_every,
            "fft_threshold": self.fft_threshold,
            "qtol": self.qtol,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NumericsConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ParseError(f"unknown numerics keys: {sorted(unknown)}")
        return cls(**d)


@dataclass(frozen=True)
class ModelConfig:
    d1: float
    d2: float
    a: float
    b: float
    mu1: float
    mu2: float
    h0: float
    kernel1: KernelSpec
    kernel2: KernelSpec
    reactions: ReactionPair
    init_u: InitialProfile = field(default_factory=InitialProfile)
    init_v: InitialProfile = field(default_factory=InitialProfile)
    numerics: NumericsConfig = field(default_factory=NumericsConfig)

    def __post_init__(self):
        for name in ("d1", "d2", "a", "b", "h0"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise IllegalParams(f"{name} must be a positive finite real, got {v!r}")
        for name in ("mu1", "mu2"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0):
                raise IllegalParams(f"{name} must be a nonnegative finite real, got {v!r}")

    # -- resolved numerics -------------------------------------------------

    @property
    def dx(self) -> float:
        if self.numerics.dx is not None:
            return self.numerics.dx
        return 0.05 * min(self.kernel1.support_radius, self.kernel2.support_radius)

    @property
    def dt_stab(self) -> float:
        """Stability bound keeping the explicit step monotone."""
        hp0 = self.reactions.dH(0.0)
        gp0 = self.reactions.dG(0.0)
        return 0.9 / (max(self.d1 + self.a, self.d2 + self.b) + max(hp0, gp0))

    @property
    def dt(self) -> float:
        return self.numerics.dt if self.numerics.dt is not None else self.dt_stab

    @property
    def L_max(self) -> float:
        if self.numerics.L_max is not None:
            return self.numerics.L_max
        return max(40.0, 4.0 * self.h0)

    # -- validation and diagnostics ----------------------------------------

    def validation_reports(self) -> list[ValidationReport]:
        return [
            validate_kernel(self.kernel1, qtol=self.numerics.qtol),
            validate_kernel(self.kernel2, qtol=self.numerics.qtol),
            validate_reactions(self.reactions, self.a, self.b),
        ]

    def validate(self) -> list[ValidationReport]:
        """Run all hypothesis checks; raise ValidationError naming the first failing clause."""
        reports = self.validation_reports()
        for rep in reports:
            if not rep.passed:
                clause = rep.failing_clauses()[0]
                raise ValidationError(f"{rep.subject} violates clause {clause!r}", clause=clause)
        if self.dt > self.dt_stab * (1.0 + 1e-12):
            raise ValidationError(
                f"dt={self.dt:.6g} exceeds the stability bound {self.dt_stab:.6g}", clause="dt_stability"
            )
        if self.h0 >= self.L_max:
            raise ValidationError("h0 must be below L_max", clause="grid_extent")
        return reports

    def diagnostics(self) -> ScalarDiagnostics:
        return scalar_diagnostics(self)

    def initial_amplitudes(self) -> tuple[float, float]:
        """Default bump amplitudes: half the equilibrium when it exists, else 0.5."""
        amp_u = self.init_u.amplitude
        amp_v = self.init_v.amplitude
        if amp_u is None or amp_v is None:
            diag = self.diagnostics()
            if diag.ustar is not None:
                default_u, default_v = 0.5 * diag.ustar, 0.5 * diag.vstar
            else:
                default_u = default_v = 0.5
            amp_u = default_u if amp_u is None else amp_u
            amp_v = default_v if amp_v is None else amp_v
        return amp_u, amp_v

    def initial_profiles(self, x: np.ndarray, scale: Optional[float] = None) -> tuple[np.ndarray, np.ndarray]:
        scale = self.h0 if scale is None else scale
        amp_u, amp_v = self.initial_amplitudes()
        return self.init_u.sample(x, scale, amp_u), self.init_v.sample(x, scale, amp_v)

    def with_mu(self, mu1: float, mu2: float) -> "ModelConfig":
        return replace(self, mu1=mu1, mu2=mu2)

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "d1": self.d1,
            "d2": self.d2,
            "a": self.a,
            "b": self.b,
            "mu1": self.mu1,
            "mu2": self.mu2,
            "h0": self.h0,
            "kernel1": self.kernel1.to_dict(),
            "kernel2": self.kernel2.to_dict(),
            "reactions": self.reactions.to_dict(),
            "init_u": self.init_u.to_dict(),
            "init_v": self.init_v.to_dict(),
            "numerics": self.numerics.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelConfig":
        required = {"d1", "d2", "a", "b", "mu1", "mu2", "h0", "kernel1", "kernel2", "reactions"}
        optional = {"init_u", "init_v", "numerics"}
        if not isinstance(d, dict):
            raise ParseError("config root must be a JSON object")
        missing = required - set(d)
        if missing:
            raise ParseError(f"missing config keys: {sorted(missing)}")
        unknown = set(d) - required - optional
        if unknown:
            raise ParseError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(
                d1=d["d1"],
                d2=d["d2"],
                a=d["a"],
                b=d["b"],
                mu1=d["mu1"],
                mu2=d["mu2"],
                h0=d["h0"],
                kernel1=KernelSpec.from_dict(d["kernel1"]),
                kernel2=KernelSpec.from_dict(d["kernel2"]),
                reactions=ReactionPair.from_dict(d["reactions"]),
                init_u=InitialProfile.from_dict(d.get("init_u", {})),
                init_v=InitialProfile.from_dict(d.get("init_v", {})),
                numerics=NumericsConfig.from_dict(d.get("numerics", {})),
            )
        except KeyError as exc:
            raise ParseError(f"missing config field: {exc}") from exc
        except IllegalParams as exc:
            raise ValidationError(str(exc), clause="params_positive") from exc
