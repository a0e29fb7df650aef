"""Saturating (Monod) reaction pair coupling the two densities.

H feeds the first component from the second, G the second from the first:
H(v) = p v / (1 + q v),  G(u) = r u / (1 + s u).  Both are smooth, vanish at
zero, are strictly increasing and strictly concave, and are bounded, which
makes the coupled positive equilibrium computable by 1-D bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IllegalParams

MONOD = "monod"


def _check_positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise IllegalParams(f"reaction parameter {name} must be a positive finite real, got {value!r}")


@dataclass(frozen=True)
class ReactionPair:
    """Monod nonlinearities with closed-form first and second derivatives."""

    p: float
    q: float
    r: float
    s: float
    family: str = MONOD

    def __post_init__(self):
        if self.family != MONOD:
            raise IllegalParams(f"unknown reaction family {self.family!r}")
        for name in ("p", "q", "r", "s"):
            _check_positive(name, getattr(self, name))

    def H(self, v):
        v = np.asarray(v, dtype=float)
        out = self.p * v / (1.0 + self.q * v)
        return out if out.ndim else float(out)

    def G(self, u):
        u = np.asarray(u, dtype=float)
        out = self.r * u / (1.0 + self.s * u)
        return out if out.ndim else float(out)

    def dH(self, v):
        v = np.asarray(v, dtype=float)
        out = self.p / np.square(1.0 + self.q * v)
        return out if out.ndim else float(out)

    def dG(self, u):
        u = np.asarray(u, dtype=float)
        out = self.r / np.square(1.0 + self.s * u)
        return out if out.ndim else float(out)

    def d2H(self, v):
        v = np.asarray(v, dtype=float)
        out = -2.0 * self.p * self.q / (1.0 + self.q * v) ** 3
        return out if out.ndim else float(out)

    def d2G(self, u):
        u = np.asarray(u, dtype=float)
        out = -2.0 * self.r * self.s / (1.0 + self.s * u) ** 3
        return out if out.ndim else float(out)

    @property
    def H_sup(self) -> float:
        """Supremum of H (approached as v -> infinity)."""
        return self.p / self.q

    @property
    def G_sup(self) -> float:
        return self.r / self.s

    def to_dict(self) -> dict:
        return {"family": self.family, "p": self.p, "q": self.q, "r": self.r, "s": self.s}

    @classmethod
    def from_dict(cls, d: dict) -> "ReactionPair":
        return cls(family=d.get("family", MONOD), p=d["p"], q=d["q"], r=d["r"], s=d["s"])
