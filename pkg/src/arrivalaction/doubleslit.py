"""Double-slit fringes from the time-reversed arrival times at the two slits.

A constant force F along the screen turns position into energy, E = F x.
Running the motion backwards from the screen, the particle reaches the
two slit positions at times that do not depend on E, so the fringes
repeat with a fixed energy period and hence a fixed spatial period.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import core
from .errors import DomainError

__all__ = ["SlitGeometry", "arrival_times", "fringe_period", "fringe_period_from_times"]


@dataclass(frozen=True)
class SlitGeometry:
    """Slit separation d, screen distance L, longitudinal momentum p0, force F."""

    d: float
    L: float
    p0: float
    F: float

    def __post_init__(self):
        for name in ("d", "L", "p0", "F"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite")


def arrival_times(g: SlitGeometry):
    """(t_+, t_-) = (+d p0 / (2 L F), -d p0 / (2 L F))."""
    t = g.d * g.p0 / (2.0 * g.L * g.F)
    return t, -t


def fringe_period(g: SlitGeometry, hbar: float = 1.0) -> float:
    """Spatial fringe period (2 pi hbar / p0)(L / d)."""
    if not hbar > 0:
        raise DomainError("hbar must be positive")
    return 2.0 * math.pi * hbar / g.p0 * (g.L / g.d)


def fringe_period_from_times(g: SlitGeometry, hbar: float = 1.0) -> float:
    """The same period via the energy modulation 2 pi hbar / (t_+ - t_-), divided by F."""
    tp, tm = arrival_times(g)
    return core.modulation_period(tm, tp, hbar) / g.F
