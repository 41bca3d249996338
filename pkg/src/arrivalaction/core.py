"""System-agnostic arrival-time action engine.

A physical system enters through its arrival branches: for an observable
value B and an energy E, each branch gives the time at which the motion
reaches B and the action whose E-derivative is that time.  From these the
engine builds probability amplitudes <b|n> as a sum over branches, switches
to an Airy profile near turning points, and solves for quantized energies.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import bisect

from .errors import DomainError, QuantizationError
from .specfun import airy_ai

__all__ = [
    "CONTINUOUS",
    "AIRY_CROSSOVER",
    "Branch",
    "BranchContribution",
    "QuantizationSpec",
    "TurningPoint",
    "Regime",
    "mixed_derivative",
    "action_time_residual",
    "van_vleck_amplitude",
    "superpose",
    "branch_amplitude",
    "quantization_interval",
    "quantized_energies",
    "modulation_period",
    "interference_probability",
    "airy_argument",
    "airy_amplitude",
    "regime_select",
]

# Airy argument at which the separated-branch and Airy forms are joined.
AIRY_CROSSOVER = 1.42


class _Continuous:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "CONTINUOUS"

    def __reduce__(self):
        return (_Continuous, ())


#: Marker for a continuous variable: its quantization interval is dropped and
#: the result is a density rather than a probability.
CONTINUOUS = _Continuous()


@dataclass(frozen=True)
class Branch:
    """One solution t_nu(B, E) of B(t; E) = B and its action S_nu(B, E).

    ``mixed_derivative`` may supply d2S/dBdE analytically; otherwise it is
    taken from a finite difference of ``arrival_time`` in B.
    """

    index: int
    arrival_time: Callable[[float, float], float]
    action: Callable[[float, float], float]
    domain: Callable[[float, float], bool]
    mixed_derivative: Optional[Callable[[float, float], float]] = None


@dataclass(frozen=True)
class BranchContribution:
    amplitude: float
    action: float

    def __post_init__(self):
        if not self.amplitude >= 0:
            raise DomainError("branch amplitude must be non-negative")


@dataclass(frozen=True)
class QuantizationSpec:
    """Quantization intervals of the generator (energy) and the observable."""

    delta_E: object = CONTINUOUS
    delta_B: object = CONTINUOUS

    def __post_init__(self):
        for name in ("delta_E", "delta_B"):
            v = getattr(self, name)
            if v is not CONTINUOUS and not v > 0:
                raise DomainError(f"{name} must be positive or CONTINUOUS")

    def factor(self, name):
        v = getattr(self, name)
        return 1.0 if v is CONTINUOUS else float(v)


@dataclass(frozen=True)
class TurningPoint:
    """Local turning-point model t = +-sqrt(gamma (E - V)) at fixed B."""

    V: float
    gamma: float
    dV_dB: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise DomainError("turning-point coefficient gamma must be positive")


class Regime(enum.Enum):
    SEPARATED_BRANCHES = "separated"
    AIRY_PATCH = "airy"


def _step(scale):
    return max(1e-6 * abs(scale), 1e-9)


def mixed_derivative(branch: Branch, B: float, E: float) -> float:
    """d2S/dBdE for a branch, analytic if registered, else centered differences of t in B."""
    if branch.mixed_derivative is not None:
        return branch.mixed_derivative(B, E)
    h = _step(B)
    return (branch.arrival_time(B + h, E) - branch.arrival_time(B - h, E)) / (2.0 * h)


def action_time_residual(branch: Branch, B: float, E: float) -> float:
    """Relative mismatch between dS/dE (centered difference) and the arrival time."""
    if not branch.domain(B, E):
        raise DomainError(f"branch {branch.index} does not exist at B={B}, E={E}")
    h = _step(E)
    dS = (branch.action(B, E + h) - branch.action(B, E - h)) / (2.0 * h)
    t = branch.arrival_time(B, E)
    return abs(dS - t) / max(abs(t), h)


def van_vleck_amplitude(d2S_dBdE: float, q: QuantizationSpec, hbar: float = 1.0) -> float:
    """Branch weight sqrt(dB_Q |d2S/dBdE| / 2 pi hbar).

    With ``q.delta_B`` CONTINUOUS the interval is dropped, giving the
    amplitude of a probability density in B.  The energy interval is not
    included here; :func:`branch_amplitude` applies it.
    """
    if not math.isfinite(d2S_dBdE):
        raise DomainError("mixed derivative must be finite")
    return math.sqrt(q.factor("delta_B") * abs(d2S_dBdE) / (2.0 * math.pi * hbar))


def superpose(contribs: Sequence[BranchContribution], hbar: float = 1.0) -> complex:
    """Sum of A_nu exp(i S_nu / hbar) over the branches."""
    if len(contribs) == 0:
        raise DomainError("need at least one branch contribution")
    total = 0j
    for c in contribs:
        total += c.amplitude * complex(math.cos(c.action / hbar), math.sin(c.action / hbar))
    return total


def branch_amplitude(branches: Sequence[Branch], B: float, E: float, q: QuantizationSpec,
                     hbar: float = 1.0) -> complex:
    """<b|n> from all branches that exist at (B, E), including the energy interval."""
    contribs = [
        BranchContribution(van_vleck_amplitude(mixed_derivative(br, B, E), q, hbar), br.action(B, E))
        for br in branches
        if br.domain(B, E)
    ]
    if not contribs:
        raise DomainError(f"no branch reaches B={B} at E={E}; use the Airy regime")
    return math.sqrt(q.factor("delta_E")) * superpose(contribs, hbar)


def quantization_interval(T: float, hbar: float = 1.0) -> float:
    """Energy-level spacing 2 pi hbar / T for motion of period T."""
    if not T > 0:
        raise DomainError("period must be positive")
    return 2.0 * math.pi * hbar / T


def quantized_energies(action_diff: Callable[[float], float], n_max: int, bracket,
                       hbar: float = 1.0, rtol: float = 1e-13, samples: int = 64) -> list:
    """Solve action_diff(E_n) = pi hbar (n + 1/2) for n = 0..n_max by bisection.

    ``action_diff`` is S_+(B2, E) - S_+(B1, E) between the two turning
    points and must increase monotonically on ``bracket``.
    """
    lo, hi = map(float, bracket)
    if not hi > lo:
        raise DomainError("bracket must satisfy E_lo < E_hi")
    grid = np.linspace(lo, hi, samples)
    vals = np.array([action_diff(e) for e in grid])
    if not np.all(np.diff(vals) > 0):
        raise QuantizationError("action difference is not monotonically increasing on the bracket")

    levels = []
    for n in range(n_max + 1):
        target = math.pi * hbar * (n + 0.5)
        f_lo, f_hi = vals[0] - target, vals[-1] - target
        if f_lo > 0 or f_hi < 0:
            raise QuantizationError(
                f"level n={n} is not bracketed: action difference spans "
                f"[{vals[0]:.6g}, {vals[-1]:.6g}], target {target:.6g}",
                level=n,
            )
        if f_lo == 0:
            levels.append(lo)
            continue
        if f_hi == 0:
            levels.append(hi)
            continue
        # narrow to the sampled cell containing the root before bisecting
        i = int(np.searchsorted(vals, target))
        a, b = grid[i - 1], grid[i]
        root = bisect(lambda e: action_diff(e) - target, a, b,
                      xtol=1e-300, rtol=max(rtol, 4 * np.finfo(float).eps), maxiter=400)
        levels.append(root)
    return levels


def modulation_period(t1: float, t2: float, hbar: float = 1.0) -> float:
    """Energy period 2 pi hbar / |t2 - t1| of two-branch interference fringes."""
    dt = abs(t2 - t1)
    if dt == 0:
        raise DomainError("arrival times coincide; the branches have merged (Airy regime)")
    return 2.0 * math.pi * hbar / dt


def interference_probability(A: float, S1: float, S2: float, delta_E: float,
                             hbar: float = 1.0) -> float:
    """Two equal-weight branches: 2 dE_Q A^2 (1 + cos((S2 - S1)/hbar))."""
    if A < 0:
        raise DomainError("amplitude must be non-negative")
    return 2.0 * delta_E * A * A * (1.0 + math.cos((S2 - S1) / hbar))


def airy_argument(E: float, tp: TurningPoint, hbar: float = 1.0) -> float:
    return -((tp.gamma / hbar ** 2) ** (1.0 / 3.0)) * (E - tp.V)


def airy_amplitude(E: float, tp: TurningPoint, q: QuantizationSpec, hbar: float = 1.0) -> float:
    """Turning-point amplitude sqrt(rho_N) Ai(-(gamma/hbar^2)^(1/3) (E - V))."""
    scale = (tp.gamma / hbar ** 2) ** (1.0 / 3.0)
    rho = q.factor("delta_E") * q.factor("delta_B") * scale ** 2 * abs(tp.dV_dB)
    return math.sqrt(rho) * airy_ai(-scale * (E - tp.V))


def regime_select(E: float, tp: TurningPoint, hbar: float = 1.0) -> Regime:
    """Airy patch strictly below V + 1.42 (hbar^2/gamma)^(1/3), separated branches otherwise."""
    threshold = tp.V + AIRY_CROSSOVER * (hbar ** 2 / tp.gamma) ** (1.0 / 3.0)
    return Regime.AIRY_PATCH if E < threshold else Regime.SEPARATED_BRANCHES
