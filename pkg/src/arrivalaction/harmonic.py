"""Harmonic oscillator built from its arrival times x(t; E) = sqrt(2E/k) cos(wt).

Default units are hbar = omega = 1 and k = 2, the quadrature normalization
of quantum optics in which x is measured in units of sqrt(2 hbar omega / k).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import core
from .core import CONTINUOUS, QuantizationSpec, Regime, TurningPoint
from .errors import DomainError

__all__ = [
    "OscillatorConfig",
    "DEFAULT_CONFIG",
    "HOPoint",
    "period",
    "turning_point",
    "arrival_time",
    "action_plus",
    "branches",
    "action_difference",
    "energy_levels",
    "energy_level",
    "turning_point_model",
    "wavefunction_regime",
    "wavefunction",
    "photon_probability",
    "small_x_parity_probability",
    "first_even_minimum_energy",
    "estimate_x_from_minimum",
    "momentum_from_action",
    "momentum_from_energy_relation",
]


@dataclass(frozen=True)
class OscillatorConfig:
    k: float = 2.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.k > 0 and self.omega > 0 and self.hbar > 0):
            raise DomainError("k, omega and hbar must all be positive")

    @property
    def quantum(self):
        return self.hbar * self.omega

    @property
    def is_default_units(self):
        return (self.k, self.omega, self.hbar) == (2.0, 1.0, 1.0)


DEFAULT_CONFIG = OscillatorConfig()


@dataclass(frozen=True)
class HOPoint:
    x: float
    E: float

    def allowed(self, cfg: OscillatorConfig) -> bool:
        return self.E > 0.5 * cfg.k * self.x ** 2


def period(cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    return 2.0 * math.pi / cfg.omega


def turning_point(E: float, cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    """Classical turning point sqrt(2E/k)."""
    return math.sqrt(2.0 * E / cfg.k)


def _cos_phase(p: HOPoint, cfg):
    # x sqrt(k / 2E), i.e. cos(omega t) at the arrival
    # a relative slack of a few ulps admits points computed as the turning point
    if p.E <= 0 or p.E < 0.5 * cfg.k * p.x ** 2 * (1.0 - 1e-12):
        raise DomainError(
            f"x={p.x} is classically forbidden at E={p.E}; use the Airy turning-point regime"
        )
    u = p.x * math.sqrt(cfg.k / (2.0 * p.E))
    return min(1.0, max(-1.0, u))


def arrival_time(p: HOPoint, sign: int = 1, n_cycle: int = 0,
                 cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    """Arrival time +-(1/w) arccos(x sqrt(k/2E)) + n_cycle T.

    For x < 0 this equals the x > 0 time reflected through t -> T/2 - t.
    """
    u = _cos_phase(p, cfg)
    return sign * math.acos(u) / cfg.omega + n_cycle * period(cfg)


def action_plus(p: HOPoint, cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    """S_+(x, E); the other branch has S_- = -S_+.

    The integration constant puts S_+ - S_- = -pi hbar / 2 at the turning
    point x = +sqrt(2E/k).  For x < 0 the arccos runs past pi/2, which is
    the same as evaluating at |x| and reflecting the arrival time.
    """
    return _action(_cos_phase(p, cfg), p.x, p.E, cfg)


def _action(u, x, E, cfg):
    root = math.sqrt(max(0.0, cfg.k / (2.0 * cfg.omega ** 2) * (E - 0.5 * cfg.k * x * x)))
    return E / cfg.omega * math.acos(u) - x * root - 0.25 * math.pi * cfg.hbar


def branches(cfg: OscillatorConfig = DEFAULT_CONFIG):
    """The two arrival branches within one cycle, as engine :class:`core.Branch` objects."""

    def domain(x, E):
        return E > 0.5 * cfg.k * x * x

    def mixed(sign):
        # d t / d x
        def f(x, E):
            return -sign * math.sqrt(cfg.k) / (cfg.omega * math.sqrt(2.0 * E - cfg.k * x * x))
        return f

    plus = core.Branch(
        index=0,
        arrival_time=lambda x, E: arrival_time(HOPoint(x, E), +1, 0, cfg),
        action=lambda x, E: action_plus(HOPoint(x, E), cfg),
        domain=domain,
        mixed_derivative=mixed(+1),
    )
    minus = core.Branch(
        index=1,
        arrival_time=lambda x, E: arrival_time(HOPoint(x, E), -1, 0, cfg),
        action=lambda x, E: -action_plus(HOPoint(x, E), cfg),
        domain=domain,
        mixed_derivative=mixed(-1),
    )
    return plus, minus


def action_difference(E: float, cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    """S_+ accumulated between the turning points, pi E / w."""
    # At the turning points cos(wt) = -1, +1 and the x*sqrt(...) term vanishes.
    # Both are imposed exactly: acos and the square root lose sqrt(eps) there.
    return E / cfg.omega * (math.acos(-1.0) - math.acos(1.0))


@lru_cache(maxsize=64)
def _levels(cfg: OscillatorConfig, n_max: int):
    hw = cfg.quantum
    bracket = (1e-3 * hw, (n_max + 2.0) * hw)
    return tuple(core.quantized_energies(lambda E: action_difference(E, cfg), n_max, bracket, cfg.hbar))


def energy_levels(n_max: int, cfg: OscillatorConfig = DEFAULT_CONFIG) -> list:
    """E_0..E_{n_max} from the turning-point quantization condition."""
    # solve in blocks of 64 so that neighbouring calls share the cache
    block = 64 * (n_max // 64 + 1) - 1
    return list(_levels(cfg, block)[: n_max + 1])


def energy_level(n: int, cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    if n < 0:
        raise DomainError("quantum number must be non-negative")
    return energy_levels(n, cfg)[n]


def turning_point_model(x: float, cfg: OscillatorConfig = DEFAULT_CONFIG) -> TurningPoint:
    """V = k x^2 / 2 and gamma = 2 / (w^2 k x^2) at position x != 0."""
    if x == 0:
        raise DomainError("no turning point at x = 0")
    return TurningPoint(V=0.5 * cfg.k * x * x, gamma=2.0 / (cfg.omega ** 2 * cfg.k * x * x),
                        dV_dB=cfg.k * x)


def wavefunction_regime(n: int, x: float, cfg: OscillatorConfig = DEFAULT_CONFIG) -> Regime:
    if x == 0:
        return Regime.SEPARATED_BRANCHES
    return core.regime_select(energy_level(n, cfg), turning_point_model(x, cfg), cfg.hbar)


def _wavefunction_scalar(n, x, cfg):
    E = energy_level(n, cfg)
    ax = abs(x)
    if n % 2 and ax == 0.0:
        return 0.0
    if wavefunction_regime(n, ax, cfg) is Regime.SEPARATED_BRANCHES:
        amp = math.sqrt(2.0 / math.pi * math.sqrt(cfg.k / (2.0 * E - cfg.k * ax * ax)))
        val = amp * math.cos(action_plus(HOPoint(ax, E), cfg) / cfg.hbar)
    else:
        q = QuantizationSpec(delta_E=cfg.quantum, delta_B=CONTINUOUS)
        val = core.airy_amplitude(E, turning_point_model(ax, cfg), q, cfg.hbar)
    if x < 0 and n % 2:
        val = -val
    return val


def wavefunction(n: int, x, cfg: OscillatorConfig = DEFAULT_CONFIG):
    """Semiclassical <x|n> at the quantized energy E_n.

    Two interfering arrival branches where the Airy argument is below
    -1.42, the Airy turning-point profile elsewhere.  Negative x takes the
    value at |x| with a sign flip for odd n.  Array input is evaluated
    pointwise.
    """
    if n < 0:
        raise DomainError("quantum number must be non-negative")
    if np.ndim(x):
        xs = np.asarray(x, dtype=float)
        return np.array([_wavefunction_scalar(n, float(v), cfg) for v in xs.ravel()]).reshape(xs.shape)
    return _wavefunction_scalar(n, float(x), cfg)


def photon_probability(x: float, n: int, cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    """|<x|n>|^2, a density per unit x."""
    return wavefunction(n, x, cfg) ** 2


def small_x_parity_probability(n: int, x: float, cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    """Small-|x| approximation where the arrival times are T/4 minus a free-flight time."""
    hw = cfg.quantum
    pref = 2.0 / math.pi * math.sqrt(cfg.k / (2.0 * hw * (n + 0.5)))
    phase = math.sqrt(2.0 * cfg.k / hw * (n + 0.5)) * x
    return pref * (math.sin(phase) ** 2 if n % 2 else math.cos(phase) ** 2)


def first_even_minimum_energy(x: float, cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    """Energy at which the even-n photon probability first drops to zero."""
    if x == 0:
        raise DomainError("no even-number minimum at x = 0")
    return (math.pi / 4.0) ** 2 * cfg.quantum ** 2 / (0.5 * cfg.k * x * x)


def estimate_x_from_minimum(E1: float, cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    if not E1 > 0:
        raise DomainError("minimum energy must be positive")
    return math.pi / 4.0 * cfg.quantum / math.sqrt(0.5 * cfg.k * E1)


def momentum_from_action(p: HOPoint, cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    """dS_+/dx by centered differences, the momentum as a time-like parameter."""
    xt = turning_point(p.E, cfg) if p.E > 0 else 0.0
    if not abs(p.x) < xt:
        raise DomainError("momentum is defined strictly between the turning points")
    h = min(1e-6 * xt, 0.5 * (xt - abs(p.x)))
    f = lambda x: action_plus(HOPoint(x, p.E), cfg)
    return (f(p.x + h) - f(p.x - h)) / (2.0 * h)


def momentum_from_energy_relation(p: HOPoint, cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    """|p| from inverting E = (w^2/2k) p^2 + (k/2) x^2."""
    return math.sqrt(max(0.0, 2.0 * cfg.k / cfg.omega ** 2 * (p.E - 0.5 * cfg.k * p.x ** 2)))
