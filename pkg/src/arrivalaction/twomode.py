"""Two-mode N-photon interference at a 50:50 beam splitter.

The generator is J1 = hbar (n_a1 - n_a2)/2 and the observable the output
difference J2 = hbar (n_b1 - n_b2)/2.  The phase shift generated by J1
reaches a given J2 at two arrival phases per cycle; their action gives
the semiclassical inner product <m2|m1>.

Quantum numbers m may be integers or half-integers (odd N); internally
they are carried as the exact integer 2m.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core
from .core import QuantizationSpec, Regime, TurningPoint
from .errors import DomainError
from .specfun import beam_splitter_amplitude_exact, twice

__all__ = [
    "TwoModeConfig",
    "SpinPoint",
    "lattice",
    "arrival_phase",
    "action_jact",
    "phase_derivative",
    "turning_point_model",
    "airy_argument",
    "regime",
    "inner_product",
    "inner_product_airy",
    "inner_product_separated",
    "probability",
    "amplitude_matrix",
    "regime_matrix",
    "PATCH_RULES",
    "m2one_probability",
    "exact_probability",
]


@dataclass(frozen=True)
class TwoModeConfig:
    N: int
    hbar: float = 1.0

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise DomainError("photon number N must be an integer >= 1")
        if not self.hbar > 0:
            raise DomainError("hbar must be positive")

    @property
    def I(self) -> float:
        """Total intensity hbar (N + 1) / 2, including half a photon of zero-point per mode."""
        return 0.5 * self.hbar * (self.N + 1)


@dataclass(frozen=True)
class SpinPoint:
    J1: float
    J2: float

    @classmethod
    def from_quantum_numbers(cls, m1, m2, cfg: TwoModeConfig):
        return cls(0.5 * twice(m1) * cfg.hbar, 0.5 * twice(m2) * cfg.hbar)

    def interior(self, cfg: TwoModeConfig) -> bool:
        return self.J1 ** 2 + self.J2 ** 2 < cfg.I ** 2


def lattice(N: int):
    """Allowed m values -N/2, ..., N/2 as floats."""
    return [t / 2 for t in range(-N, N + 1, 2)]


def _check(m, cfg):
    tm = twice(m)
    if abs(tm) > cfg.N or (cfg.N - tm) % 2:
        raise DomainError(f"m = {m} is not on the lattice for N = {cfg.N}")
    return tm


def _require_interior(p, cfg):
    if not p.interior(cfg):
        raise DomainError(
            f"(J1, J2) = ({p.J1}, {p.J2}) is on or outside J1^2 + J2^2 = I^2; "
            "use the Airy turning-point regime"
        )


def _clip(v):
    return min(1.0, max(-1.0, v))


def arrival_phase(p: SpinPoint, cfg: TwoModeConfig, sign: int = 1, n_cycle: int = 0) -> float:
    """Phase +-arccos(J2 / sqrt(I^2 - J1^2)) + 2 pi n_cycle at which J2 is reached."""
    _require_interior(p, cfg)
    I2 = cfg.I ** 2
    return sign * math.acos(_clip(p.J2 / math.sqrt(I2 - p.J1 ** 2))) + 2.0 * math.pi * n_cycle


def action_jact(p: SpinPoint, cfg: TwoModeConfig, sign: int = 1) -> float:
    """Action S_+- of the two arrival phases; symmetric in J1 and J2."""
    _require_interior(p, cfg)
    I = cfg.I
    I2 = I * I
    a = math.acos(_clip(p.J2 / math.sqrt(I2 - p.J1 ** 2)))
    b = math.acos(_clip(p.J1 / math.sqrt(I2 - p.J2 ** 2)))
    c = math.acos(_clip(p.J1 * p.J2 / math.sqrt((I2 - p.J1 ** 2) * (I2 - p.J2 ** 2))))
    return sign * (-p.J1 * a - p.J2 * b + I * c - 0.25 * math.pi * cfg.hbar)


def phase_derivative(p: SpinPoint, cfg: TwoModeConfig) -> float:
    """d phi / d J2 = -1 / sqrt(I^2 - J1^2 - J2^2)."""
    _require_interior(p, cfg)
    return -1.0 / math.sqrt(cfg.I ** 2 - p.J1 ** 2 - p.J2 ** 2)


def turning_point_model(J2: float, cfg: TwoModeConfig) -> TurningPoint:
    """Turning point in J1 at fixed J2 != 0, cast in engine form.

    The engine's "energy" is -|J1| so that the classically forbidden side
    |J1| > sqrt(I^2 - J2^2) lies below V.  The phase obeys
    phi^2 ~ gamma (sqrt(I^2 - J2^2) - |J1|) with
    gamma = 2 sqrt(I^2 - J2^2) / J2^2, obtained by expanding
    cos(phi) = J2 / sqrt(I^2 - J1^2) around the turning point.
    """
    J2 = abs(J2)
    if J2 == 0:
        raise DomainError("no turning point in J1 at J2 = 0")
    if J2 >= cfg.I:
        raise DomainError("|J2| must stay below I")
    root = math.sqrt(cfg.I ** 2 - J2 * J2)
    return TurningPoint(V=-root, gamma=2.0 * root / (J2 * J2), dV_dB=J2 / root)


def airy_argument(p: SpinPoint, cfg: TwoModeConfig) -> float:
    """Airy argument for patching along J1; -inf at J2 = 0, where no turning point is reachable."""
    if p.J2 == 0:
        return -math.inf
    return core.airy_argument(-abs(p.J1), turning_point_model(p.J2, cfg), cfg.hbar)


PATCH_RULES = ("symmetric", "generator")


def _patch_direction(p: SpinPoint, cfg: TwoModeConfig, patch: str):
    # Returns (regime, swapped); swapped means the patch runs along J2 at fixed J1.
    if patch not in PATCH_RULES:
        raise DomainError(f"unknown patch rule {patch!r}; choose from {PATCH_RULES}")
    z1 = airy_argument(p, cfg)
    if patch == "generator":
        z, z2 = z1, -math.inf
    else:
        z2 = airy_argument(SpinPoint(p.J2, p.J1), cfg)
        z = min(z1, z2)
    # same tie-break as core.regime_select: the crossover itself is separated
    if not z > -core.AIRY_CROSSOVER:
        return Regime.SEPARATED_BRANCHES, False
    return Regime.AIRY_PATCH, z2 > z1


def regime(p: SpinPoint, cfg: TwoModeConfig, patch: str = "symmetric") -> Regime:
    """Evaluation regime at p.

    ``patch="generator"`` looks only at the turning point in J1 at fixed
    J2.  The default ``"symmetric"`` rule uses the fact that the two-branch
    amplitude is the same function whichever of J1, J2 plays the generator:
    it is kept wherever either role assignment has separated arrival
    phases, and the Airy profile is used only when both are near their
    turning points, patching along the variable that is closer.  Near the
    poles J1 ~ I or J2 ~ I this avoids the J1 patch, whose linearized
    threshold has a vanishing slope there.
    """
    return _patch_direction(p, cfg, patch)[0]


def _parity_sign(tm1, tm2, N, J1, J2):
    # Reflection J1 -> -J1 multiplies the interior amplitude by (-1)^(N/2 - m2),
    # and J2 -> -J2 by (-1)^(N/2 - m1).
    s = 1
    if J1 < 0 and ((N - tm2) // 2) % 2:
        s = -s
    if J2 < 0 and ((N - tm1) // 2) % 2:
        s = -s
    return s


def inner_product_airy(p: SpinPoint, cfg: TwoModeConfig) -> float:
    """Airy turning-point amplitude along J1 at (|J1|, |J2|), without the reflection sign."""
    tp = turning_point_model(p.J2, cfg)
    q = QuantizationSpec(delta_E=cfg.hbar, delta_B=cfg.hbar)
    return core.airy_amplitude(-abs(p.J1), tp, q, cfg.hbar)


def inner_product_separated(p: SpinPoint, cfg: TwoModeConfig) -> float:
    """Two arrival phases: 2 sqrt((hbar/2pi) |dphi/dJ2|) cos(S_+/hbar)."""
    weight = 2.0 * math.sqrt(cfg.hbar / (2.0 * math.pi) * abs(phase_derivative(p, cfg)))
    return weight * math.cos(action_jact(p, cfg) / cfg.hbar)


def inner_product(m2, m1, cfg: TwoModeConfig, patch: str = "symmetric") -> float:
    """Semiclassical <m2|m1> for input (N/2 + m1, N/2 - m1) photons and output difference 2 m2.

    Interior points use the two interfering arrival phases; where the Airy
    argument exceeds -1.42 the Airy profile is used instead (see
    :func:`regime` for the choice of patching direction).
    """
    tm1, tm2 = _check(m1, cfg), _check(m2, cfg)
    p = SpinPoint(0.5 * tm1 * cfg.hbar, 0.5 * tm2 * cfg.hbar)
    reg, swapped = _patch_direction(p, cfg, patch)
    if reg is Regime.SEPARATED_BRANCHES:
        return inner_product_separated(p, cfg)
    if swapped:
        return _parity_sign(tm2, tm1, cfg.N, p.J2, p.J1) * inner_product_airy(SpinPoint(p.J2, p.J1), cfg)
    return _parity_sign(tm1, tm2, cfg.N, p.J1, p.J2) * inner_product_airy(p, cfg)


def probability(m2, m1, cfg: TwoModeConfig, patch: str = "symmetric") -> float:
    return inner_product(m2, m1, cfg, patch) ** 2


def amplitude_matrix(cfg: TwoModeConfig, patch: str = "symmetric") -> np.ndarray:
    """Semiclassical M[m2, m1] over the full lattice, indices ascending."""
    ms = lattice(cfg.N)
    return np.array([[inner_product(m2, m1, cfg, patch) for m1 in ms] for m2 in ms])


def regime_matrix(cfg: TwoModeConfig, patch: str = "symmetric") -> np.ndarray:
    """Boolean table, True where M[m2, m1] is evaluated with separated branches."""
    ms = lattice(cfg.N)
    h = cfg.hbar
    return np.array([[regime(SpinPoint(m1 * h, m2 * h), cfg, patch) is Regime.SEPARATED_BRANCHES
                      for m1 in ms] for m2 in ms])


def exact_probability(m2, m1, cfg: TwoModeConfig) -> float:
    return beam_splitter_amplitude_exact(cfg.N, m1, m2) ** 2


def m2one_probability(m1, cfg: TwoModeConfig) -> float:
    """Closed-form probability at a photon-number difference of two on the other port.

    Even N/2 - m1 gives (2/pi) m1^2 / ((N+1)^2/4) / sqrt((N+1)^2/4 - m1^2),
    odd N/2 - m1 the complementary 1 - m1^2/((N+1)^2/4).
    """
    if cfg.N < 2:
        raise DomainError("need N >= 2")
    tm1 = _check(m1, cfg)
    m = tm1 / 2
    r2 = (cfg.N + 1) ** 2 / 4.0
    if not m * m < r2:
        raise DomainError("|m1| must be below (N+1)/2")
    pref = 2.0 / (math.pi * math.sqrt(r2 - m * m))
    if ((cfg.N - tm1) // 2) % 2 == 0:
        return pref * m * m / r2
    return pref * (1.0 - m * m / r2)
