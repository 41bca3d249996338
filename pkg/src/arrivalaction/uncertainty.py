"""Finite-uncertainty expectation values and the corrections that undo them.

Expectation values observed with states of energy spread dE and time
spread dt differ from the deterministic relation B(t; E) by the second
order terms (1/2) B_tt dt^2 + (1/2) B_EE dE^2.  The forward models below
add those terms; the ``*_correct`` functions remove them again.

For the oscillator the deterministic amplitude is
A(E) = sqrt(2 (E - hbar w / 2) / k).  For the beam splitter the fringe
amplitude is sqrt(I^2 - J1^2) with I = hbar (N + 1) / 2, and the two-mode
budget carries the phase spread in ``delta_t`` and the generator spread in
``delta_E``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .harmonic import DEFAULT_CONFIG, OscillatorConfig

__all__ = [
    "UncertaintyBudget",
    "coherent_budget",
    "ho_amplitude",
    "ho_energy_from_amplitude",
    "ho_expectation_forward",
    "ho_correct",
    "twomode_budget",
    "twomode_expectation_forward",
    "twomode_correct",
    "intensity_calibration",
    "fock_coherent_expectations",
    "spin_coherent_fringe",
]


@dataclass(frozen=True)
class UncertaintyBudget:
    """Spreads in the time-like parameter and in its generator.

    The product must respect delta_E * delta_t >= hbar / 2 whenever both are
    non-zero; a relative slack of 1e-12 admits minimal-uncertainty budgets
    computed in floating point.
    """

    delta_t: float = 0.0
    delta_E: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.delta_t >= 0 and self.delta_E >= 0):
            raise DomainError("uncertainties must be non-negative")
        if not self.hbar > 0:
            raise DomainError("hbar must be positive")
        if self.delta_t > 0 and self.delta_E > 0:
            if self.delta_t * self.delta_E < 0.5 * self.hbar * (1.0 - 1e-12):
                raise DomainError(
                    f"dE dt = {self.delta_t * self.delta_E:.6g} violates the limit hbar/2"
                )

    @property
    def product(self):
        return self.delta_t * self.delta_E


def coherent_budget(E: float, cfg: OscillatorConfig = DEFAULT_CONFIG) -> UncertaintyBudget:
    """Minimal-uncertainty budget with equal time and energy contributions.

    dE^2 = E hbar w, the energy variance of a coherent state, and
    dt = hbar / (2 dE).
    """
    if not E > 0:
        raise DomainError("energy must be positive")
    dE = math.sqrt(E * cfg.hbar * cfg.omega)
    return UncertaintyBudget(delta_t=cfg.hbar / (2.0 * dE), delta_E=dE, hbar=cfg.hbar)


def ho_amplitude(E: float, cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    """Deterministic amplitude sqrt(2 (E - hbar w/2) / k)."""
    if not E > 0.5 * cfg.quantum:
        raise DomainError("E must exceed the zero-point energy hbar w / 2")
    return math.sqrt(2.0 * (E - 0.5 * cfg.quantum) / cfg.k)


def ho_energy_from_amplitude(A: float, cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    """Corrected energy relation E = k A^2 / 2 + hbar w / 2."""
    return 0.5 * cfg.k * A * A + 0.5 * cfg.quantum


def _ho_factor(E, budget, cfg):
    return 1.0 - 0.5 * cfg.omega ** 2 * budget.delta_t ** 2 - budget.delta_E ** 2 / (8.0 * E * E)


def ho_expectation_forward(t: float, E: float, budget: UncertaintyBudget,
                           cfg: OscillatorConfig = DEFAULT_CONFIG) -> float:
    """<x>(t; E) = x(t; E) (1 - (w^2/2) dt^2 - dE^2 / (8 E^2)) with x = A(E) cos(wt)."""
    return ho_amplitude(E, cfg) * math.cos(cfg.omega * t) * _ho_factor(E, budget, cfg)


def ho_correct(measured: float, t: float, E: float, budget: UncertaintyBudget,
               cfg: OscillatorConfig = DEFAULT_CONFIG, first_order: bool = False) -> float:
    """Recover x(t; E) from a measured expectation value.

    By default the forward factor is divided out exactly, so that
    correct(forward(x)) = x.  ``first_order=True`` multiplies by
    1 + (w^2/2) dt^2 + dE^2/(8E^2) instead, which for the coherent budget is
    the familiar 1 + hbar w / 4E.  ``t`` does not enter the factor; it is
    accepted so that calls mirror :func:`ho_expectation_forward`.
    """
    if not E > 0.5 * cfg.quantum:
        raise DomainError("E must exceed the zero-point energy hbar w / 2")
    f = _ho_factor(E, budget, cfg)
    if first_order:
        return measured * (2.0 - f)
    if not f > 0:
        raise DomainError("uncertainties too large for the second-order correction")
    return measured / f


def _intensity(N, hbar):
    if int(N) != N or N < 1:
        raise DomainError("photon number N must be an integer >= 1")
    return 0.5 * hbar * (N + 1)


def _twomode_factor(J1, N, hbar):
    I = _intensity(N, hbar)
    if not abs(J1) < I:
        raise DomainError("|J1| must be below I = hbar (N+1)/2")
    return 1.0 - hbar * I / (2.0 * (I * I - J1 * J1))


def twomode_budget(J1: float, N: int, hbar: float = 1.0) -> UncertaintyBudget:
    """Binomial shot noise: dJ1^2 = (hbar/2)(I^2 - J1^2)/I, dphi^2 = (hbar/2) I/(I^2 - J1^2).

    Returned with the phase spread as ``delta_t`` and the generator spread
    as ``delta_E``.
    """
    I = _intensity(N, hbar)
    if not abs(J1) < I:
        raise DomainError("|J1| must be below I = hbar (N+1)/2")
    r = I * I - J1 * J1
    return UncertaintyBudget(delta_t=math.sqrt(0.5 * hbar * I / r),
                             delta_E=math.sqrt(0.5 * hbar * r / I), hbar=hbar)


def twomode_expectation_forward(phi: float, J1: float, N: int, hbar: float = 1.0) -> float:
    """<J2>(phi; J1) for shot-noise-limited inputs.

    The deterministic fringe sqrt(I^2 - J1^2) cos(phi) reduced by
    (1/2) dphi^2 + I^2 dJ1^2 / (2 (I^2 - J1^2)^2), both halves being equal
    to hbar I / (4 (I^2 - J1^2)).
    """
    I = _intensity(N, hbar)
    f = _twomode_factor(J1, N, hbar)
    return math.sqrt(I * I - J1 * J1) * math.cos(phi) * f


def twomode_correct(measured_J2: float, phi: float, J1: float, N: int, hbar: float = 1.0,
                    first_order: bool = False) -> float:
    """Recover J2(phi; J1) from a measured <J2>.

    Exact inverse of :func:`twomode_expectation_forward` by default;
    ``first_order=True`` applies the factor 1 + hbar I / (2 (I^2 - J1^2)).
    ``phi`` does not enter the factor.
    """
    f = _twomode_factor(J1, N, hbar)
    if first_order:
        return measured_J2 * (2.0 - f)
    if not f > 0:
        raise DomainError("shot noise too large for the second-order correction")
    return measured_J2 / f


def intensity_calibration(A_max: float, hbar: float = 1.0) -> float:
    """Total intensity I = A_max + hbar/2 from the largest fringe amplitude.

    A_max should be hbar N / 2; off-lattice values only trigger a warning.
    """
    if not A_max > 0:
        raise DomainError("A_max must be positive")
    twoN = 2.0 * A_max / hbar
    if abs(twoN - round(twoN)) > 1e-9:
        warnings.warn(f"A_max / hbar = {A_max / hbar:.12g} is not a multiple of 1/2",
                      RuntimeWarning, stacklevel=2)
    return A_max + 0.5 * hbar


def fock_coherent_expectations(E: float, cfg: OscillatorConfig = DEFAULT_CONFIG,
                               tail: float = 1e-12, samples: int = 128):
    """First-principles <H> and <x> oscillation amplitude of a coherent state of mean energy E.

    The state is built in a truncated number basis from the Poisson
    amplitude ladder, with the cutoff at least 10 E / hbar w and beyond the
    point where the remaining probability falls below ``tail``.  <x>(t) is
    evaluated on ``samples`` times across one period with dense matrices.
    Returns ``(E_measured, A_measured)``.
    """
    hw = cfg.quantum
    alpha2 = E / hw - 0.5
    if not alpha2 > 0:
        raise DomainError("E must exceed the zero-point energy hbar w / 2")
    alpha = math.sqrt(alpha2)

    amps = [math.exp(-0.5 * alpha2)]
    dim = max(int(math.ceil(10.0 * E / hw)), 8)
    n = 0
    while True:
        n += 1
        amps.append(amps[-1] * alpha / math.sqrt(n))
        if n + 1 >= dim and 1.0 - sum(a * a for a in amps) < tail:
            break
    c = np.array(amps)
    dim = c.size

    a = np.diag(np.sqrt(np.arange(1, dim)), 1)
    x = math.sqrt(hw / (2.0 * cfg.k)) * (a + a.T)
    levels = hw * (np.arange(dim) + 0.5)
    E_meas = float(np.sum(c * c * levels) / np.sum(c * c))

    ts = np.linspace(0.0, 2.0 * math.pi / cfg.omega, samples, endpoint=False)
    psi = c[None, :] * np.exp(-1j * np.outer(ts, levels) / cfg.hbar)
    xt = np.einsum("ti,ij,tj->t", psi.conj(), x, psi).real / np.sum(c * c)
    return E_meas, float(np.max(np.abs(xt)))


def spin_coherent_fringe(N: int, theta: float, hbar: float = 1.0):
    """<J1> and fringe amplitude |<J2 + i J3>| of N photons in one rotated mode.

    The input amplitudes are binomial, sqrt(C(N, k)) cos(theta/2)^k
    sin(theta/2)^(N-k) with k = N/2 + m photons in the first mode.
    Returns ``(J1, A)``.
    """
    if int(N) != N or N < 1:
        raise DomainError("photon number N must be an integer >= 1")
    j = 0.5 * N
    ks = np.arange(N + 1)
    logc = np.array([0.5 * (math.lgamma(N + 1) - math.lgamma(k + 1) - math.lgamma(N - k + 1))
                     for k in ks])
    c, s = math.cos(0.5 * theta), math.sin(0.5 * theta)
    with np.errstate(divide="ignore"):
        logamp = logc + ks * np.log(abs(c)) + (N - ks) * np.log(abs(s))
    amp = np.exp(logamp) * np.sign(c) ** ks * np.sign(s) ** (N - ks)
    m = ks - j
    J1 = hbar * float(np.sum(m * amp * amp))
    # <J+> = hbar sum sqrt((j - m)(j + m + 1)) c_{m+1} c_m
    raise_ = np.sqrt((j - m[:-1]) * (j + m[:-1] + 1.0))
    A = hbar * abs(float(np.sum(raise_ * amp[1:] * amp[:-1])))
    return J1, A
