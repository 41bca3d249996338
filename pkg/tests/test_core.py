import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from arrivalaction import core, harmonic
from arrivalaction.core import (
    CONTINUOUS,
    Branch,
    BranchContribution,
    QuantizationSpec,
    Regime,
    TurningPoint,
)
from arrivalaction.errors import DomainError, QuantizationError
from arrivalaction.harmonic import DEFAULT_CONFIG, HOPoint
from arrivalaction.specfun import airy_ai


def test_van_vleck_examples():
    q = QuantizationSpec(delta_E=1.0, delta_B=1.0)
    assert core.van_vleck_amplitude(2 * math.pi, q, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert core.van_vleck_amplitude(0.0, q) == 0.0
    assert core.van_vleck_amplitude(0.0, QuantizationSpec()) == 0.0


def test_van_vleck_continuous_drops_interval():
    a = core.van_vleck_amplitude(3.0, QuantizationSpec(delta_B=CONTINUOUS))
    b = core.van_vleck_amplitude(3.0, QuantizationSpec(delta_B=0.25))
    assert b == pytest.approx(a * 0.5, rel=1e-15)
    with pytest.raises(DomainError):
        core.van_vleck_amplitude(math.inf, QuantizationSpec())


def test_van_vleck_oscillator_density():
    # amplitude^2 = |dt/dx| / 2 pi hbar; with dE = hbar w and both branches the
    # squared envelope is (2/pi) sqrt(k / (2E - k x^2))
    cfg = DEFAULT_CONFIG
    E, x = 3.5, 0.8
    plus, _ = harmonic.branches(cfg)
    h = 1e-6
    dtdx = (harmonic.arrival_time(HOPoint(x + h, E), 1, 0, cfg)
            - harmonic.arrival_time(HOPoint(x - h, E), 1, 0, cfg)) / (2 * h)
    a = core.van_vleck_amplitude(core.mixed_derivative(plus, x, E), QuantizationSpec(), cfg.hbar)
    assert a ** 2 == pytest.approx(abs(dtdx) / (2 * math.pi), rel=1e-8)
    env = 2 * math.sqrt(cfg.quantum) * a
    assert env ** 2 == pytest.approx(2 / math.pi * math.sqrt(cfg.k / (2 * E - cfg.k * x * x)), rel=1e-12)


def test_mixed_derivative_fallback_matches_analytic():
    cfg = DEFAULT_CONFIG
    plus, minus = harmonic.branches(cfg)
    for br in (plus, minus):
        bare = Branch(br.index, br.arrival_time, br.action, br.domain)
        for x, E in ((0.3, 2.0), (-1.0, 7.5)):
            assert core.mixed_derivative(bare, x, E) == pytest.approx(
                core.mixed_derivative(br, x, E), rel=1e-6)


def test_superpose_examples():
    assert core.superpose([BranchContribution(1.0, 0.0)]) == 1 + 0j
    assert abs(core.superpose([BranchContribution(1.0, 0.0), BranchContribution(1.0, math.pi)])) < 1e-15
    v = core.superpose([BranchContribution(0.7, 1.3), BranchContribution(0.7, -1.3)], hbar=0.5)
    assert v.real == pytest.approx(2 * 0.7 * math.cos(1.3 / 0.5), rel=1e-14)
    assert v.imag == 0.0


def test_superpose_empty():
    with pytest.raises(DomainError):
        core.superpose([])


def test_branch_contribution_rejects_negative():
    with pytest.raises(DomainError):
        BranchContribution(-0.1, 0.0)


@given(st.floats(0, 100), st.floats(-1e4, 1e4), st.floats(0.01, 10))
def test_conjugate_pair_is_real(A, S, hbar):
    v = core.superpose([BranchContribution(A, S), BranchContribution(A, -S)], hbar)
    assert abs(v.imag) <= 1e-14


def test_branch_amplitude_oscillator_matches_cosine_form():
    cfg = DEFAULT_CONFIG
    E = harmonic.energy_level(4, cfg)
    q = QuantizationSpec(delta_E=cfg.quantum, delta_B=CONTINUOUS)
    for x in (0.1, 0.9, 1.3):
        amp = core.branch_amplitude(harmonic.branches(cfg), x, E, q, cfg.hbar)
        assert amp.imag == pytest.approx(0.0, abs=1e-14)
        assert amp.real == pytest.approx(harmonic.wavefunction(4, x, cfg), rel=1e-10)
    with pytest.raises(DomainError):
        core.branch_amplitude(harmonic.branches(cfg), 5.0, E, q)


def test_quantization_interval():
    assert core.quantization_interval(2 * math.pi) == pytest.approx(1.0)
    w = 1.7
    assert core.quantization_interval(2 * math.pi / w, hbar=1.0) == pytest.approx(w)
    assert core.quantization_interval(1.0) == pytest.approx(2 * core.quantization_interval(2.0))
    with pytest.raises(DomainError):
        core.quantization_interval(0.0)


def test_quantized_energies_oscillator():
    w = 1.0
    Es = core.quantized_energies(lambda E: math.pi * E / w, 10, (1e-3, 12.0))
    assert Es[0] == pytest.approx(0.5, abs=1e-10)
    assert max(abs(E - (n + 0.5)) for n, E in enumerate(Es)) <= 1e-10
    assert max(abs(b - a - 1.0) for a, b in zip(Es, Es[1:])) <= 1e-9


def test_quantized_energies_other_unit_scale():
    hbar, w = 0.3, 2.5
    Es = core.quantized_energies(lambda E: math.pi * E / w, 5, (1e-4, 10.0), hbar=hbar)
    for n, E in enumerate(Es):
        assert E == pytest.approx(hbar * w * (n + 0.5), rel=1e-10)


def test_quantized_energies_non_monotone():
    with pytest.raises(QuantizationError):
        core.quantized_energies(lambda E: math.sin(E), 2, (0.0, 10.0))


def test_quantized_energies_unbracketed_reports_level():
    with pytest.raises(QuantizationError) as info:
        core.quantized_energies(lambda E: math.pi * E, 10, (0.1, 3.2))
    assert info.value.level == 3


def test_quantized_energies_bad_bracket():
    with pytest.raises(DomainError):
        core.quantized_energies(lambda E: E, 1, (2.0, 1.0))


def test_modulation_period():
    T = 2 * math.pi
    assert core.modulation_period(0.0, T / 4) == pytest.approx(4.0)
    assert core.modulation_period(T / 4, -T / 4) == pytest.approx(2.0)
    assert core.modulation_period(0, 2.0) == pytest.approx(0.5 * core.modulation_period(0, 1.0))
    with pytest.raises(DomainError):
        core.modulation_period(1.0, 1.0)


def test_interference_probability():
    A, dE = 0.3, 2.0
    assert core.interference_probability(A, 1.0, 1.0, dE) == pytest.approx(4 * dE * A * A)
    assert core.interference_probability(A, 0.0, math.pi, dE) == pytest.approx(0.0, abs=1e-16)
    assert core.interference_probability(A, 0.0, math.pi / 2, dE) == pytest.approx(2 * dE * A * A)
    with pytest.raises(DomainError):
        core.interference_probability(-1.0, 0, 0, 1)


def test_airy_amplitude_examples():
    tp = TurningPoint(V=2.0, gamma=3.0, dV_dB=0.5)
    q = QuantizationSpec(delta_E=1.0, delta_B=1.0)
    rho = 3.0 ** (2 / 3) * 0.5
    assert core.airy_amplitude(2.0, tp, q) == pytest.approx(math.sqrt(rho) * 0.3550280539, rel=1e-9)
    assert core.airy_amplitude(2.0 - 20.0, tp, q) < 1e-20
    with pytest.raises(DomainError):
        TurningPoint(V=0.0, gamma=0.0, dV_dB=1.0)


def test_airy_amplitude_oscillator_closed_form():
    # (4k / (hbar w |x|))^(1/6) Ai(-(2 hbar w / (k x^2))^(1/3) (E - k x^2/2) / (hbar w))
    for cfg in (DEFAULT_CONFIG, harmonic.OscillatorConfig(k=3.0, omega=0.7, hbar=1.3)):
        x = 3.0
        hw = cfg.quantum
        for n in (6, 8, 9, 11):
            E = hw * (n + 0.5)
            got = core.airy_amplitude(E, harmonic.turning_point_model(x, cfg),
                                      QuantizationSpec(delta_E=hw), cfg.hbar)
            arg = -(2 * hw / (cfg.k * x * x)) ** (1 / 3) * (E - 0.5 * cfg.k * x * x) / hw
            pref = (4 * cfg.k / (hw * x)) ** (1 / 6)
            assert got == pytest.approx(pref * airy_ai(arg), rel=1e-12)


def test_regime_select():
    tp = TurningPoint(V=1.0, gamma=8.0, dV_dB=1.0)
    s = (1.0 / 8.0) ** (1 / 3)
    assert core.regime_select(1.0, tp) is Regime.AIRY_PATCH
    assert core.regime_select(1.0 + 2 * s, tp) is Regime.SEPARATED_BRANCHES
    assert core.regime_select(1.0 + 1.42 * s, tp) is Regime.SEPARATED_BRANCHES
    assert core.regime_select(1.0 + 1.4199 * s, tp) is Regime.AIRY_PATCH


def test_linear_turning_point_forms_intersect_at_crossover():
    z = -core.AIRY_CROSSOVER
    zeta = 2 / 3 * abs(z) ** 1.5
    two_branch = math.cos(zeta - math.pi / 4) / (math.sqrt(math.pi) * abs(z) ** 0.25)
    assert two_branch == pytest.approx(airy_ai(z), rel=2e-3)


def test_action_time_consistency_oscillator_branches():
    cfg = harmonic.OscillatorConfig(k=1.5, omega=2.0, hbar=0.7)
    rng = np.random.default_rng(5)
    for _ in range(100):
        E = rng.uniform(0.5, 30)
        x = rng.uniform(-0.95, 0.95) * harmonic.turning_point(E, cfg)
        for br in harmonic.branches(cfg):
            assert core.action_time_residual(br, x, E) <= 1e-6


def test_action_time_residual_outside_domain():
    plus, _ = harmonic.branches(DEFAULT_CONFIG)
    with pytest.raises(DomainError):
        core.action_time_residual(plus, 10.0, 1.0)


def test_quantization_spec():
    with pytest.raises(DomainError):
        QuantizationSpec(delta_E=0.0)
    assert QuantizationSpec().factor("delta_E") == 1.0
    assert repr(CONTINUOUS) == "CONTINUOUS"
    import pickle

    assert pickle.loads(pickle.dumps(CONTINUOUS)) is CONTINUOUS
