import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrivalaction import twomode as tm
from arrivalaction.core import Regime
from arrivalaction.errors import DomainError
from arrivalaction.specfun import beam_splitter_matrix_exact
from arrivalaction.twomode import SpinPoint, TwoModeConfig


def test_config():
    assert TwoModeConfig(6).I == 3.5
    assert TwoModeConfig(3, hbar=2.0).I == 4.0
    for bad in (0, 2.5):
        with pytest.raises(DomainError):
            TwoModeConfig(bad)
    with pytest.raises(DomainError):
        TwoModeConfig(4, hbar=0.0)
    assert tm.lattice(3) == [-1.5, -0.5, 0.5, 1.5]


# -- phases and action -----------------------------------------------------------

def test_arrival_phase_examples():
    cfg = TwoModeConfig(10)
    p = SpinPoint(2.0, 0.0)
    assert tm.arrival_phase(p, cfg) == pytest.approx(math.pi / 2)
    assert tm.arrival_phase(p, cfg, sign=-1) == pytest.approx(-math.pi / 2)
    assert tm.arrival_phase(p, cfg, n_cycle=1) == pytest.approx(2.5 * math.pi)
    # J2 = hbar shortens the phase by about hbar / sqrt(I^2 - J1^2)
    root = math.sqrt(cfg.I ** 2 - 4.0)
    x = 1 / root
    assert tm.arrival_phase(SpinPoint(2.0, 1.0), cfg) == pytest.approx(math.pi / 2 - x, abs=x ** 3)
    # phases merge at the turning point
    edge = SpinPoint(2.0, root * (1 - 1e-12))
    assert tm.arrival_phase(edge, cfg) == pytest.approx(0.0, abs=1e-5)


def test_outside_interior_raises():
    cfg = TwoModeConfig(4)
    for fn in (tm.arrival_phase, tm.action_jact, tm.phase_derivative):
        with pytest.raises(DomainError, match="Airy"):
            fn(SpinPoint(2.0, 1.6), cfg)


@pytest.mark.parametrize("N", [4, 7, 18])
def test_action_on_equator(N):
    cfg = TwoModeConfig(N)
    for m1 in tm.lattice(N):
        S = tm.action_jact(SpinPoint(m1, 0.0), cfg)
        assert S == pytest.approx(math.pi / 2 * (N / 2 - m1), abs=1e-12)


@pytest.mark.parametrize("N", [6, 13, 24])
def test_action_at_j2_equal_hbar(N):
    cfg = TwoModeConfig(N, hbar=0.5)
    h = cfg.hbar
    for m1 in tm.lattice(N)[1:-1]:
        J1 = m1 * h
        S = tm.action_jact(SpinPoint(J1, h), cfg)
        ref = math.pi * h / 2 * (N / 2 - m1) - h * math.acos(J1 / cfg.I)
        # first-order expansion in J2; the J2^2 term vanishes by symmetry
        assert S == pytest.approx(ref, abs=h ** 3 * abs(J1) / (cfg.I ** 2 - J1 ** 2) ** 1.5 + 1e-12)


@settings(max_examples=100)
@given(st.floats(0.05, 0.95), st.floats(0, 2 * math.pi), st.integers(1, 40))
def test_action_swap_symmetry(r, ang, N):
    cfg = TwoModeConfig(N)
    J1, J2 = r * cfg.I * math.cos(ang), r * cfg.I * math.sin(ang)
    a = tm.action_jact(SpinPoint(J1, J2), cfg)
    b = tm.action_jact(SpinPoint(J2, J1), cfg)
    assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


def test_action_is_phase_integral():
    # dS/dJ1 = -phi_+ at fixed J2
    cfg = TwoModeConfig(12)
    h = 1e-6
    for J1, J2 in ((1.0, 2.0), (-3.0, 0.5), (0.0, 4.0)):
        dS = (tm.action_jact(SpinPoint(J1 + h, J2), cfg) - tm.action_jact(SpinPoint(J1 - h, J2), cfg)) / (2 * h)
        assert dS == pytest.approx(-tm.arrival_phase(SpinPoint(J1, J2), cfg), rel=1e-6)


def test_turning_point_model():
    cfg = TwoModeConfig(10)
    tp = tm.turning_point_model(2.0, cfg)
    root = math.sqrt(cfg.I ** 2 - 4)
    assert tp.V == pytest.approx(-root)
    assert tp.gamma == pytest.approx(2 * root / 4)
    # small-phase expansion of cos(phi) = J2 / sqrt(I^2 - J1^2)
    J1 = root - 1e-4
    phi = math.acos(2.0 / math.sqrt(cfg.I ** 2 - J1 ** 2))
    assert phi ** 2 == pytest.approx(tp.gamma * (root - J1), rel=1e-3)
    with pytest.raises(DomainError):
        tm.turning_point_model(0.0, cfg)
    with pytest.raises(DomainError):
        tm.turning_point_model(cfg.I, cfg)
    assert tm.airy_argument(SpinPoint(3.0, 0.0), cfg) == -math.inf


# -- inner products -------------------------------------------------------------

def test_hom_two_photons():
    cfg = TwoModeConfig(2)
    row = [tm.probability(m2, 0, cfg) for m2 in tm.lattice(2)]
    assert row[1] <= 1e-3 * max(row)
    assert tm.exact_probability(0, 0, cfg) == 0.0


def test_six_photons_input_one_suppresses_plus_minus_one():
    cfg = TwoModeConfig(6)
    P = {m2: tm.probability(m2, 1, cfg) for m2 in tm.lattice(6)}
    for s in (1, -1):
        assert P[s] < 0.15 * min(P[0], P[2 * s])
        assert P[s] == pytest.approx(tm.exact_probability(s, 1, cfg), rel=0.1)


def test_eighteen_photons_profile_matches_oracle_at_maxima():
    cfg = TwoModeConfig(18)
    ms = tm.lattice(18)
    sc = np.array([tm.probability(m2, 3, cfg) for m2 in ms])
    ex = np.array([tm.exact_probability(m2, 3, cfg) for m2 in ms])
    sep = np.array([tm.regime(SpinPoint(3.0, m2), cfg) is Regime.SEPARATED_BRANCHES for m2 in ms])
    maxima = [i for i in range(1, len(ms) - 1) if ex[i] > ex[i - 1] and ex[i] > ex[i + 1] and sep[i]]
    assert len(maxima) >= 3
    for i in maxima:
        assert abs(sc[i] - ex[i]) <= 0.10 * ex[i], ms[i]


@pytest.mark.parametrize("N", [12, 13, 18, 24, 30])
def test_columns_approximately_normalized(N):
    cfg = TwoModeConfig(N)
    M = tm.amplitude_matrix(cfg)
    sums = (M ** 2).sum(axis=0)
    assert np.all((sums >= 0.9) & (sums <= 1.1)), sums


def test_generator_patch_rule_is_less_normalized_at_twelve():
    # patching only along J1 misses the 10% band near the poles
    cfg = TwoModeConfig(12)
    sums = (tm.amplitude_matrix(cfg, patch="generator") ** 2).sum(axis=0)
    assert sums.max() > 1.1
    assert np.all((sums > 0.85) & (sums < 1.2))


def test_four_photons_equal_not_suppressed():
    cfg = TwoModeConfig(4)
    assert tm.action_jact(SpinPoint(0.0, 0.0), cfg) == pytest.approx(math.pi)
    P = [tm.probability(m2, 0, cfg) for m2 in tm.lattice(4)]
    assert P[2] > 0.2
    assert P[2] == pytest.approx(tm.exact_probability(0, 0, cfg), rel=0.15)


@pytest.mark.parametrize("patch", tm.PATCH_RULES)
@pytest.mark.parametrize("N", [5, 12, 19])
def test_parity_symmetry(N, patch):
    cfg = TwoModeConfig(N)
    for m1 in tm.lattice(N):
        for m2 in tm.lattice(N):
            assert tm.probability(m2, m1, cfg, patch) == pytest.approx(
                tm.probability(-m2, -m1, cfg, patch), abs=1e-10)


@pytest.mark.parametrize("N", [8, 15, 24])
def test_swap_symmetry_where_separated(N):
    cfg = TwoModeConfig(N)
    checked = 0
    for m1 in tm.lattice(N):
        for m2 in tm.lattice(N):
            p, q = SpinPoint(m1, m2), SpinPoint(m2, m1)
            if (tm.regime(p, cfg) is Regime.SEPARATED_BRANCHES
                    and tm.regime(q, cfg) is Regime.SEPARATED_BRANCHES):
                checked += 1
                assert abs(tm.inner_product(m2, m1, cfg)) == pytest.approx(
                    abs(tm.inner_product(m1, m2, cfg)), abs=1e-10)
    assert checked > (N + 1) ** 2 // 3


def test_symmetric_rule_keeps_separated_form_where_either_picture_is_separated():
    cfg = TwoModeConfig(18)
    sym, gen = tm.regime_matrix(cfg), tm.regime_matrix(cfg, "generator")
    assert np.all(sym >= gen)
    assert np.array_equal(sym, sym.T)


def test_unknown_patch_rule():
    with pytest.raises(DomainError):
        tm.inner_product(0, 0, TwoModeConfig(2), patch="nearest")


@pytest.mark.parametrize("args", [(0.5, 0, 4), (0, 3, 4), (0.25, 0.5, 3), (1, 1, 3)])
def test_invalid_quantum_numbers(args):
    m2, m1, N = args
    with pytest.raises(DomainError):
        tm.inner_product(m2, m1, TwoModeConfig(N))


def test_oracle_suppression_up_to_twenty():
    for N in range(2, 21):
        cfg = TwoModeConfig(N)
        cases = []
        if N % 2 == 0:
            cases += [(0, m1) for m1 in tm.lattice(N) if (N // 2 - int(m1)) % 2 == 1]
        if N % 4 == 0:
            cases += [(1, 0), (-1, 0)]
        for m2, m1 in cases:
            assert tm.exact_probability(m2, m1, cfg) < 1e-10
            neighbours = [tm.probability(m2 + s, m1, cfg) for s in (-1, 1) if abs(m2 + s) <= N / 2]
            assert tm.probability(m2, m1, cfg) < 0.05 * max(neighbours), (N, m2, m1)


@pytest.mark.parametrize("N", [6, 18, 31])
def test_exact_oracle_rows_orthonormal(N):
    X = beam_splitter_matrix_exact(N)
    assert np.max(np.abs(X @ X.T - np.eye(N + 1))) <= 1e-10


# -- closed form at a difference of two --------------------------------------------

def test_m2one_examples():
    assert tm.m2one_probability(0, TwoModeConfig(12)) == 0.0
    cfg = TwoModeConfig(12)
    r2 = 13 ** 2 / 4
    assert tm.m2one_probability(1, cfg) == pytest.approx(2 / math.pi / math.sqrt(r2 - 1) * (1 - 1 / r2))
    assert tm.m2one_probability(2, cfg) == pytest.approx(2 / math.pi / math.sqrt(r2 - 4) * 4 / r2)
    with pytest.raises(DomainError):
        tm.m2one_probability(0, TwoModeConfig(1))


def test_m2one_crossover_near_expected():
    for N in (12, 18, 24):
        cfg = TwoModeConfig(N)
        m_star = (N + 1) / (2 * math.sqrt(2))
        # at the crossover the even and odd branches coincide
        r2 = (N + 1) ** 2 / 4
        assert m_star ** 2 / r2 == pytest.approx(1 - m_star ** 2 / r2)
        diffs = []
        for m1 in range(0, N // 2):
            a, b = tm.m2one_probability(m1, cfg), tm.m2one_probability(m1 + 1, cfg)
            even_first = (N // 2 - m1) % 2 == 0
            diffs.append((b - a) if even_first else (a - b))
        flips = [i for i in range(len(diffs) - 1) if diffs[i] * diffs[i + 1] < 0]
        assert flips and abs(flips[0] + 1 - m_star) <= 1.5


def test_m2one_matches_full_semiclassical_at_interior():
    cfg = TwoModeConfig(24)
    for m1 in range(0, 7):
        a = tm.m2one_probability(m1, cfg)
        b = tm.probability(1, m1, cfg)
        assert a == pytest.approx(b, rel=0.1, abs=1e-3)
