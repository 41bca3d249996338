"""Acceptance checks comparing the semiclassical results with exact oracles.

Each ``check_*`` function returns a :class:`CheckResult`.  They are shared
by the test-suite and by ``arrivalaction compare-all``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from . import core, doubleslit, harmonic, twomode, uncertainty
from .core import Regime, TurningPoint
from .harmonic import DEFAULT_CONFIG, HOPoint
from .specfun import airy_ai, airy_ai_reference, beam_splitter_matrix_exact, ho_eigenfunction_exact

__all__ = [
    "CheckResult",
    "CHECKS",
    "run_all",
    "local_minima",
    "local_maxima",
    "even_odd_crossover",
    "crossover_mismatch",
]


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    details: list = field(default_factory=list)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number}: {self.name}"


class _Recorder:
    # collects sub-checks; the criterion passes only if every one does
    def __init__(self):
        self.details = []
        self.ok = True

    def __call__(self, cond, msg):
        cond = bool(cond)
        self.ok &= cond
        self.details.append(("ok  " if cond else "FAIL") + " " + msg)
        return cond


def local_minima(values, start=0):
    """Indices i (offset by ``start``) with values[i] below both neighbours."""
    v = list(values)
    return [start + i for i in range(1, len(v) - 1) if v[i] < v[i - 1] and v[i] < v[i + 1]]


def local_maxima(values, start=0):
    v = list(values)
    return [start + i for i in range(1, len(v) - 1) if v[i] > v[i - 1] and v[i] > v[i + 1]]


def even_odd_crossover(profile, N):
    """Where the alternation of P(m1), m1 = 0..N/2, changes phase.

    ``profile[i]`` is the probability at m1 = i.  The contrast
    s(m) (P(m) - (P(m-1) + P(m+1)) / 2), with s = +1 for odd N/2 - m and -1
    otherwise, is positive while the odd outcomes dominate.  The return
    value is the linear interpolation of its first zero, or None.
    """
    half = N // 2
    c = []
    for m in range(1, half):
        s = 1.0 if (half - m) % 2 else -1.0
        c.append(s * (profile[m] - 0.5 * (profile[m - 1] + profile[m + 1])))
    for i in range(1, len(c)):
        if c[i - 1] > 0 >= c[i]:
            m = i + 1
            return (m - 1) + c[i - 1] / (c[i - 1] - c[i])
    return None


def crossover_mismatch(n, cfg=DEFAULT_CONFIG):
    """Relative difference of the two wavefunction forms where the Airy argument is -1.42.

    Returns ``(x, separated, airy, relative)``; the point lies on the x > 0
    side where E_n = k x^2 / 2 + 1.42 (hbar^2/gamma)^(1/3).
    """
    E = harmonic.energy_level(n, cfg)

    def excess(x):
        tp = harmonic.turning_point_model(x, cfg)
        return core.airy_argument(E, tp, cfg.hbar) + core.AIRY_CROSSOVER

    from scipy.optimize import brentq

    xt = harmonic.turning_point(E, cfg)
    x = brentq(excess, 0.05 * xt, xt, xtol=1e-15)
    sep = math.sqrt(2.0 / math.pi * math.sqrt(cfg.k / (2.0 * E - cfg.k * x * x))) * math.cos(
        harmonic.action_plus(HOPoint(x, E), cfg) / cfg.hbar)
    q = core.QuantizationSpec(delta_E=cfg.quantum)
    ai = core.airy_amplitude(E, harmonic.turning_point_model(x, cfg), q, cfg.hbar)
    return x, sep, ai, abs(abs(sep) - abs(ai)) / abs(ai)


def check_spectrum():
    from .cli import quantize_rows

    r = _Recorder()
    rows = quantize_rows("ho", 10, DEFAULT_CONFIG)
    dev = max(row["deviation"] for row in rows)
    r(len(rows) == 10, f"10 levels returned (n = 0..{len(rows) - 1})")
    r(dev <= 1e-9, f"max |E_n - (n + 1/2)| = {dev:.2e} <= 1e-9")
    r(abs(rows[0]["E"] - 0.5) <= 1e-9, f"E_0 = {rows[0]['E']:.12g}")
    spacing = max(abs(b["E"] - a["E"] - 1.0) for a, b in zip(rows, rows[1:]))
    r(spacing <= 1e-9, f"spacing deviation from 2 pi hbar / T = {spacing:.2e}")
    return CheckResult(1, "ground state and spectrum", r.ok, r.details)


def check_fig1():
    r = _Recorder()
    cfg = DEFAULT_CONFIG
    xs = np.linspace(-4.0, 4.0, 1601)
    for n in (1, 2):
        sc = harmonic.wavefunction(n, xs, cfg)
        ex = ho_eigenfunction_exact(n, xs, cfg)
        sep = np.array([harmonic.wavefunction_regime(n, abs(x), cfg) is Regime.SEPARATED_BRANCHES
                        and x != 0 for x in xs])
        err = float(np.max(np.abs(sc - ex)[sep]))
        r(err <= 0.08, f"n={n}: max |semiclassical - exact| = {err:.4f} <= 0.08 where argument < -1.42")
    sc0 = float(np.max(harmonic.wavefunction(0, xs, cfg)))
    ex0 = float(np.max(ho_eigenfunction_exact(0, xs, cfg)))
    r(abs(sc0 - 0.9489) <= 0.08 * 0.9489, f"n=0 semiclassical peak {sc0:.4f} within 8% of 0.9489")
    r(abs(ex0 - 0.8932) <= 5e-5, f"n=0 exact peak {ex0:.4f} = 0.8932")
    return CheckResult(2, "oscillator eigenfunctions (n = 0, 1, 2)", r.ok, r.details)


def check_fig2():
    r = _Recorder()
    cfg = DEFAULT_CONFIG
    x = 3.0
    n_max = 40
    sc = [harmonic.photon_probability(x, n, cfg) for n in range(n_max + 1)]
    ex = [ho_eigenfunction_exact(n, x, cfg) ** 2 for n in range(n_max + 1)]
    window = 24
    sc_min = local_minima(sc[: window + 1])
    ex_min = local_minima(ex[: window + 1])
    r(sc_min == [14, 18, 22], f"semiclassical minima for n <= {window}: {sc_min}")
    r(ex_min == sc_min, f"oracle minima for n <= {window}: {ex_min}")
    r(local_minima(sc) == local_minima(ex), f"minima agree up to n = {n_max}: {local_minima(sc)}")
    E8, E9 = harmonic.energy_level(8, cfg), harmonic.energy_level(9, cfg)
    V = 0.5 * cfg.k * x * x
    r(E8 < V < E9, f"turning point V = {V:g} lies between E_8 = {E8:g} and E_9 = {E9:g}")
    T = harmonic.period(cfg)
    r(abs(core.modulation_period(0.0, T / 4, cfg.hbar) - 4.0) < 1e-12, "E_mod(T/4) = 4 hbar w")
    return CheckResult(3, "photon statistics at x = 3", r.ok, r.details)


def check_fig3():
    r = _Recorder()
    cfg = DEFAULT_CONFIG
    cases = [(0.225, 12, 0.222, 1.3), (0.250, 10, 0.255, 2.0), (0.275, 8, 0.270, 1.8)]
    for x, n_expected, x_quoted, acc_quoted in cases:
        sc = [harmonic.photon_probability(x, n, cfg) for n in range(0, 31, 2)]
        ex = [ho_eigenfunction_exact(n, x, cfg) ** 2 for n in range(0, 31, 2)]
        n_sc = 2 * local_minima(sc)[0]
        n_ex = 2 * local_minima(ex)[0]
        if x == 0.225:
            r(n_sc == 12, f"x={x}: first even minimum at n = {n_sc}")
            E1 = harmonic.first_even_minimum_energy(x, cfg)
            r(2 * round(E1 / 2) == 12, f"x={x}: E_1 = {E1:.3f} hbar w, nearest even n = 12")
        r(n_sc == n_ex == n_expected, f"x={x}: first even minimum semiclassical {n_sc}, oracle {n_ex}")
        # the middle case sits between n = 8 and n = 10 and is read off as 9.5
        E1 = 9.5 if x == 0.250 else n_expected + 0.5
        est = harmonic.estimate_x_from_minimum(E1 * cfg.quantum, cfg)
        acc = 100.0 * abs(est - x) / x
        r(abs(est - x_quoted) <= 1e-3, f"x={x}: estimate {est:.4f} ~ {x_quoted}")
        r(abs(acc - acc_quoted) <= 0.5, f"x={x}: accuracy {acc:.2f}% vs quoted {acc_quoted}% (+-0.5)")
    return CheckResult(4, "small-x parity beats", r.ok, r.details)


def check_hom():
    r = _Recorder()
    worst_ex, worst_ratio = 0.0, 0.0
    for N in range(2, 21, 2):
        cfg = twomode.TwoModeConfig(N)
        for m1 in range(-N // 2, N // 2 + 1):
            if (N // 2 - m1) % 2 == 1:
                worst_ex = max(worst_ex, twomode.exact_probability(0, m1, cfg))
                nb = max(twomode.probability(1, m1, cfg), twomode.probability(-1, m1, cfg))
                worst_ratio = max(worst_ratio, twomode.probability(0, m1, cfg) / nb)
    r(worst_ex < 1e-10, f"m2 = 0, odd N/2 - m1, N <= 20: max oracle probability {worst_ex:.1e}")
    r(worst_ratio < 0.05, f"semiclassical / largest neighbour <= {worst_ratio:.1e} < 5%")
    worst_ex, worst_ratio = 0.0, 0.0
    for N in range(4, 21, 4):
        cfg = twomode.TwoModeConfig(N)
        for m2 in (-1, 1):
            worst_ex = max(worst_ex, twomode.exact_probability(m2, 0, cfg))
            nb = max(twomode.probability(m2 - 1, 0, cfg), twomode.probability(m2 + 1, 0, cfg))
            worst_ratio = max(worst_ratio, twomode.probability(m2, 0, cfg) / nb)
    r(worst_ex < 1e-10, f"m1 = 0, m2 = +-1, N = 4, 8, ..., 20: max oracle probability {worst_ex:.1e}")
    r(worst_ratio < 0.05, f"complementary suppression ratio {worst_ratio:.1e} < 5%")
    return CheckResult(5, "Hong-Ou-Mandel suppression", r.ok, r.details)


def check_fig4():
    r = _Recorder()
    for N in (12, 18, 24):
        cfg = twomode.TwoModeConfig(N)
        ms = list(range(-N // 2, N // 2 + 1))
        ex = [twomode.exact_probability(1, m1, cfg) for m1 in ms]
        sc = [twomode.probability(1, m1, cfg) for m1 in ms]
        cf = [twomode.m2one_probability(m1, cfg) for m1 in ms]
        interior = [twomode.regime(twomode.SpinPoint(m1 * cfg.hbar, cfg.hbar), cfg)
                    is Regime.SEPARATED_BRANCHES for m1 in ms]
        peaks = [i for i in local_maxima(ex) if interior[i]]
        err_sc = max(abs(sc[i] - ex[i]) / ex[i] for i in peaks)
        err_cf = max(abs(cf[i] - ex[i]) / ex[i] for i in peaks)
        r(err_sc <= 0.10, f"N={N}: inner_product vs oracle at {len(peaks)} interior maxima, max rel {err_sc:.3f}")
        r(err_cf <= 0.10, f"N={N}: closed form vs oracle at interior maxima, max rel {err_cf:.3f}")
        target = (N + 1) / (2.0 * math.sqrt(2.0))
        half = N // 2
        for label, prof in (("oracle", ex), ("semiclassical", sc), ("closed form", cf)):
            c = even_odd_crossover(prof[half:], N)
            r(c is not None and abs(c - target) <= 1.0,
              f"N={N}: {label} crossover at m1 = {c if c is None else round(c, 3)}, target {target:.3f}")
    return CheckResult(6, "two-mode distributions at m2 = 1", r.ok, r.details)


def check_calibration():
    r = _Recorder()
    cfg = DEFAULT_CONFIG
    rng = random.Random(7)
    worst = 0.0
    for _ in range(100):
        E = rng.uniform(0.6, 50.0)
        b = uncertainty.coherent_budget(E, cfg)
        measured = uncertainty.ho_expectation_forward(0.0, E, b, cfg)
        A = uncertainty.ho_correct(measured, 0.0, E, b, cfg)
        worst = max(worst, abs(uncertainty.ho_energy_from_amplitude(A, cfg) - E) / E)
    r(worst <= 1e-10, f"coherent round trip recovers E = k A^2/2 + hbar w/2, max rel {worst:.1e}")
    worst = 0.0
    for E in (2.0, 5.0, 12.5, 30.0):
        Em, Am = uncertainty.fock_coherent_expectations(E, cfg)
        worst = max(worst, abs(uncertainty.ho_energy_from_amplitude(Am, cfg) - Em) / Em)
    r(worst <= 0.01, f"Fock-basis coherent states: max rel deviation {worst:.1e} <= 1%")
    ok = all(uncertainty.intensity_calibration(0.5 * N) == 0.5 * (N + 1) for N in range(1, 41))
    r(ok, "two-mode calibration I = A_max + hbar/2 = hbar (N+1)/2 for N = 1..40")
    worst = 0.0
    for N in (6, 12, 18):
        I = 0.5 * (N + 1)
        for th in np.linspace(0.1, 3.0, 7):
            J1, A = uncertainty.spin_coherent_fringe(N, th)
            worst = max(worst, abs(J1 * J1 - ((I - 0.5) ** 2 - A * A)))
    r(worst <= 1e-10, f"spin-coherent fringes satisfy J1^2 = (I - hbar/2)^2 - A^2, max dev {worst:.1e}")
    return CheckResult(7, "calibration identities", r.ok, r.details)


def check_doubleslit():
    r = _Recorder()
    rng = random.Random(11)
    worst = 0.0
    f_ok = True
    for _ in range(200):
        d, L, p0 = rng.uniform(0.1, 10), rng.uniform(10, 1e4), rng.uniform(0.1, 10)
        hbar = rng.uniform(0.1, 2.0)
        g = doubleslit.SlitGeometry(d, L, p0, 1.0)
        x = doubleslit.fringe_period(g, hbar)
        worst = max(worst, abs(x * p0 * d - 2 * math.pi * hbar * L) / (2 * math.pi * hbar * L))
        for F in (0.1, 3.0, 10.0):
            f_ok &= doubleslit.fringe_period(doubleslit.SlitGeometry(d, L, p0, F), hbar) == x
    r(worst <= 1e-12, f"x_mod p0 d = 2 pi hbar L, max rel {worst:.1e}")
    r(f_ok, "fringe period identical for F in {0.1, 1, 3, 10}")
    return CheckResult(8, "double slit", r.ok, r.details)


def check_engine():
    r = _Recorder()
    cfg = DEFAULT_CONFIG
    rng = random.Random(3)
    worst = 0.0
    for _ in range(200):
        E = rng.uniform(0.5, 40.0)
        x = rng.uniform(-0.95, 0.95) * harmonic.turning_point(E, cfg)
        for br in harmonic.branches(cfg):
            worst = max(worst, core.action_time_residual(br, x, E))
    r(worst <= 1e-6, f"dS/dE = arrival time on 200 random points, max rel {worst:.1e}")

    for n in range(1, 7):
        x, sep, ai, rel = crossover_mismatch(n, cfg)
        r(rel <= 0.05, f"n={n}: at x = {x:.4f} separated {sep:+.4f}, Airy {ai:+.4f}, mismatch {100 * rel:.2f}% <= 5%")
    # for an exactly linear turning point the two forms intersect at -1.42
    tp = TurningPoint(V=0.0, gamma=1.0, dV_dB=1.0)
    E = core.AIRY_CROSSOVER
    z = -E
    zeta = 2.0 / 3.0 * abs(z) ** 1.5
    branch = math.cos(zeta - math.pi / 4) / (math.sqrt(math.pi) * abs(z) ** 0.25)
    rel = abs(branch - airy_ai(z)) / airy_ai(z)
    r(rel <= 0.01 and core.regime_select(E, tp) is Regime.SEPARATED_BRANCHES,
      f"linear turning point: two-branch {branch:.4f} vs Ai(-1.42) = {airy_ai(z):.4f}")

    worst = 0.0
    for _ in range(500):
        A, S = rng.uniform(0, 10), rng.uniform(-1e3, 1e3)
        v = core.superpose([core.BranchContribution(A, S), core.BranchContribution(A, -S)])
        worst = max(worst, abs(v.imag))
    r(worst <= 1e-14, f"conjugate pairs: max |Im| = {worst:.1e}")

    xs = np.linspace(-12.0, 8.0, 401)
    ref = np.array([airy_ai_reference(x) for x in xs])
    err = float(np.max(np.abs(airy_ai(xs) - ref)))
    r(err <= 1e-10, f"Ai on [-12, 8] vs 50-digit series: max abs error {err:.1e}")
    return CheckResult(9, "engine invariants", r.ok, r.details)


def check_orthogonality():
    r = _Recorder()
    N = 18
    cfg = twomode.TwoModeConfig(N)
    M = twomode.amplitude_matrix(cfg)
    G = M.T @ M - np.eye(N + 1)
    sep = twomode.regime_matrix(cfg)
    cols = [j for j in range(N + 1) if sep[:, j].all()]
    r(True, f"columns evaluated entirely with separated branches: {len(cols)} of {N + 1}")
    err = float(np.max(np.abs(G)))
    r(err <= 0.15, f"N={N}: max |M^T M - 1| = {err:.4f} <= 0.15 (full matrix, bounds every principal submatrix)")
    worst = 0.0
    for n in range(1, 31):
        X = beam_splitter_matrix_exact(n)
        worst = max(worst, float(np.max(np.abs(X.T @ X - np.eye(n + 1)))))
    r(worst <= 1e-10, f"exact matrices N <= 30: max |X^T X - 1| = {worst:.1e}")
    return CheckResult(10, "approximate orthogonality", r.ok, r.details)


CHECKS = [
    check_spectrum,
    check_fig1,
    check_fig2,
    check_fig3,
    check_hom,
    check_fig4,
    check_calibration,
    check_doubleslit,
    check_engine,
    check_orthogonality,
]


def run_all():
    return [c() for c in CHECKS]
