"""Command-line front end: semiclassical versus exact tables as CSV or JSON.

Every table starts with a ``#``-prefixed JSON line describing the run
(command, parameters, units, version).  The line holds no timestamp, so
re-running a command reproduces the file byte for byte; the timestamp
goes into a ``.manifest.json`` file written next to any output file.

Exit codes: 0 success, 2 usage or precondition error, 3 quantization
failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone

from . import __version__, doubleslit, harmonic, twomode, uncertainty
from .core import Regime
from .errors import DomainError, QuantizationError
from .harmonic import OscillatorConfig
from .specfun import beam_splitter_amplitude_exact, ho_eigenfunction_exact

__all__ = [
    "main",
    "build_parser",
    "ho_wavefunction_rows",
    "ho_photons_rows",
    "twomode_rows",
    "quantize_rows",
    "doubleslit_record",
    "calibrate_record",
]

DIGITS = 12
EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3
COMPARISON_COLUMNS = ["abscissa", "semiclassical", "exact", "regime", "abs_error"]


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if v == 0.0:
            return "0"  # also folds -0.0
        return format(v, f".{DIGITS}g")
    return str(v)


def _json_value(v):
    if isinstance(v, float) and not isinstance(v, bool):
        if not math.isfinite(v):
            return None
        return 0.0 if v == 0.0 else float(format(v, f".{DIGITS}g"))
    return v


def _comparison(abscissa, sc, ex, regime):
    return {
        "abscissa": abscissa,
        "semiclassical": sc,
        "exact": ex,
        "regime": regime.value if isinstance(regime, Regime) else regime,
        "abs_error": None if ex is None else abs(sc - ex),
    }


# -- table builders -------------------------------------------------------

def ho_wavefunction_rows(n, x_min, x_max, steps, cfg):
    if steps < 2:
        raise DomainError("--steps must be at least 2")
    if not x_max > x_min:
        raise DomainError("--x-max must exceed --x-min")
    if n < 0:
        raise DomainError("--n must be non-negative")
    rows = []
    for i in range(steps):
        x = x_min + (x_max - x_min) * i / (steps - 1)
        sc = harmonic.wavefunction(n, x, cfg)
        ex = ho_eigenfunction_exact(n, x, cfg)
        reg = harmonic.wavefunction_regime(n, abs(x), cfg) if x != 0 else Regime.SEPARATED_BRANCHES
        rows.append(_comparison(x, sc, ex, reg))
    return rows


def ho_photons_rows(x, n_max, cfg, dx=None):
    """P(n) = |<x|n>|^2 as a density per unit x, or times ``dx`` when given."""
    if n_max < 0:
        raise DomainError("--n-max must be non-negative")
    if dx is not None and not dx > 0:
        raise DomainError("--dx must be positive")
    scale = 1.0 if dx is None else dx
    rows = []
    for n in range(n_max + 1):
        sc = harmonic.photon_probability(x, n, cfg) * scale
        ex = ho_eigenfunction_exact(n, x, cfg) ** 2 * scale
        reg = harmonic.wavefunction_regime(n, abs(x), cfg) if x != 0 else Regime.SEPARATED_BRANCHES
        rows.append(_comparison(n, sc, ex, reg))
    return rows


def twomode_rows(N, m, axis, hbar=1.0, patch="symmetric"):
    """Scan the free index with m1 (``axis="input"``) or m2 (``axis="output"``) held at m."""
    cfg = twomode.TwoModeConfig(N, hbar)
    rows = []
    for free in twomode.lattice(N):
        m1, m2 = (m, free) if axis == "input" else (free, m)
        sc = twomode.probability(m2, m1, cfg, patch)
        ex = beam_splitter_amplitude_exact(N, m1, m2) ** 2
        p = twomode.SpinPoint.from_quantum_numbers(m1, m2, cfg)
        rows.append(_comparison(free, sc, ex, twomode.regime(p, cfg, patch)))
    return rows


def quantize_rows(system, levels, cfg):
    if system != "ho":
        raise DomainError(f"unknown system {system!r}; only 'ho' is available")
    if levels < 0:
        raise DomainError("--levels must be non-negative")
    if levels == 0:
        return []
    Es = harmonic.energy_levels(levels - 1, cfg)
    return [{"n": n, "E": E, "deviation": abs(E - cfg.quantum * (n + 0.5))} for n, E in enumerate(Es)]


def doubleslit_record(d, L, p0, F, hbar=1.0):
    g = doubleslit.SlitGeometry(d, L, p0, F)
    tp, tm = doubleslit.arrival_times(g)
    return [{
        "t_plus": tp,
        "t_minus": tm,
        "x_mod": doubleslit.fringe_period(g, hbar),
        "x_mod_from_times": doubleslit.fringe_period_from_times(g, hbar),
    }]


def calibrate_record(system, cfg, amplitude=None, photons=None, round_trip=False):
    if system == "ho":
        if amplitude is None:
            raise DomainError("calibrate --system ho needs --amplitude")
        A = amplitude
        rec = {
            "system": "ho",
            "amplitude": A,
            "energy_rough": 0.5 * cfg.k * A * A,
            "energy_corrected": uncertainty.ho_energy_from_amplitude(A, cfg),
            "zero_point_offset": 0.5 * cfg.quantum,
        }
        if round_trip:
            E = rec["energy_corrected"]
            if E > 0.5 * cfg.quantum:
                b = uncertainty.coherent_budget(E, cfg)
                measured = uncertainty.ho_expectation_forward(0.0, E, b, cfg)
                back = uncertainty.ho_correct(measured, 0.0, E, b, cfg)
                rec["measured_amplitude"] = measured
                rec["round_trip_error"] = abs(back - uncertainty.ho_amplitude(E, cfg))
            else:
                rec["measured_amplitude"] = 0.0
                rec["round_trip_error"] = 0.0
        return [rec]
    if system == "twomode":
        if photons is None:
            raise DomainError("calibrate --system twomode needs --photons")
        if int(photons) != photons or photons < 1:
            raise DomainError("--photons must be a positive integer")
        hbar = cfg.hbar
        A_max = 0.5 * hbar * photons
        I = uncertainty.intensity_calibration(A_max, hbar)
        rec = {"system": "twomode", "photons": photons, "A_max": A_max, "I": I,
               "zero_point_offset": 0.5 * hbar}
        if round_trip:
            worst = 0.0
            for m1 in twomode.lattice(photons):
                J1 = m1 * hbar
                measured = uncertainty.twomode_expectation_forward(0.0, J1, photons, hbar)
                back = uncertainty.twomode_correct(measured, 0.0, J1, photons, hbar)
                worst = max(worst, abs(back - math.sqrt(I * I - J1 * J1)))
            rec["round_trip_error"] = worst
        return [rec]
    raise DomainError(f"unknown system {system!r}; choose 'ho' or 'twomode'")


# -- output -----------------------------------------------------------------

def _render(rows, columns, manifest, fmt):
    if fmt == "json":
        doc = {"manifest": manifest,
               "records": [{c: _json_value(r.get(c)) for c in columns} for r in rows]}
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    buf.write("# " + json.dumps(manifest, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def _emit(args, rows, columns, parameters, units):
    manifest = {
        "command": args.command,
        "parameters": parameters,
        "units": units,
        "version": __version__,
    }
    text = _render(rows, columns, manifest, args.format)
    path = args.output
    out_dir = os.environ.get("OUTPUT_DIR")
    if path is None and out_dir:
        path = os.path.join(out_dir, f"{args.command}.{args.format}")
    if path is None:
        sys.stdout.write(text)
        return
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    side = dict(manifest, timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
                data_file=os.path.basename(path), format=args.format)
    with open(path + ".manifest.json", "w") as fh:
        json.dump(side, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(path)


def _oscillator(args):
    hbar, omega, k = args.units
    return OscillatorConfig(k=k, omega=omega, hbar=hbar)


def _units_dict(args):
    hbar, omega, k = args.units
    return {"hbar": hbar, "omega": omega, "k": k}


def _half_integer(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number")
    if not math.isfinite(v) or abs(2 * v - round(2 * v)) > 1e-9:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer or half-integer")
    return round(2 * v) / 2


# -- commands -----------------------------------------------------------------

def _cmd_ho_wavefunction(args):
    cfg = _oscillator(args)
    rows = ho_wavefunction_rows(args.n, args.x_min, args.x_max, args.steps, cfg)
    params = {"n": args.n, "x_min": args.x_min, "x_max": args.x_max, "steps": args.steps}
    _emit(args, rows, COMPARISON_COLUMNS, params, _units_dict(args))


def _cmd_ho_photons(args):
    cfg = _oscillator(args)
    rows = ho_photons_rows(args.x, args.n_max, cfg, args.dx)
    params = {"x": args.x, "n_max": args.n_max, "dx": args.dx}
    _emit(args, rows, COMPARISON_COLUMNS, params, _units_dict(args))


def _cmd_twomode(args):
    hbar = args.units[0]
    rows = twomode_rows(args.photons, args.m, args.axis, hbar, args.patch)
    params = {"photons": args.photons, "m": args.m, "axis": args.axis, "patch": args.patch}
    _emit(args, rows, COMPARISON_COLUMNS, params, _units_dict(args))


def _cmd_quantize(args):
    cfg = _oscillator(args)
    rows = quantize_rows(args.system, args.levels, cfg)
    params = {"system": args.system, "levels": args.levels}
    _emit(args, rows, ["n", "E", "deviation"], params, _units_dict(args))


def _cmd_doubleslit(args):
    rows = doubleslit_record(args.d, args.L, args.p0, args.F, args.units[0])
    params = {"d": args.d, "L": args.L, "p0": args.p0, "F": args.F}
    _emit(args, rows, list(rows[0]), params, _units_dict(args))


def _cmd_calibrate(args):
    cfg = _oscillator(args)
    rows = calibrate_record(args.system, cfg, args.amplitude, args.photons, args.round_trip)
    params = {"system": args.system, "amplitude": args.amplitude, "photons": args.photons,
              "round_trip": args.round_trip}
    _emit(args, rows, list(rows[0]), params, _units_dict(args))


def _cmd_compare_all(args):
    from .acceptance import run_all

    results = run_all()
    for res in results:
        print(res.line())
        if args.verbose or not res.passed:
            for d in res.details:
                print("    " + d)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_OK if not failed else 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--units", nargs=3, type=float, default=[1.0, 1.0, 2.0],
                        metavar=("HBAR", "OMEGA", "K"),
                        help="unit system (default 1 1 2, i.e. k = 2 hbar omega)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", default=None,
                        help="write to this file (default: stdout, or $OUTPUT_DIR/<command>.<format>)")

    p = argparse.ArgumentParser(prog="arrivalaction",
                                description="Semiclassical amplitudes from arrival times, "
                                            "compared against exact results.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ho-wavefunction", parents=[common], help="oscillator eigenfunction on an x grid")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--x-min", type=float, default=-3.0)
    s.add_argument("--x-max", type=float, default=3.0)
    s.add_argument("--steps", type=int, default=601)
    s.set_defaults(func=_cmd_ho_wavefunction, subparser=s)

    s = sub.add_parser("ho-photons", parents=[common], help="photon-number distribution of a quadrature eigenstate")
    s.add_argument("--x", type=float, required=True)
    s.add_argument("--n-max", type=int, default=40)
    s.add_argument("--dx", type=float, default=None, help="report probabilities for a bin of width dx")
    s.set_defaults(func=_cmd_ho_photons, subparser=s)

    s = sub.add_parser("twomode", parents=[common], help="N-photon beam-splitter statistics")
    s.add_argument("--photons", type=int, required=True)
    s.add_argument("--m", type=_half_integer, required=True, help="the fixed quantum number")
    s.add_argument("--axis", choices=("input", "output"), default="input",
                   help="which index is held at --m (default: the input m1)")
    s.add_argument("--patch", choices=twomode.PATCH_RULES, default="symmetric")
    s.set_defaults(func=_cmd_twomode, subparser=s)

    s = sub.add_parser("quantize", parents=[common], help="energy levels from the quantization condition")
    s.add_argument("--system", default="ho")
    s.add_argument("--levels", type=int, default=10)
    s.set_defaults(func=_cmd_quantize, subparser=s)

    s = sub.add_parser("doubleslit", parents=[common], help="arrival times and fringe period")
    s.add_argument("--d", type=float, required=True)
    s.add_argument("--L", type=float, required=True)
    s.add_argument("--p0", type=float, required=True)
    s.add_argument("--F", type=float, default=1.0)
    s.set_defaults(func=_cmd_doubleslit, subparser=s)

    s = sub.add_parser("calibrate", parents=[common], help="uncertainty-corrected relations")
    s.add_argument("--system", choices=("ho", "twomode"), required=True)
    s.add_argument("--amplitude", type=float, default=None)
    s.add_argument("--photons", type=int, default=None)
    s.add_argument("--round-trip", action="store_true")
    s.set_defaults(func=_cmd_calibrate, subparser=s)

    s = sub.add_parser("compare-all", help="run every acceptance check")
    s.add_argument("--verbose", "-v", action="store_true")
    s.set_defaults(func=_cmd_compare_all, subparser=s)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if hasattr(args, "units"):
            OscillatorConfig(k=args.units[2], omega=args.units[1], hbar=args.units[0])
        code = args.func(args)
    except QuantizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DomainError as exc:
        args.subparser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
