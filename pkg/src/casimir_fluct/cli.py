"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
Inputs are SI; reports give SI values plus natural-unit values and carry
``unit_convention: gaussian-alpha``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .fluctuation import (MeasurementWindow, asymptotic_relative, crossover_report,
                          log_relative_two_walls_at_log_offset, mb_mean_speed,
                          relative_fluct_single_wall, relative_fluct_two_walls,
                          transit_time, two_wall_threshold_log_offset)
from .mean_force import mean_force_single_wall, mean_force_two_walls
from .oracle.grids import OracleConvergenceError
from .quantities import CONSTANTS, UNIT_CONVENTION, AtomSpec, far_zone_check, load_species

CSV_COLUMNS = ("param", "mean_force_N", "std_N", "relative", "asym_small_d", "asym_large_d",
               "regime")

#: Offset (m) at which two-wall observability is judged; about a Bohr radius.
BOHR_SCALE_OFFSET = 1e-10

SUITES = ("mean-energy", "mean-force", "variance", "two-wall", "all")
DEFAULT_TOLERANCE = {"mean-energy": 0.01, "mean-force": 0.01, "variance": 0.02, "two-wall": 0.01}


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


def _finite(v):
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else None


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _emit(args, text):
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(command, **body):
    return {"command": command, "unit_convention": UNIT_CONVENTION, **body}


def _atom(args, required=True):
    if getattr(args, "config", None):
        return load_species(args.config, getattr(args, "species", None))
    if getattr(args, "alpha", None) is not None:
        kw = dict(omega0=args.omega0, label="cli")
        if args.alpha_convention == "si":
            return AtomSpec.from_si(args.alpha, **kw)
        return AtomSpec(args.alpha, **kw)
    if required:
        raise UsageError("provide --alpha or --config")
    return None


def _atom_dict(atom):
    return {"label": atom.label, "alpha_gaussian_m3": atom.alpha_static,
            "omega0_rad_s": atom.omega0}


def _force_dict(fv, wall_note):
    direction = None
    if fv.value != 0:
        direction = wall_note
    return {"value_N": fv.value, "natural": fv.natural, "natural_unit_N": fv.scales.force_scale,
            "natural_length_m": fv.scales.length_scale,
            "log_magnitude": _finite(fv.log_magnitude), "direction": direction}


def _regime(x):
    if x >= 10:
        return "small_d"
    if x <= 0.1:
        return "large_d"
    return "crossover"


def _single_wall_row(atom, d, T):
    window = MeasurementWindow(T)
    F = mean_force_single_wall(atom, d)
    st = relative_fluct_single_wall(atom, d, window)
    cT = CONSTANTS.c * T
    return {
        "mean_force_N": F.value,
        "std_N": st.std,
        "relative": st.relative,
        "log_relative": st.log_relative,
        "asym_small_d": asymptotic_relative("small_d", d, cT),
        "asym_large_d": asymptotic_relative("large_d", d, cT),
        "x": st.x,
        "regime": _regime(st.x),
    }


# --- subcommands -----------------------------------------------------------

def cmd_force(args):
    atom = _atom(args)
    if args.two_walls:
        if args.gap is None or args.offset is None:
            raise UsageError("--two-walls needs --gap and --offset")
        fv = mean_force_two_walls(atom, args.gap, args.offset)
        note = "attractive (toward the nearer wall)"
        geom = {"kind": "two_walls", "gap_m": args.gap, "offset_m": args.offset}
        fz = far_zone_check(atom, args.gap / 2 - abs(args.offset))
    else:
        if args.distance is None:
            raise UsageError("--single needs --distance")
        fv = mean_force_single_wall(atom, args.distance)
        note = "attractive (toward the wall)"
        geom = {"kind": "single_wall", "distance_m": args.distance}
        fz = far_zone_check(atom, args.distance)
    if fz.status is False:
        print(f"warning: far-zone margin d*omega0/c = {fz.ratio:.3g} is below {fz.threshold:g}",
              file=sys.stderr)
    return _report("force", geometry=geom, atom=_atom_dict(atom),
                   mean_force=_force_dict(fv, note),
                   far_zone={"status": fz.label, "ratio": fz.ratio, "threshold": fz.threshold})


def cmd_fluct(args):
    window = MeasurementWindow(args.time)
    if args.two_walls:
        if args.gap is None or args.offset is None:
            raise UsageError("--two-walls needs --gap and --offset")
        if args.offset == 0:
            raise ValueError("offset 0: the mean force vanishes there, so the relative "
                             "fluctuation diverges")
        st = relative_fluct_two_walls(args.gap, args.offset, window)
        body = {
            "geometry": {"kind": "two_walls", "gap_m": args.gap, "offset_m": args.offset},
            "time_s": args.time,
            "cT_over_L": st.x,
            "relative": st.relative,
            "log_relative": st.log_relative,
            "log10_relative": st.log_relative / math.log(10),
            "valid": st.valid,
            "notes": [],
        }
        if st.underflow:
            body["notes"].append("underflow, see log field")
        if not st.valid:
            body["notes"].append("cT/L < 10: simplified two-wall expression outside its range")
        return _report("fluct", **body)
    atom = _atom(args)
    if args.distance is None:
        raise UsageError("--single needs --distance")
    row = _single_wall_row(atom, args.distance, args.time)
    return _report("fluct", geometry={"kind": "single_wall", "distance_m": args.distance},
                   atom=_atom_dict(atom), time_s=args.time, **row)


def _sweep_values(args):
    if args.points < 1:
        raise ValueError("sweep needs at least one point")
    if not (args.start > 0 and args.stop > 0):
        raise ValueError("sweep range must be positive")
    if args.points == 1:
        return [args.start]
    if not args.stop > args.start:
        raise ValueError("sweep range must satisfy start < stop")
    if args.spacing == "log":
        return [float(v) for v in np.geomspace(args.start, args.stop, args.points)]
    return [float(v) for v in np.linspace(args.start, args.stop, args.points)]


def cmd_scan(args):
    atom = _atom(args)
    values = _sweep_values(args)
    if args.param == "distance":
        if args.time is None:
            raise UsageError("scan over distance needs --time")
        job = lambda v: _single_wall_row(atom, v, args.time)
    else:
        if args.distance is None:
            raise UsageError("scan over time needs --distance")
        job = lambda v: _single_wall_row(atom, args.distance, v)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        rows = list(pool.map(job, values))
    for v, r in zip(values, rows):
        r["param"] = v
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in rows:
            w.writerow([r[c] if isinstance(r[c], str) else repr(float(r[c])) for c in CSV_COLUMNS])
        print(f"# unit_convention: {UNIT_CONVENTION}; param is {args.param} "
              f"({'m' if args.param == 'distance' else 's'})", file=sys.stderr)
        return buf.getvalue()
    fixed = {"time_s": args.time} if args.param == "distance" else {"distance_m": args.distance}
    return _report("scan", param=args.param, fixed=fixed, atom=_atom_dict(atom),
                   columns=list(CSV_COLUMNS), rows=rows)


def cmd_crossover(args):
    res = crossover_report(args.distance)
    return _report("crossover", distance_m=args.distance, T_star_s=res.T, x_star=res.x,
                   d_over_cT=res.d_over_cT, residual=res.residual,
                   T_small_d_asymptotic_s=res.T_small_d, T_large_d_asymptotic_s=res.T_large_d)


def cmd_experiment(args):
    if args.speed is not None:
        speed = args.speed
        source = "given"
    else:
        mass = args.mass
        if mass is None and args.config:
            mass = load_species(args.config, args.species).mass_kg
        if mass is None or args.temperature is None:
            raise UsageError("provide --speed, or --temperature with --mass (or a species "
                             "config carrying mass_kg)")
        speed = mb_mean_speed(mass, args.temperature)
        source = "maxwell-boltzmann"
    T = transit_time(args.cavity_length, speed)
    window = MeasurementWindow(T)
    L = args.gap
    log_thr = two_wall_threshold_log_offset(L, window)
    offsets = np.geomspace(args.min_offset, 0.49 * L, args.points)
    sweep = []
    for d in offsets:
        lr = log_relative_two_walls_at_log_offset(L, math.log(d), window)
        sweep.append({"offset_m": float(d), "log_relative": lr,
                      "log10_relative": lr / math.log(10)})
    at_bohr = log_relative_two_walls_at_log_offset(L, math.log(BOHR_SCALE_OFFSET), window)
    observable = log_thr >= math.log(BOHR_SCALE_OFFSET)
    return _report(
        "experiment",
        cavity_length_m=args.cavity_length,
        mean_speed_m_s=speed,
        speed_source=source,
        time_s=T,
        gap_m=L,
        cT_over_L=CONSTANTS.c * T / L,
        threshold_offset_log=log_thr,
        threshold_offset_log10=log_thr / math.log(10),
        threshold_offset_m=math.exp(log_thr),
        log_relative_at_bohr_scale=at_bohr,
        log10_relative_at_bohr_scale=at_bohr / math.log(10),
        bohr_scale_offset_m=BOHR_SCALE_OFFSET,
        verdict="observable" if observable else "hardly observable",
        offset_sweep=sweep,
    )


def _verify_cases(suite, atom):
    from .fluctuation import MeasurementWindow as Window
    from .oracle import (mean_energy_modesum, mean_force_modesum, two_wall_force_modesum,
                         variance_modesum)
    if suite == "mean-energy":
        yield lambda: mean_energy_modesum(atom, 1.0)
        yield lambda: mean_energy_modesum(atom, 2.0)
    elif suite == "mean-force":
        yield lambda: mean_force_modesum(atom, 1.0)
        yield lambda: mean_force_modesum(atom, 2.0)
    elif suite == "variance":
        for x in (0.1, 1.0, 10.0):
            yield lambda x=x: variance_modesum(atom, 1.0, Window(x / CONSTANTS.c))
    elif suite == "two-wall":
        for frac in (0.25, -0.25, 0.1, 0.4):
            yield lambda f=frac: two_wall_force_modesum(atom, 1.0, f)


def cmd_verify(args):
    atom = _atom(args, required=False) or AtomSpec(1.0, label="unit")
    suites = SUITES[:-1] if args.suite == "all" else (args.suite,)
    results, worst = [], None
    for suite in suites:
        tol = args.tolerance if args.tolerance is not None else DEFAULT_TOLERANCE[suite]
        for case in _verify_cases(suite, atom):
            try:
                rep = case()
            except OracleConvergenceError as exc:
                entry = {"suite": suite, "tolerance": tol, "passed": False,
                         "error": str(exc), "trace": exc.trace}
                results.append(entry)
                print(f"FAIL {suite} {exc}", file=sys.stderr)
                worst = (math.inf, entry)
                continue
            ok = rep.passed(tol)
            entry = {"suite": suite, "tolerance": tol, "passed": ok, "report": rep.to_dict()}
            results.append(entry)
            print(f"{'PASS' if ok else 'FAIL'} {suite} {rep.quantity} {rep.params} "
                  f"rel_err={rep.relative_error:.3e} tol={tol:g}", file=sys.stderr)
            if worst is None or rep.relative_error / tol > worst[0]:
                worst = (rep.relative_error / tol, entry)
    out = _report("verify", suite=args.suite, passed=all(r["passed"] for r in results),
                  results=results)
    if not out["passed"]:
        _emit(args, dumps(out))
        print("worst case:\n" + dumps(worst[1]), file=sys.stderr)
        raise VerificationFailed()
    return out


# --- parser ----------------------------------------------------------------

def _add_atom(p):
    g = p.add_argument_group("atom")
    g.add_argument("--alpha", type=float, help="static polarizability")
    g.add_argument("--alpha-convention", choices=("gaussian", "si"), default="gaussian",
                   help="gaussian: volume in m^3 (default); si: C m^2/V")
    g.add_argument("--omega0", type=float, help="transition angular frequency (rad/s)")
    g.add_argument("--config", help="species JSON file")
    g.add_argument("--species", help="key inside the species file")


def _add_geometry(p):
    m = p.add_mutually_exclusive_group(required=True)
    m.add_argument("--single", action="store_true", help="one wall at distance --distance")
    m.add_argument("--two-walls", action="store_true", help="walls at +-gap/2, atom at --offset")
    p.add_argument("--distance", type=float, help="atom-wall distance (m)")
    p.add_argument("--gap", type=float, help="wall separation L (m)")
    p.add_argument("--offset", type=float, help="offset from the midplane (m)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="casimir-fluct",
        description="Casimir-Polder mean force and its time-averaged quantum fluctuation.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--output", "-o", default="-", help="output file (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("force", help="mean force")
    _add_geometry(p)
    _add_atom(p)
    p.set_defaults(func=cmd_force)

    p = sub.add_parser("fluct", help="force fluctuation for a measurement time")
    _add_geometry(p)
    _add_atom(p)
    p.add_argument("--time", type=float, required=True, help="integration time T (s)")
    p.set_defaults(func=cmd_fluct)

    p = sub.add_parser("scan", help="single-wall sweep over distance or time")
    _add_atom(p)
    p.add_argument("--param", choices=("distance", "time"), default="distance")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--spacing", choices=("log", "linear"), default="log")
    p.add_argument("--distance", type=float, help="fixed distance when sweeping time (m)")
    p.add_argument("--time", type=float, help="fixed time when sweeping distance (s)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("crossover", help="time at which the relative fluctuation equals 1")
    p.add_argument("--distance", type=float, required=True)
    p.set_defaults(func=cmd_crossover)

    p = sub.add_parser("experiment", help="two-wall beam observability estimate")
    p.add_argument("--cavity-length", type=float, required=True, help="m")
    p.add_argument("--gap", type=float, required=True, help="wall separation (m)")
    p.add_argument("--speed", type=float, help="mean atom speed (m/s)")
    p.add_argument("--mass", type=float, help="atom mass (kg)")
    p.add_argument("--temperature", type=float, help="beam temperature (K)")
    p.add_argument("--config", help="species JSON file (for mass_kg)")
    p.add_argument("--species")
    p.add_argument("--points", type=int, default=25, help="offsets in the sweep")
    p.add_argument("--min-offset", type=float, default=1e-12, help="smallest offset (m)")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("verify", help="run oracle cross-checks")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--tolerance", type=float, help="override the relative tolerance")
    _add_atom(p)
    p.set_defaults(func=cmd_verify)
    return parser


_NEGATIVE_FLOAT = re.compile(r"^-(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?$")


def _attach_negative_values(argv):
    """argparse reads ``--offset -2e-7`` as two options; rewrite it as ``--offset=-2e-7``."""
    out = []
    for tok in argv:
        prev = out[-1] if out else ""
        if _NEGATIVE_FLOAT.match(tok) and prev.startswith("--") and "=" not in prev:
            out[-1] = f"{prev}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        out = args.func(args)
    except VerificationFailed:
        return 1
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    _emit(args, out if isinstance(out, str) else dumps(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
