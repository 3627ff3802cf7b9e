"""Command-line interface: ``spfc {amp,sweep,design,plan,figure,verify}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import design, sagnac, scattering, sweep, verify
from .errors import SPFCError
from .params import LevelDiagram, SystemParams

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

_PARAM_FLAGS = ("gamma1", "gamma2", "omega1", "omega2", "delta1", "delta2",
                "gamma_a", "gamma_f", "gamma_d")


class UsageError(SPFCError):
    pass


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, default=_json_default, allow_nan=True) + "\n")


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("system parameters (units of gamma2)")
    g.add_argument("--params", type=Path, help="JSON file with SystemParams fields")
    for name in _PARAM_FLAGS:
        g.add_argument("--" + name.replace("_", "-"), dest=name, type=float)
    g.add_argument("--gamma", type=float,
                   help="same intrinsic loss rate on levels a, f and d")


def _params_from(args) -> SystemParams:
    data = {}
    if args.params is not None:
        data.update(json.loads(args.params.read_text(encoding="utf-8")))
    if args.gamma is not None:
        data.update(gamma_a=args.gamma, gamma_f=args.gamma, gamma_d=args.gamma)
    for name in _PARAM_FLAGS:
        v = getattr(args, name)
        if v is not None:
            data[name] = v
    return SystemParams.from_dict(data)


def _pair_dict(pair) -> dict:
    return {"t1": {"re": pair.t1.real, "im": pair.t1.imag},
            "t2": {"re": pair.t2.real, "im": pair.t2.imag}}


def _metrics_dict(pair) -> dict:
    try:
        m = scattering.metrics(pair)
    except SPFCError:
        p1, p2 = abs(pair.t1) ** 2, abs(pair.t2) ** 2
        return {"p_elastic": p1, "p_inelastic": p2, "survival": p1 + p2,
                "fidelity_f": None}
    return {"p_elastic": m.p_elastic, "p_inelastic": m.p_inelastic,
            "survival": m.survival, "fidelity_f": m.fidelity_f}


def cmd_amp(args, out) -> int:
    params = _params_from(args)
    pair = scattering.amplitudes(params, args.delta_a)
    result = {"params": params.to_dict(), "delta_a": args.delta_a,
              **_pair_dict(pair), "metrics": _metrics_dict(pair)}
    if args.sagnac:
        result["sagnac"] = sagnac.interferometer_output(pair, args.theta).to_dict()
    if args.single_direction:
        result["single_direction"] = sagnac.single_direction_output(pair).to_dict()
    _dump(result, out)
    return EXIT_OK


def _write_csv(result, output, out) -> None:
    if output is None:
        sweep.emit_csv(result, out)
    else:
        sweep.emit_csv(result, output)


def cmd_sweep(args, out) -> int:
    if args.spec is not None:
        spec = sweep.SweepSpec.from_json(args.spec.read_text(encoding="utf-8"))
    else:
        spec = sweep.SweepSpec(
            variable=args.variable, start=args.start, stop=args.stop,
            points=args.points, base=_params_from(args), delta_a=args.delta_a,
            outputs=tuple(args.outputs.split(",")))
    _write_csv(sweep.run_sweep(spec), args.output, out)
    return EXIT_OK


def _range(values, name):
    start, stop, n = values
    n = int(n)
    if n < 1 or (n > 1 and not start < stop):
        raise UsageError(f"--{name} expects START STOP N with START < STOP, N >= 1")
    return np.linspace(start, stop, n)


def cmd_design(args, out) -> int:
    if args.delta1_range is None and args.delta2_range is None:
        sol = design.rabi_for_unity(args.delta_a, args.delta1, args.delta2,
                                    args.gamma1, args.gamma2)
        _dump({"delta_a": args.delta_a, "delta1": args.delta1, "delta2": args.delta2,
               "gamma1": args.gamma1, "gamma2": args.gamma2, **sol.to_dict()}, out)
        return EXIT_FAIL if (args.strict and not sol.feasible) else EXIT_OK
    d1 = ([args.delta1] if args.delta1_range is None
          else _range(args.delta1_range, "delta1-range"))
    d2 = ([args.delta2] if args.delta2_range is None
          else _range(args.delta2_range, "delta2-range"))
    fmap = design.feasibility_map(d1, d2, args.gamma1, args.gamma2, args.delta_a)
    _write_csv(fmap, args.output, out)
    return EXIT_FAIL if (args.strict and not fmap.feasible.any()) else EXIT_OK


def cmd_plan(args, out) -> int:
    if args.diagram is not None:
        diagram = LevelDiagram.from_json(args.diagram.read_text(encoding="utf-8"))
    else:
        diagram = LevelDiagram(args.omega_a, args.omega_b, args.omega_c,
                               args.omega_d, args.omega_f)
    plan = design.plan_conversion(args.shift, diagram, args.gamma1, args.gamma2,
                                  args.delta_a, tuple(args.delta1_range), args.points)
    _dump(plan.to_dict(), out)
    return EXIT_FAIL if (args.strict and not plan.feasible) else EXIT_OK


def cmd_figure(args, out) -> int:
    _write_csv(sweep.render_figure(args.name), args.output, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    seed = args.seed
    if args.randomize:
        seed = int(np.random.SeedSequence().entropy % (2 ** 32))
    report = verify.differential_check(args.draws, seed, args.tolerance)
    out.write(report.summary() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spfc",
        description="Single-photon frequency conversion in a Sagnac interferometer.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("amp", help="amplitudes and metrics at one input detuning")
    _add_param_flags(p)
    p.add_argument("--delta-a", dest="delta_a", type=float, default=0.0)
    p.add_argument("--sagnac", action="store_true", help="add interferometer output state")
    p.add_argument("--theta", type=float, default=0.0,
                   help="relative cw/ccw phase for --sagnac")
    p.add_argument("--single-direction", dest="single_direction", action="store_true",
                   help="add one-direction (no coupler) output state")
    p.set_defaults(func=cmd_amp)

    p = sub.add_parser("sweep", help="one-variable sweep to CSV")
    _add_param_flags(p)
    p.add_argument("--spec", type=Path, help="JSON SweepSpec (overrides other flags)")
    p.add_argument("--variable", choices=sweep.VARIABLES, default="delta_a")
    p.add_argument("--start", type=float, default=sweep.DEFAULT_RANGE[0])
    p.add_argument("--stop", type=float, default=sweep.DEFAULT_RANGE[1])
    p.add_argument("--points", type=int, default=sweep.DEFAULT_POINTS)
    p.add_argument("--delta-a", dest="delta_a", type=float, default=0.0,
                   help="fixed input detuning when sweeping another variable")
    p.add_argument("--outputs", default="amplitudes,metrics",
                   help="comma list from amplitudes,metrics,sagnac")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("design", help="Rabi frequencies for t1 = 0")
    p.add_argument("--delta-a", dest="delta_a", type=float, default=3.0)
    p.add_argument("--delta1", type=float, default=0.0)
    p.add_argument("--delta2", type=float, default=0.0)
    p.add_argument("--gamma1", type=float, default=2.0)
    p.add_argument("--gamma2", type=float, default=1.0)
    p.add_argument("--delta1-range", dest="delta1_range", type=float, nargs=3,
                   metavar=("START", "STOP", "N"))
    p.add_argument("--delta2-range", dest="delta2_range", type=float, nargs=3,
                   metavar=("START", "STOP", "N"))
    p.add_argument("--strict", action="store_true", help="exit 1 when infeasible")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("plan", help="laser settings for a target frequency shift")
    p.add_argument("--shift", type=float, required=True,
                   help="target omega_in - omega_out")
    p.add_argument("--diagram", type=Path, help="JSON LevelDiagram")
    for lvl in "abcdf":
        p.add_argument(f"--omega-{lvl}", dest=f"omega_{lvl}", type=float, default=0.0)
    p.add_argument("--delta-a", dest="delta_a", type=float, default=3.0)
    p.add_argument("--gamma1", type=float, default=2.0)
    p.add_argument("--gamma2", type=float, default=1.0)
    p.add_argument("--delta1-range", dest="delta1_range", type=float, nargs=2,
                   default=[-10.0, 10.0], metavar=("START", "STOP"))
    p.add_argument("--points", type=int, default=1001)
    p.add_argument("--strict", action="store_true", help="exit 1 when infeasible")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("figure", help="figure-panel data to CSV")
    p.add_argument("name", choices=sweep.FIGURES)
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="closed form vs. linear-system oracle")
    p.add_argument("--draws", type=int, default=verify.DEFAULT_DRAWS)
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--tolerance", type=float, default=verify.DEFAULT_TOLERANCE)
    p.add_argument("--randomize", action="store_true",
                   help="ignore --seed and draw a fresh one (printed in the summary)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args, out)
    except BrokenPipeError:
        return EXIT_OK
    except (SPFCError, ValueError, json.JSONDecodeError, OSError) as exc:
        sys.stderr.write(f"spfc {args.command}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
