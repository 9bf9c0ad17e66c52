"""Batch command-line front end.

Subcommands: exact, approx, bounded, mc, sweep, gadget, recover.  Scalar
results print as JSON with exact rational strings plus an advisory decimal
(12 significant digits); sweep emits CSV.  Exit codes: 0 success, 1 I/O or
parse failure, 2 precondition/validation failure (with a machine-readable
reason on stdout).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import instance_io
from ._kernels import backend_name
from .approx import approx_pr_area_ge, approx_pr_perimeter_ge, pr_area_ge_bounded
from .dp import ExactEngine
from .errors import HullProbError
from .geometry import AREA, PERIMETER
from .montecarlo import MCPlan, mc_pr_measure_ge
from .oracle import exact_distribution
from .rational import format_rational, parse_rational, to_decimal_str
from .reductions import (
    SubsetSumInstance,
    build_area_gadget,
    build_perimeter_gadget,
    pad_to_fixed_cardinality,
    recover_area_count,
    recover_perimeter_count,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_PRECONDITION = 2


def _emit(payload: dict) -> None:
    print(json.dumps(payload))


def _pr_payload(value: Fraction) -> dict:
    return {
        "pr": format_rational(value),
        "decimal": float(to_decimal_str(value)),
    }


def _parse_natural(text: str, name: str) -> int:
    value = parse_rational(text)
    if value.denominator != 1 or value < 0:
        raise ValueError(f"{name} must be a natural number, got {text!r}")
    return int(value)


def _cmd_exact(args) -> int:
    inst = instance_io.load_instance(args.input)
    w = _parse_natural(args.w, "--w")
    if args.measure == AREA:
        engine = ExactEngine(inst, AREA)
    else:
        if not args.weights:
            raise ValueError("perimeter mode needs --weights FILE with integer edge weights")
        engine = ExactEngine(inst, PERIMETER, instance_io.load_edge_weights(args.weights))
    _emit(_pr_payload(engine.pr_ge(w)))
    return EXIT_OK


def _cmd_approx(args) -> int:
    inst = instance_io.load_instance(args.input)
    w = parse_rational(args.w)
    eps = parse_rational(args.eps)
    fn = approx_pr_area_ge if args.measure == AREA else approx_pr_perimeter_ge
    sigma = fn(inst, w, eps)
    payload = _pr_payload(sigma)
    payload["sandwich"] = (
        f"Pr[{args.measure} >= {format_rational(w)}] <= pr <= "
        f"Pr[{args.measure} >= {format_rational((1 - eps) * w)}]"
    )
    _emit(payload)
    return EXIT_OK


def _cmd_bounded(args) -> int:
    inst = instance_io.load_instance(args.input)
    w = parse_rational(args.w)
    eps = parse_rational(args.eps)
    bound = parse_rational(args.U)
    sigma = pr_area_ge_bounded(inst, w, eps, bound, merge_coincident=args.merge_coincident)
    payload = _pr_payload(sigma)
    payload["sandwich"] = (
        f"Pr[area >= {format_rational(w + eps)}] <= pr <= "
        f"Pr[area >= {format_rational(w - eps)}]"
    )
    _emit(payload)
    return EXIT_OK


def _cmd_mc(args) -> int:
    inst = instance_io.load_instance(args.input)
    w = parse_rational(args.w)
    plan = MCPlan.make(parse_rational(args.eps), parse_rational(args.delta), args.seed)
    result = mc_pr_measure_ge(inst, args.measure, w, plan)
    _emit({"pr": result.estimate, "N": result.n_trials, "seed": result.master_seed})
    return EXIT_OK


def _sweep_engine(args, inst):
    if args.engine in ("exact", "oracle"):
        if args.engine == "exact":
            if args.measure == AREA:
                engine = ExactEngine(inst, AREA)
            else:
                if not args.weights:
                    raise ValueError("exact perimeter sweeps need --weights FILE")
                engine = ExactEngine(
                    inst, PERIMETER, instance_io.load_edge_weights(args.weights)
                )
            return lambda w: engine.pr_ge(_as_natural(w))
        table = exact_distribution(inst, args.measure)
        return table.pr_ge
    if args.engine == "approx":
        eps = parse_rational(args.eps)
        fn = approx_pr_area_ge if args.measure == AREA else approx_pr_perimeter_ge
        return lambda w: fn(inst, w, eps)
    plan = MCPlan.make(parse_rational(args.eps), parse_rational(args.delta), args.seed)
    return lambda w: Fraction(
        *(lambda r: (r.successes, r.n_trials))(mc_pr_measure_ge(inst, args.measure, w, plan))
    )


def _as_natural(w: Fraction) -> int:
    if w <= 0:
        return 0
    if w.denominator != 1:
        raise ValueError(f"exact engine thresholds must be natural numbers, got {w}")
    return int(w)


def _cmd_sweep(args) -> int:
    inst = instance_io.load_instance(args.input)
    lo_s, hi_s, steps_s = args.grid.split(":")
    lo, hi, steps = parse_rational(lo_s), parse_rational(hi_s), int(steps_s)
    if steps < 1:
        raise ValueError("grid needs at least one step")
    engine = _sweep_engine(args, inst)
    ws = [lo] if steps == 1 else [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]
    lines = ["w,pr"]
    for w in ws:
        pr = engine(w)
        if args.format == "decimal":
            lines.append(f"{to_decimal_str(w)},{to_decimal_str(pr)}")
        else:
            lines.append(f"{format_rational(w)},{format_rational(pr)}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_gadget(args) -> int:
    values = tuple(int(v) for v in args.a.split(","))
    ssi = pad_to_fixed_cardinality(SubsetSumInstance(values, args.t), args.k)
    rho = parse_rational(args.rho)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.mode == AREA:
        gadget = build_area_gadget(ssi, rho)
        sidecar = {
            "mode": AREA,
            "G": gadget.G,
            "b": gadget.b,
            "scale": gadget.scale,
            "t": ssi.target,
            "k": args.k,
            "rho": format_rational(rho),
            "a": list(ssi.values),
        }
    else:
        gadget = build_perimeter_gadget(ssi, rho)
        sidecar = {
            "mode": PERIMETER,
            "L": gadget.L,
            "c": gadget.c,
            "t": ssi.target,
            "k": args.k,
            "rho": format_rational(rho),
            "a": list(ssi.values),
        }
    instance_io.save_instance(gadget.instance, out / "instance.json")
    instance_io.save_sidecar(sidecar, out / "sidecar.json")
    _emit({"written": str(out), "points": gadget.instance.n, "t": ssi.target})
    return EXIT_OK


def _cmd_recover(args) -> int:
    gadget_dir = Path(args.gadget)
    inst = instance_io.load_instance(gadget_dir / "instance.json")
    side = instance_io.load_sidecar(gadget_dir / "sidecar.json")
    mode = side["mode"]
    rho = parse_rational(side["rho"])
    t, k = int(side["t"]), int(side["k"])
    values = tuple(int(v) for v in side["a"])
    ssi = SubsetSumInstance(values, t, k)
    if mode == AREA:
        from .reductions import AreaGadget

        gadget = AreaGadget(inst, ssi, rho, int(side["G"]), int(side["b"]), int(side["scale"]))
        if args.engine == "exact":
            engine = ExactEngine(inst, AREA).pr_ge
        else:
            table = exact_distribution(inst, AREA)
            engine = table.pr_ge
        count = recover_area_count(gadget, t, k, rho, engine)
    else:
        from .reductions import PerimeterGadget

        gadget = PerimeterGadget(inst, ssi, rho, int(side["L"]), int(side["c"]), Fraction(1, 2 * ssi.n))
        if args.engine == "exact":
            raise ValueError("perimeter recovery needs the oracle engine (certified comparisons)")
        table = exact_distribution(inst, PERIMETER)
        engine = table.pr_ge
        count = recover_perimeter_count(gadget, t, k, rho, engine)
    _emit({"count": count})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hullprob",
        description="Tail probabilities of convex-hull area/perimeter over stochastic points",
    )
    parser.add_argument(
        "--version", action="version", version=f"hullprob 0.1.0 ({backend_name()} kernel)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_measure(p):
        p.add_argument("--measure", choices=[AREA, PERIMETER], default=AREA)

    p = sub.add_parser("exact", help="exact tail probability (integer areas / integer edge weights)")
    p.add_argument("input")
    add_measure(p)
    p.add_argument("--w", required=True, help="natural threshold")
    p.add_argument("--weights", help="edge-weight JSON (perimeter mode)")
    p.set_defaults(fn=_cmd_exact)

    p = sub.add_parser("approx", help="sandwich approximation")
    p.add_argument("input")
    add_measure(p)
    p.add_argument("--w", required=True)
    p.add_argument("--eps", required=True)
    p.set_defaults(fn=_cmd_approx)

    p = sub.add_parser("bounded", help="grid-rounded approximation for points in [0,U]^2")
    p.add_argument("input")
    p.add_argument("--w", required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--U", required=True)
    p.add_argument("--merge-coincident", action="store_true")
    p.set_defaults(fn=_cmd_bounded)

    p = sub.add_parser("mc", help="Monte Carlo estimate")
    p.add_argument("input")
    add_measure(p)
    p.add_argument("--w", required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_mc)

    p = sub.add_parser("sweep", help="threshold sweep to CSV")
    p.add_argument("input")
    add_measure(p)
    p.add_argument("--engine", choices=["exact", "oracle", "approx", "mc"], default="oracle")
    p.add_argument("--grid", required=True, help="min:max:steps")
    p.add_argument("--eps", default="1/10")
    p.add_argument("--delta", default="1/100")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", help="edge-weight JSON (exact perimeter)")
    p.add_argument("--format", choices=["rational", "decimal"], default="rational")
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("gadget", help="emit a subset-sum gadget instance + sidecar")
    p.add_argument("mode", choices=[AREA, PERIMETER])
    p.add_argument("--a", required=True, help="comma-separated positive naturals")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rho", default="1/2")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_gadget)

    p = sub.add_parser("recover", help="recover the subset-sum count from a gadget directory")
    p.add_argument("gadget")
    p.add_argument("--engine", choices=["oracle", "exact"], default="oracle")
    p.set_defaults(fn=_cmd_recover)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except HullProbError as exc:
        payload = {"error": type(exc).__name__, "detail": str(exc)}
        witness = getattr(exc, "witness", None) or getattr(exc, "witnesses", None)
        if witness is not None:
            payload["witness"] = witness
        _emit(payload)
        return EXIT_PRECONDITION
    except ValueError as exc:
        _emit({"error": "ValueError", "detail": str(exc)})
        return EXIT_PRECONDITION
    except (OSError, json.JSONDecodeError) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
