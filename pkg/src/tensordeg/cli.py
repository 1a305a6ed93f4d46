"""Command-line interface.

Subcommands: reduce, verify, decide, hyperdet, complete, gen, demo.
Reports are single JSON documents on stdout with sorted keys; diagnostics go
to stderr.  Every randomized operation requires an explicit --seed, and a
rerun with identical inputs, seed and version produces a byte-identical
report (wall-clock timing is only recorded when --timing is passed).

Exit codes: 0 success / feasible / witness verifies; 1 witness rejected or
infeasible; 2 malformed input or unsupported operation; 3 unknown verdict.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import __version__, completion, degeneracy, failures, hyperdet, reductions
from .exactmath import DimensionError
from .instances import (
    MalformedInstance,
    Tensor3,
    WitnessTriple,
    instance_from_json,
    instance_to_json,
    kind_of,
    verify_witness,
    witness_to_json,
    witness_vectors_from_json,
)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_MALFORMED = 2
EXIT_UNKNOWN = 3

STAGE_ORDER = {"quadratic": 0, "bilinear": 1, "pencil": 2, "tensor": 3}


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_MALFORMED):
        super().__init__(message)
        self.code = code


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise CliError(f"{path} is not valid JSON: {e}")


def _write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _digest(path: str) -> str:
    try:
        with open(path, "rb") as fh:
            return hashlib.sha256(fh.read()).hexdigest()[:16]
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}")


def _load_instance(path: str):
    try:
        return instance_from_json(_read_json(path))
    except MalformedInstance as e:
        raise CliError(f"{path}: {e}")


def _report(command: str, args, inputs: dict[str, str], result: dict,
            seed=None, params: dict | None = None) -> dict:
    report = {
        "command": command,
        "tool": {"name": "tensordeg", "version": __version__},
        "inputs": {path: _digest(path) for path in inputs.values() if path},
        "seed": seed,
        "params": params or {},
        "result": result,
        "timing_ms": None,
    }
    return report


def _emit(report: dict, started: float, timing: bool) -> None:
    if timing:
        report["timing_ms"] = round((time.monotonic() - started) * 1000, 3)
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _parse_format(text: str) -> hyperdet.Format:
    try:
        parts = [int(p) for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError
        return hyperdet.Format(*parts)
    except ValueError:
        raise CliError(f"bad --format {text!r}; expected e.g. 3,2,2")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_reduce(args) -> int:
    inst = _load_instance(args.infile)
    kind = kind_of(inst)
    if STAGE_ORDER[kind] > STAGE_ORDER[args.stage]:
        raise CliError(f"cannot reduce {kind} to earlier stage {args.stage}")

    witness_fields = None
    if args.witness:
        witness_fields = witness_vectors_from_json(_read_json(args.witness))
        try:
            if not verify_witness(inst, witness_fields):
                raise CliError(f"witness does not verify at stage {kind}")
        except (MalformedInstance, DimensionError) as e:
            raise CliError(f"witness invalid at stage {kind}: {e}")

    trace = reductions.ReductionTrace(())
    current = inst
    out_witness = None
    if witness_fields is not None:
        if kind == "quadratic":
            out_witness = witness_fields["x"]
        elif kind == "bilinear":
            out_witness = (witness_fields["x"], witness_fields["y"])
        else:
            out_witness = WitnessTriple(witness_fields["x"], witness_fields["y"],
                                        witness_fields["z"])

    while STAGE_ORDER[kind_of(current)] < STAGE_ORDER[args.stage]:
        k = kind_of(current)
        if k == "quadratic":
            nxt, tr = reductions.quad_to_bilinear(current)
            if out_witness is not None:
                out_witness = reductions.lift_quad_witness(out_witness)
        elif k == "bilinear":
            nxt, tr = reductions.bilinear_to_pencil(current)
            if out_witness is not None:
                x, y = out_witness
                out_witness = reductions.lift_bilinear_witness(x, y, current.r)
        else:
            nxt, tr = reductions.pencil_to_tensor(current)
            # pencil witnesses transport unchanged to the slice tensor
        trace = trace.extend(tr)
        current = nxt

    if out_witness is not None and not isinstance(current, type(inst)):
        fields = witness_to_json(out_witness)
        fields = {k: tuple(Fraction(v) for v in vec) for k, vec in
                  ((kk, fields[kk]) for kk in fields)}
        if not verify_witness(current, fields):
            raise CliError("internal error: lifted witness failed verification",
                           code=EXIT_MALFORMED)

    _write_json(args.out, instance_to_json(current))
    result = {"stage": args.stage, "output": args.out,
              "output_digest": _digest(args.out)}
    if not args.no_trace:
        result["trace"] = trace.to_json()
    if out_witness is not None and args.witness_out:
        _write_json(args.witness_out, witness_to_json(out_witness))
        result["witness_out"] = args.witness_out
        result["witness_digest"] = _digest(args.witness_out)
    report = _report("reduce", args, {"in": args.infile, "witness": args.witness},
                     result)
    _emit(report, args._started, args.timing)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load_instance(args.infile)
    try:
        fields = witness_vectors_from_json(_read_json(args.witness))
        ok = verify_witness(inst, fields)
    except (MalformedInstance, DimensionError) as e:
        raise CliError(f"witness rejected before verification: {e}")
    report = _report("verify", args, {"in": args.infile, "witness": args.witness},
                     {"kind": kind_of(inst), "verified": ok})
    _emit(report, args._started, args.timing)
    return EXIT_OK if ok else EXIT_REJECTED


def _decide_instance(inst, cfg: degeneracy.SearchConfig) -> degeneracy.Verdict:
    from .instances import BilinearInstance, PencilInstance, QuadraticInstance

    if isinstance(inst, Tensor3):
        return degeneracy.decide(inst, cfg)
    if isinstance(inst, QuadraticInstance):
        if inst.m == 1:
            return degeneracy.decide_quadratic_m1(inst.qs[0])
        if inst.n == 2:
            b, _ = reductions.quad_to_bilinear(inst)
            verdict = degeneracy.decide_bilinear_n2(b)
            if verdict.is_feasible and verdict.witness is not None:
                x, y = verdict.witness
                u = reductions.extract_quad_witness(x, y)
                return degeneracy.Verdict(verdict.outcome, witness=u,
                                          certificate=verdict.certificate,
                                          diagnostics=verdict.diagnostics)
            return verdict
        t, _ = reductions.quad_to_tensor(inst)
        return degeneracy.decide(t, cfg)
    if isinstance(inst, BilinearInstance):
        if inst.n == 2:
            return degeneracy.decide_bilinear_n2(inst)
        p, _ = reductions.bilinear_to_pencil(inst)
        t, _ = reductions.pencil_to_tensor(p)
        return degeneracy.decide(t, cfg)
    if isinstance(inst, PencilInstance):
        t, _ = reductions.pencil_to_tensor(inst)
        return degeneracy.decide(t, cfg)
    raise CliError(f"cannot decide instances of type {type(inst).__name__}")


def cmd_decide(args) -> int:
    inst = _load_instance(args.infile)
    cfg = degeneracy.SearchConfig(
        seed=args.seed, restarts=args.restarts,
        max_iterations=args.iterations, tolerance=args.tolerance,
        denominator_bound=args.denominator_bound)
    verdict = _decide_instance(inst, cfg)
    report = _report("decide", args, {"in": args.infile},
                     {"kind": kind_of(inst), "verdict": verdict.to_json()},
                     seed=args.seed, params=cfg.to_json())
    _emit(report, args._started, args.timing)
    if verdict.is_feasible:
        return EXIT_OK
    if verdict.is_infeasible:
        return EXIT_REJECTED
    return EXIT_UNKNOWN


def cmd_hyperdet(args) -> int:
    inst = _load_instance(args.infile)
    if not isinstance(inst, Tensor3):
        raise CliError("hyperdet expects a tensor instance")
    try:
        res = hyperdet.evaluate(inst)
    except hyperdet.UnsupportedFormat as e:
        raise CliError(str(e))
    result = res.to_json()
    if args.degree:
        result["degree"] = hyperdet.hyperdet_degree(hyperdet.Format.of_tensor(inst))
    report = _report("hyperdet", args, {"in": args.infile}, result)
    _emit(report, args._started, args.timing)
    return EXIT_OK


def cmd_complete(args) -> int:
    inst = _load_instance(args.infile)
    if not isinstance(inst, Tensor3):
        raise CliError("complete expects a tensor instance")
    try:
        tpl = completion.build_template(hyperdet.Format.of_tensor(inst))
    except completion.TemplateError as e:
        raise CliError(str(e))
    result: dict = {"template": tpl.to_json()}
    seed = None
    try:
        if args.sz:
            if args.seed is None:
                raise CliError("--sz requires --seed")
            seed = args.seed
            rep = completion.sz_test(inst, tpl, args.trials, args.sample_bound,
                                     args.seed)
            result["sz"] = rep.to_json()
        elif args.hitting:
            point = completion.hitting_attempt(inst, tpl, args.hitting)
            result["hitting"] = {
                "strategy": args.hitting,
                "found": point is not None,
                "point": None if point is None else [str(c) for c in point],
            }
        elif args.pit:
            if args.seed is None:
                raise CliError("--pit requires --seed")
            seed = args.seed
            budget = completion.PitBudget(trials=args.trials, seed=args.seed,
                                          sample_bound=args.sample_bound)
            result["pit"] = completion.completion_pit(inst, tpl, budget).to_json()
        else:
            raise CliError("choose one of --sz, --hitting, --pit")
    except (ValueError, hyperdet.UnsupportedFormat) as e:
        if isinstance(e, CliError):
            raise
        raise CliError(str(e))
    report = _report("complete", args, {"in": args.infile}, result, seed=seed,
                     params={"trials": args.trials, "sample_bound": args.sample_bound})
    _emit(report, args._started, args.timing)
    return EXIT_OK


def cmd_gen(args) -> int:
    if not args.degenerate:
        raise CliError("gen currently supports --degenerate only")
    fmt = _parse_format(args.format)
    t, w = hyperdet.degenerate_generator(fmt, args.seed)
    result = {"format": list(fmt.dims), "verified": True}
    if args.out:
        _write_json(args.out, instance_to_json(t))
        result["out"] = args.out
        result["out_digest"] = _digest(args.out)
    else:
        result["tensor"] = instance_to_json(t)
    if args.witness_out:
        _write_json(args.witness_out, witness_to_json(w))
        result["witness_out"] = args.witness_out
        result["witness_digest"] = _digest(args.witness_out)
    else:
        result["witness"] = witness_to_json(w)
    report = _report("gen", args, {}, result, seed=args.seed,
                     params={"format": args.format})
    _emit(report, args._started, args.timing)
    return EXIT_OK


def cmd_demo(args) -> int:
    if args.which == failures.DIRECT_SUM:
        if args.seed is None:
            raise CliError("demo direct_sum requires --seed")
        demo = failures.demo_direct_sum_failure(args.seed)
    elif args.which == "disjoint_support":
        demo = failures.demo_disjoint_support(args.n)
    elif args.which == failures.VANDERMONDE:
        demo = failures.demo_vandermonde_failure(args.n)
    else:
        raise CliError(f"unknown demo {args.which!r}")
    report = _report("demo", args, {}, demo.to_json(), seed=args.seed,
                     params={"n": args.n})
    _emit(report, args._started, args.timing)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tensordeg",
        description="Exact reductions, decisions and hyperdeterminant "
                    "experiments for 3-tensor degeneracy.")
    parser.add_argument("--timing", action="store_true",
                        help="record wall-clock time in the report (breaks "
                             "byte-for-byte reproducibility)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("reduce", help="run reduction stages, with optional "
                                      "witness transport")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--stage", required=True,
                   choices=["bilinear", "pencil", "tensor"])
    p.add_argument("--out", required=True)
    p.add_argument("--witness")
    p.add_argument("--witness-out")
    p.add_argument("--no-trace", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="verify a witness file against an instance")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--witness", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decide", help="certified feasibility decision")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--restarts", type=int, default=200)
    p.add_argument("--iterations", type=int, default=100)
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--denominator-bound", type=int, default=64)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("hyperdet", help="exact hyperdeterminant of a tensor")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--degree", action="store_true",
                   help="also measure the homogeneity degree")
    p.set_defaults(func=cmd_hyperdet)

    p = sub.add_parser("complete", help="completion-polynomial experiments")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--sz", action="store_true")
    p.add_argument("--hitting", choices=list(completion.STRATEGIES))
    p.add_argument("--pit", action="store_true")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--sample-bound", type=int, default=1 << 20)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument("--degenerate", action="store_true")
    p.add_argument("--format", required=True, help="e.g. 3,2,2")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--witness-out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("demo", help="counterexample constructions")
    p.add_argument("which", choices=[failures.DIRECT_SUM, "disjoint_support",
                                     failures.VANDERMONDE])
    p.add_argument("--seed", type=int)
    p.add_argument("--n", type=int, default=3)
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args._started = time.monotonic()
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except (MalformedInstance, DimensionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
