"""Command-line front end: experiment drivers with reproducible file outputs.

Commands::

    phantom series   --function sawtooth --alpha 1.5708 --k 1 --n 64
    phantom interp   --function linear --n 9 --k 1 --strategy c1 --deriv analytic
    phantom table    --functions linear,sin075,exp002 --budget 20000 --seed 0
    phantom optimize --function linear --n 9 --k 2 --seed 7

Exit codes: 0 success, 2 usage/validation error, 3 numerical failure.
Every output file carries a ``#`` comment header with the run id and is
listed in ``manifest.json`` with its content hash; identical command plus
seed reproduces byte-identical files.  The environment variable
PHANTOM_THREADS caps the table sweep's parallelism.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import importlib.resources
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .extension import TWO_PI, ExtensionConfig, assemble_extended
from .fourier import NumericalError, compute_coefficients, estimate_decay_order, partial_sum
from .functions import make_function
from .optimize import evaluate_candidate, select_phantom_values
from .phantom_nodes import (
    augment_and_interpolate,
    baseline_report,
    data_target,
    node_samples,
    phantom_report,
    plan_grid,
    table_sweep,
)
from .triginterp import SampleSet, epsilon_grid, evaluate, interpolate

_TOOL = "phantomfourier"
_TABLE_FUNCTIONS = ("linear", "sin075", "exp002")
_STRATEGY_CHOICES = ("none", "c0", "c1", "c2", "selected")


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _run_id(command: str, params: dict, seed) -> str:
    payload = json.dumps({"command": command, "params": params, "seed": seed, "version": __version__},
                         sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class RunManifest:
    """Record of one invocation: parameters, seed, and hashed outputs."""

    command: str
    parameters: dict
    seed: int | None
    run_id: str
    version: str = __version__
    outputs: list = field(default_factory=list)


class OutputWriter:
    """Writes files under the output directory and collects content hashes."""

    def __init__(self, out_dir: str, run_id: str):
        self.out_dir = out_dir
        self.run_id = run_id
        self.entries = []
        os.makedirs(out_dir, exist_ok=True)

    def _record(self, name: str, text: str):
        path = os.path.join(self.out_dir, name)
        data = text.encode()
        with open(path, "wb") as fh:
            fh.write(data)
        self.entries.append({"path": name, "sha256": hashlib.sha256(data).hexdigest()})
        return path

    def csv(self, name: str, header: str, rows):
        lines = [f"# {_TOOL} {__version__} run {self.run_id}", header]
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        return self._record(name, "\n".join(lines) + "\n")

    def json(self, name: str, obj: dict):
        obj = {"run_id": self.run_id, **obj}
        return self._record(name, json.dumps(obj, sort_keys=True, indent=2) + "\n")

    def manifest(self, command: str, parameters: dict, seed):
        man = RunManifest(command=command, parameters=parameters, seed=seed, run_id=self.run_id,
                          outputs=list(self.entries) + [{"path": "manifest.json", "sha256": None}])
        text = json.dumps(man.__dict__, sort_keys=True, indent=2) + "\n"
        with open(os.path.join(self.out_dir, "manifest.json"), "wb") as fh:
            fh.write(text.encode())


def _threads() -> int:
    raw = os.environ.get("PHANTOM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _registry_function(name: str):
    return make_function(name)


def cmd_series(args) -> int:
    f = _registry_function(args.function)
    params = {
        "function": args.function, "alpha": args.alpha, "k": args.k, "n": args.n,
        "deriv": args.deriv, "panels": args.panels, "no_blend": args.no_blend,
        "grid": args.grid,
    }
    writer = OutputWriter(args.out, _run_id("series", params, None))

    if args.no_blend:
        series = compute_coefficients(f, args.n, panels=args.panels, seams=())
        label = f"{args.function} (raw periodic continuation)"
    else:
        if args.alpha is None:
            raise ValueError("--alpha is required unless --no-blend is given")
        cfg = ExtensionConfig(args.alpha, smoothness_k=args.k)
        ext = assemble_extended(f, cfg, deriv_source=args.deriv)
        series = compute_coefficients(ext, args.n, panels=args.panels)
        label = f"{args.function} blended (alpha={args.alpha}, k={args.k})"

    rows = [(0, series.a0, 0.0)]
    rows += [(i + 1, float(series.a[i]), float(series.b[i])) for i in range(series.order)]
    writer.csv("coefficients.csv", "n,a_n,b_n", rows)

    ts = np.linspace(0.0, TWO_PI, args.grid)
    sums = partial_sum(series, ts)
    writer.csv("partial_sum_grid.csv", "t,partial_sum", zip(ts.tolist(), sums.tolist()))

    decay = None
    cutoff = None
    if series.order >= 16:
        c = np.hypot(series.a, series.b)
        window_max = float(np.max(c[7:]))
        cutoff = max(1e-14, 1e-3 * window_max)  # drop sinc-factor dips, not real decay
        decay = estimate_decay_order(series, 8, tiny=cutoff)
    writer.json("decay_summary.json", {
        "label": label, "n_terms": series.order, "decay_order": decay,
        "n_min": 8 if decay is not None else None, "near_zero_cutoff": cutoff,
        "parameters": params,
    })
    writer.manifest("series", params, None)
    return 0


def cmd_interp(args) -> int:
    f = _registry_function(args.function)
    strategy = args.strategy.lower()
    params = {
        "function": args.function, "n": args.n, "k": args.k, "strategy": strategy,
        "deriv": args.deriv, "grid": args.grid, "sampling": args.sampling,
        "budget": args.budget, "seeds": args.seeds,
    }
    seed = args.seed if strategy == "selected" else None
    writer = OutputWriter(args.out, _run_id("interp", params, seed))

    base = baseline_report(f, args.n, args.grid, args.sampling)
    summary = {
        "function": args.function, "n": args.n, "strategy": strategy,
        "deriv": args.deriv, "sampling": args.sampling,
        "baseline_max_error": base.max_abs_error, "denominator": base.denom,
    }

    if strategy == "none":
        h0 = TWO_PI / args.n
        samples = node_samples(f, args.n, args.sampling)
        T = interpolate(SampleSet(samples))
        target = data_target(f, h0, args.sampling, args.n)
        interval_end = (args.n - 1) * h0
        summary.update({"max_error": base.max_abs_error, "argmax": base.argmax,
                        "interval_end": interval_end})
    else:
        if args.k is None:
            raise ValueError("--k is required for phantom strategies")
        plan = plan_grid(args.n, args.k, strategy.upper() if strategy != "selected" else "selected",
                         args.deriv, args.sampling)
        samples = node_samples(f, args.n, args.sampling)
        if strategy == "selected":
            result = select_phantom_values(
                f, args.n, args.k, budget=args.budget, seeds=args.seeds, seed=args.seed,
                deriv_source=args.deriv, grid=args.grid, sampling=args.sampling)
            values = np.asarray(result.phantom_values)
            report, _ = phantom_report(f, args.n, args.k, "C0", args.deriv, args.grid,
                                       args.sampling, values=values)
            summary["converged"] = result.converged
            summary["evaluations"] = result.evaluations
        else:
            report, values = phantom_report(f, args.n, args.k, strategy.upper(), args.deriv,
                                            args.grid, args.sampling)
        plan = plan.with_values(values)
        T = augment_and_interpolate(samples, plan)
        target = data_target(f, plan.h, args.sampling, args.n)
        interval_end = plan.interval_end
        summary.update({
            "k": args.k, "max_error": report.max_abs_error, "argmax": report.argmax,
            "interval_end": interval_end,
            "phantom_values": [float(v) for v in values],
            "reduction_factor": base.max_abs_error / report.max_abs_error,
        })

    ts, eps = epsilon_grid(target, T, interval_end, args.grid, base.denom)
    writer.csv("epsilon_grid.csv", "t,epsilon", zip(ts.tolist(), eps.tolist()))
    full = np.linspace(0.0, TWO_PI, args.grid)
    writer.csv("function_grid.csv", "t,value", zip(full.tolist(),
               np.asarray(target(full), dtype=float).tolist()))
    writer.csv("polynomial_grid.csv", "t,value", zip(full.tolist(),
               np.asarray(evaluate(T, full), dtype=float).tolist()))
    writer.json("summary.json", summary)
    writer.manifest("interp", params, seed)
    return 0


def _load_reference_table() -> list[dict]:
    with importlib.resources.files("phantomfourier.data").joinpath("paper_tables.csv").open() as fh:
        return list(csv.DictReader(line for line in fh if not line.startswith("#")))


def cmd_table(args) -> int:
    names = [s.strip() for s in args.functions.split(",") if s.strip()]
    functions = [_registry_function(n) for n in names]
    strategies = tuple(s.strip().upper() if s.strip().lower() != "selected" else "selected"
                       for s in args.strategies.split(",") if s.strip())
    params = {
        "functions": names, "strategies": list(strategies), "deriv": args.deriv,
        "grid": args.grid, "sampling": args.sampling, "budget": args.budget,
    }
    writer = OutputWriter(args.out, _run_id("table", params, args.seed))

    records = table_sweep(
        functions, strategies=strategies, deriv_source=args.deriv, grid=args.grid,
        sampling=args.sampling, budget=args.budget, seed=args.seed, threads=_threads(),
    )
    by_key = {(r.label, r.k, r.N, r.strategy): r for r in records}

    for f in functions:
        for k in (1, 2):
            rows = []
            for N in (5, 9, 13):
                row = [N]
                for strat in strategies:
                    rec = by_key.get((f.label, k, N, strat))
                    row.append("NA" if rec is None or math.isnan(rec.ratio) else _fmt(rec.ratio))
                rows.append(row)
            writer.csv(f"table_{f.label}_k{k}.csv", "N," + ",".join(strategies), rows)

    writer.json("records.json", {"records": [
        {"function": r.label, "N": r.N, "k": r.k, "strategy": r.strategy,
         "error_without": None if math.isnan(r.error_without) else r.error_without,
         "error_with": None if math.isnan(r.error_with) else r.error_with,
         "ratio": None if math.isnan(r.ratio) else r.ratio,
         "note": r.note}
        for r in records
    ]})

    reference = _load_reference_table()
    comp_rows = []
    for ref in reference:
        if ref["function"] not in names:
            continue
        key = (ref["function"], int(ref["k"]), int(ref["N"]), ref["strategy"])
        rec = by_key.get(key)
        ref_val = float(ref["reference_value"])
        if rec is None or math.isnan(rec.ratio):
            comp_rows.append([*key, _fmt(ref_val), "NA", "NA", ref["note"]])
        else:
            dev = (rec.ratio - ref_val) / ref_val
            comp_rows.append([*key, _fmt(ref_val), _fmt(rec.ratio), _fmt(dev), ref["note"]])
    writer.csv("comparison.csv",
               "function,k,N,strategy,reference_value,computed,relative_deviation,note",
               comp_rows)
    writer.manifest("table", params, args.seed)

    computed = sum(1 for r in records if not math.isnan(r.ratio))
    return 0 if computed >= 0.9 * len(records) else 3


def cmd_optimize(args) -> int:
    f = _registry_function(args.function)
    params = {
        "function": args.function, "n": args.n, "k": args.k, "budget": args.budget,
        "seeds": args.seeds, "grid": args.grid, "sampling": args.sampling,
        "eval_values": args.eval_values,
    }
    writer = OutputWriter(args.out, _run_id("optimize", params, args.seed))
    base = baseline_report(f, args.n, args.grid, args.sampling)

    if args.eval_values:
        values = np.array([float(v) for v in args.eval_values.split(",")])
        if values.size != 2 * args.k:
            raise ValueError(f"--eval-values needs {2 * args.k} comma-separated numbers")
        err = evaluate_candidate(f, args.n, args.k, values, args.grid, args.sampling)
        payload = {
            "mode": "evaluate", "function": args.function, "n": args.n, "k": args.k,
            "phantom_values": values.tolist(), "achieved_error": err,
            "baseline_error": base.max_abs_error, "ratio": base.max_abs_error / err,
            "sampling": args.sampling,
        }
    else:
        if args.budget < 2000:
            raise ValueError("--budget must be at least 2000 evaluations")
        result = select_phantom_values(
            f, args.n, args.k, budget=args.budget, seeds=args.seeds, seed=args.seed,
            deriv_source=args.deriv, grid=args.grid, sampling=args.sampling)
        values = np.asarray(result.phantom_values)
        payload = {
            "mode": "search", "function": args.function, "n": args.n, "k": args.k,
            "phantom_values": list(result.phantom_values),
            "achieved_error": result.achieved_error, "baseline_error": result.baseline_error,
            "ratio": result.ratio, "evaluations": result.evaluations,
            "converged": result.converged, "seed": result.seed, "sampling": args.sampling,
        }

    plan = plan_grid(args.n, args.k, "selected", sampling=args.sampling).with_values(values)
    samples = node_samples(f, args.n, args.sampling)
    T = augment_and_interpolate(samples, plan)
    target = data_target(f, plan.h, args.sampling, args.n)
    ts, eps = epsilon_grid(target, T, plan.interval_end, args.grid, base.denom)
    writer.csv("epsilon_grid.csv", "t,epsilon", zip(ts.tolist(), eps.tolist()))
    writer.json("selection.json", payload)
    writer.manifest("optimize", params, args.seed)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phantom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="Fourier coefficients of a blended periodic extension")
    p.add_argument("--function", required=True)
    p.add_argument("--alpha", type=float, default=None, help="phantom region width in radians")
    p.add_argument("--k", type=int, default=1, help="matched smoothness orders at the seams")
    p.add_argument("--n", type=int, default=64, help="truncation order")
    p.add_argument("--deriv", choices=("analytic", "divided_difference"), default="analytic")
    p.add_argument("--panels", type=int, default=4096)
    p.add_argument("--no-blend", action="store_true", help="raw periodic continuation, no extension")
    p.add_argument("--grid", type=int, default=1001)
    p.add_argument("--out", default="./out")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("interp", help="trigonometric interpolation with optional phantom nodes")
    p.add_argument("--function", required=True)
    p.add_argument("--n", type=int, required=True, help="real node count (odd)")
    p.add_argument("--k", type=int, default=None, help="phantom pairs")
    p.add_argument("--strategy", choices=_STRATEGY_CHOICES, default="none")
    p.add_argument("--deriv", choices=("analytic", "divided_difference"), default="analytic")
    p.add_argument("--sampling", choices=("unit", "segment"), default="unit")
    p.add_argument("--grid", type=int, default=2001)
    p.add_argument("--budget", type=int, default=20000)
    p.add_argument("--seeds", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="./out")
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("table", help="reproduce the error-ratio tables")
    p.add_argument("--functions", default=",".join(_TABLE_FUNCTIONS))
    p.add_argument("--strategies", default="C0,C1,C2,selected")
    p.add_argument("--deriv", choices=("analytic", "divided_difference"), default="analytic")
    p.add_argument("--sampling", choices=("unit", "segment"), default="segment")
    p.add_argument("--grid", type=int, default=2001)
    p.add_argument("--budget", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="./out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("optimize", help="minimax search for phantom values")
    p.add_argument("--function", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=20000)
    p.add_argument("--seeds", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deriv", choices=("analytic", "divided_difference"), default="analytic")
    p.add_argument("--sampling", choices=("unit", "segment"), default="unit")
    p.add_argument("--grid", type=int, default=2001)
    p.add_argument("--eval-values", default=None,
                   help="evaluate these comma-separated phantom values instead of searching")
    p.add_argument("--out", default="./out")
    p.set_defaults(func=cmd_optimize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
