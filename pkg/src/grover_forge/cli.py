"""Command-line entry points: synth, simulate, compare.

Exit codes: 0 success, 2 validation error, 3 simulator limit exceeded,
4 gray-code permutation validation failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import complexity, engine
from .errors import PermutationValidationError, SimulatorLimitError, ValidationError
from .ir import save_circuit
from .lowering import lower
from .qasm import to_qasm
from .reduced import build_pi_sigma, build_U_tilde
from .synth import build_oracle, build_U
from .targets import TargetSet, parse_target_file

DEFAULT_MAX_QUBITS = 22


def _max_qubits() -> int:
    raw = os.environ.get("GROVER_FORGE_MAX_QUBITS")
    if raw is None:
        return DEFAULT_MAX_QUBITS
    try:
        return int(raw)
    except ValueError as exc:
        raise ValidationError(
            f"bad GROVER_FORGE_MAX_QUBITS value {raw!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grover-forge",
        description="Synthesize, simulate, and cost multi-target search "
                    "oracles.")
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="emit a circuit as JSON")
    synth.add_argument("--targets", required=True, help="target-set file")
    synth.add_argument("--variant", required=True,
                       choices=["u", "u-tilde", "pi-sigma", "oracle",
                                "oracle-conv"])
    synth.add_argument("--out", required=True, help="circuit JSON path")
    synth.add_argument("--qasm", help="also write a lowered OpenQASM file")
    synth.add_argument("--mode", choices=["paper", "exact"], default="paper",
                       help="permutation construction (pi-sigma only)")

    sim = sub.add_parser("simulate", help="run search iterations")
    sim.add_argument("--targets", required=True)
    sim.add_argument("--variant", required=True,
                     choices=list(engine.VARIANTS))
    sim.add_argument("--k", default="auto",
                     help="iteration count, or 'auto' for the analytic "
                          "optimum")
    sim.add_argument("--mode", choices=["paper", "exact", "auto"],
                     default="auto")
    sim.add_argument("--json", action="store_true", dest="as_json")
    sim.add_argument("--amplitudes", action="store_true",
                     help="include final amplitudes in the JSON report")

    cmp_ = sub.add_parser("compare", help="cost comparison / crossover sweep")
    cmp_.add_argument("--targets")
    cmp_.add_argument("--n", type=int, help="qubit count (with --s)")
    cmp_.add_argument("--s", type=int, help="target count (with --n)")
    cmp_.add_argument("--k", type=int, help="iteration count for the report")
    cmp_.add_argument("--sweep", nargs=2, metavar=("n=<list>", "gamma=<grid>"),
                      help="emit CSV rows, e.g. n=10,100,1000 "
                           "gamma=0.05:0.95:0.01")
    cmp_.add_argument("--json", action="store_true", dest="as_json")
    cmp_.add_argument("--out", help="write CSV/JSON here instead of stdout")
    return parser


def _load_targets(path) -> TargetSet:
    try:
        return parse_target_file(path)
    except OSError as exc:
        raise ValidationError(f"cannot read target file: {exc}") from exc


def _cmd_synth(args) -> int:
    targets = _load_targets(args.targets)
    if args.variant == "u":
        circuit = build_U(targets)
        bound = complexity.bound_U(targets.n, targets.size)
    elif args.variant == "u-tilde":
        circuit = build_U_tilde(targets.size, targets.n)
        from .reduced import canonical_targets
        bound = complexity.bound_U_tilde(canonical_targets(targets)[1])
    elif args.variant == "pi-sigma":
        circuit, plan = build_pi_sigma(targets, args.mode)
        bound = complexity.bound_pi(targets.n, targets.size)
        plan_path = args.out + ".plan.json"
        with open(plan_path, "w", encoding="utf-8") as fh:
            json.dump(plan.to_json(), fh, indent=1)
    elif args.variant == "oracle":
        circuit = build_oracle(targets)
        bound = None
    else:
        circuit = engine.build_O_conv(targets)
        bound = targets.size * (2 * targets.n
                                + complexity.DEFAULT_MODEL(targets.n - 1))
    save_circuit(circuit, args.out)
    cost = complexity.count(circuit)
    line = f"{args.variant}: {len(circuit)} gates, counted cost {cost}"
    if bound is not None:
        line += f" (bound {bound})"
    print(line)
    if args.qasm:
        with open(args.qasm, "w", encoding="utf-8") as fh:
            fh.write(to_qasm(lower(circuit)))
        print(f"lowered QASM written to {args.qasm}")
    return 0


def _cmd_simulate(args) -> int:
    targets = _load_targets(args.targets)
    limit = _max_qubits()
    if targets.n > limit:
        raise SimulatorLimitError(
            f"n={targets.n} exceeds simulator limit {limit} "
            "(set GROVER_FORGE_MAX_QUBITS to override)")
    schedule = engine.analytic_schedule(targets.n, targets.size)
    if args.k == "auto":
        k = schedule.k_star
    else:
        try:
            k = int(args.k)
        except ValueError as exc:
            raise ValidationError(f"bad iteration count {args.k!r}") from exc
        if k < 0:
            raise ValidationError("iteration count must be nonnegative")

    rows = []
    final = None
    for step, state in engine.grover_states(targets, args.variant, k,
                                            args.mode):
        simulated = engine.success_probability(state, targets)
        rows.append({"k": step, "success": simulated,
                     "analytic": schedule.success(step)})
        final = state
    deviation = max(abs(r["success"] - r["analytic"]) for r in rows)
    report = {
        "variant": args.variant,
        "n": targets.n,
        "s": targets.size,
        "k": k,
        "k_star": schedule.k_star,
        "phi": schedule.phi,
        "iterations": rows,
        "max_deviation": deviation,
    }
    if args.amplitudes:
        report["amplitudes"] = [[a.real, a.imag]
                                for a in final.amplitudes.tolist()]
    if args.as_json:
        json.dump(report, sys.stdout, indent=1)
        print()
    else:
        print(f"variant={args.variant} n={targets.n} |S|={targets.size} "
              f"k={k} (k*={schedule.k_star})")
        for row in rows:
            print(f"  k={row['k']:4d} success={row['success']:.12f} "
                  f"analytic={row['analytic']:.12f}")
        print(f"max |simulated - analytic| = {deviation:.3e}")
    return 0


def _parse_sweep(spec_n: str, spec_gamma: str):
    if not spec_n.startswith("n=") or not spec_gamma.startswith("gamma="):
        raise ValidationError("sweep wants n=<list> gamma=<grid>")
    try:
        n_list = [int(tok) for tok in spec_n[2:].split(",") if tok]
    except ValueError as exc:
        raise ValidationError(f"bad n list {spec_n!r}") from exc
    grid_spec = spec_gamma[len("gamma="):]
    try:
        if ":" in grid_spec:
            start, stop, step = (float(tok) for tok in grid_spec.split(":"))
            grid = []
            g = start
            while g <= stop + 1e-12:
                grid.append(round(g, 12))
                g += step
        else:
            grid = [float(tok) for tok in grid_spec.split(",") if tok]
    except ValueError as exc:
        raise ValidationError(f"bad gamma grid {grid_spec!r}") from exc
    if not n_list or not grid:
        raise ValidationError("empty sweep grid")
    return n_list, grid


def _cmd_compare(args) -> int:
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        if args.sweep:
            n_list, grid = _parse_sweep(*args.sweep)
            rows = complexity.sweep_gamma(n_list, grid)
            writer = csv.writer(out)
            writer.writerow(["n", "gamma", "Gamma", "dominates"])
            for n, gamma, ratio, flag in rows:
                writer.writerow([n, f"{gamma:.6g}", f"{ratio:.10g}",
                                 int(flag)])
            return 0
        if args.targets:
            targets = _load_targets(args.targets)
            report = complexity.build_report(targets, k=args.k)
        elif args.n is not None and args.s is not None:
            exact, approx = complexity.gamma_ratio(args.n, args.s)
            verdict = "reduced" if exact < 1.0 else "conventional"
            payload = {"n": args.n, "s": args.s, "Gamma_exact": exact,
                       "Gamma_approx": approx, "verdict": verdict}
            if args.as_json:
                json.dump(payload, out, indent=1)
                out.write("\n")
            else:
                out.write(f"n={args.n} s={args.s} Gamma={exact:.6g} "
                          f"(approx {approx:.6g}) -> {verdict}\n")
            return 0
        else:
            raise ValidationError(
                "compare needs --targets, --n/--s, or --sweep")
        if args.as_json:
            json.dump(report.to_json(), out, indent=1)
            out.write("\n")
        else:
            out.write(f"n={report.n} |S|={report.s} l={report.l} "
                      f"k={report.k}\n")
            for name, value in report.counts.items():
                bound = report.bounds.get(name)
                suffix = f" (bound {bound})" if bound is not None else ""
                out.write(f"  {name:16s} {value}{suffix}\n")
            out.write(f"Gamma={report.gamma_exact:.6g} "
                      f"(approx {report.gamma_approximate:.6g}) "
                      f"-> {report.verdict}\n")
        return 0
    finally:
        if args.out:
            out.close()


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"synth": _cmd_synth, "simulate": _cmd_simulate,
                "compare": _cmd_compare}
    try:
        return handlers[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SimulatorLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PermutationValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
