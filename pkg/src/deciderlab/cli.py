"""Command-line entry point: ``deciderlab <command> [options]``.

Exit codes: 0 success, 1 usage or parse error, 2 machine still running
(``run`` only), 3 a checked property was violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import statistics
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import approx, diagonal, machinefile, selftest, universal, vm
from ._batch import default_workers
from .enumeration import (
    ONE_STATE_RANGE,
    bits_to_index,
    decode,
    encode_machine,
    index_to_bits,
)

EXIT_OK, EXIT_USAGE, EXIT_RUNNING, EXIT_VIOLATION = 0, 1, 2, 3


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return n


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text}")
    return n


def _budget_poly(text: str) -> universal.BudgetPolicy:
    try:
        return universal.BudgetPolicy.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad --budget-poly {text!r}: {e}")


def _budgets(text: str) -> List[int]:
    out = [int(x) for x in text.split(",")]
    if out[0] < 1 or any(a >= b for a, b in zip(out, out[1:])):
        raise argparse.ArgumentTypeError("budgets must be positive and strictly ascending")
    return out


def _bits(text: str) -> str:
    if any(c not in "01" for c in text):
        raise argparse.ArgumentTypeError(f"not a bit string: {text!r}")
    return text


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--budget-poly", type=_budget_poly, default=universal.BudgetPolicy(),
                   metavar="A,B,C", help="T(n) = A*n^2 + B*n + C (default 1,0,100)")
    p.add_argument("--n", type=_positive, default=None, help="population size")
    p.add_argument("--start", type=_nonneg, default=0, help="first index of the population")
    p.add_argument("--budgets", type=_budgets, default=[1, 10, 100, 1000, 10000],
                   help="comma-separated step budgets for halting curves")
    p.add_argument("--input-policy", choices=[x.value for x in approx.InputPolicy],
                   default=approx.InputPolicy.OWN_INDEX.value)
    p.add_argument("--headroom", type=_positive, default=universal.DEFAULT_HEADROOM,
                   help="simulation budget multiplier (default 4)")
    p.add_argument("--format", choices=("json", "csv", "text"), default=None)
    p.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")
    p.add_argument("--workers", type=_positive, default=None, help="process count; output does not depend on it")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled pairs")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="deciderlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[common], help="run a .tmm machine on an input")
    p.add_argument("machine", type=Path, help=".tmm machine file")
    p.add_argument("input", type=_bits, nargs="?", default="", help="input bits (default empty)")
    p.add_argument("--budget", type=_positive, default=100, help="step budget (default 100)")

    p = sub.add_parser("enumerate", parents=[common], help="list deciders by index")

    p = sub.add_parser("diagonal", parents=[common], help="check that g escapes every row of A_T")
    p.add_argument("--csv-out", type=Path, default=None, help="also write the per-index CSV here")

    p = sub.add_parser("halting-stats", parents=[common], help="halting curve and predictor failure")
    p.add_argument("--csv-out", type=Path, default=None, help="also write per-machine records here")

    p = sub.add_parser("overhead", parents=[common], help="self-simulation cost against direct decision")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--index", type=_positive, default=None)
    src.add_argument("--machine", type=Path, default=None)
    p.add_argument("--input", dest="inputs", type=_bits, action="append", default=None,
                   help="repeatable; default is the decider's own index")
    p.add_argument("--sample", type=_positive, default=None,
                   help="instead of one decider, sample this many (d, k) pairs with --seed")

    p = sub.add_parser("selftest", parents=[common], help="administer the four-question test")
    p.add_argument("profile", help="builtin name (thermostat, os, cheater) or a JSON file")
    p.add_argument("--empirical", action="store_true", help="derive Q3 and Q4 from measurements")
    p.add_argument("--sample-size", type=_positive, default=100)
    p.add_argument("--challenge", type=_bits, default=None, help="default: the agent's own index")
    return parser


def _emit(args, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _workers(args) -> int:
    return args.workers or default_workers()


def cmd_run(args) -> int:
    try:
        machine = machinefile.read(args.machine)
    except machinefile.MachinefileError as e:
        for err in e.errors:
            print(f"{args.machine}:{err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"{args.machine}: {e.strerror}", file=sys.stderr)
        return EXIT_USAGE
    out = vm.run(machine, args.input, args.budget)
    if args.format == "json":
        _emit(args, _dumps({"value": out.value, "steps": out.steps, "decided": out.decided}))
    else:
        _emit(args, f"{out}\n")
    return EXIT_OK if out.decided else EXIT_RUNNING


def _one_line(source: str) -> str:
    return " ; ".join(source.strip().splitlines())


def cmd_enumerate(args) -> int:
    n = args.n or 100
    fmt = args.format or "text"
    rows = []
    for d in range(args.start, args.start + n):
        bits = index_to_bits(d)
        m = decode(bits)
        rows.append((d, bits, None if m is None else machinefile.serialize(m, f"d{d}")))
    if fmt == "json":
        text = "".join(
            json.dumps({"index": d, "bits": b, "fallback": s is None, "source": s}, sort_keys=True) + "\n"
            for d, b, s in rows
        )
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("index", "bits", "source"))
        for d, b, s in rows:
            w.writerow((d, b, "trivial-rejector-fallback" if s is None else _one_line(s)))
        text = buf.getvalue()
    else:
        text = "".join(
            f"{d}\t{b or '-'}\t{'trivial-rejector-fallback' if s is None else _one_line(s)}\n"
            for d, b, s in rows
        )
    _emit(args, text)
    return EXIT_OK


def cmd_diagonal(args) -> int:
    n = args.n or 1000
    report = diagonal.verify_escape(
        diagonal.DiagonalDecider(args.budget_poly), n, _workers(args), args.start
    )
    fmt = args.format or "json"
    if args.csv_out is not None:
        args.csv_out.write_text(diagonal.report_csv(report), encoding="utf-8")
    if fmt == "csv":
        _emit(args, diagonal.report_csv(report))
    elif fmt == "json":
        _emit(args, diagonal.report_json(report, args.budget_poly))
    else:
        s = diagonal.report_summary(report, args.budget_poly)
        _emit(args, (
            f"checked {s['checked']} indices from {args.start}: "
            f"{len(s['violations'])} violations, {s['timeouts']} timeouts\n"
            f"max g cost / T(2|k|)^2 = {s['max_cost_ratio_exact']}\n"
        ))
    return EXIT_OK if report.ok and report.max_cost_ratio <= 1 else EXIT_VIOLATION


def cmd_halting_stats(args) -> int:
    n = args.n or 10**4
    policy = approx.InputPolicy(args.input_policy)
    curve = approx.halting_curve(
        n, args.budgets, policy, start=args.start, workers=_workers(args)
    )
    failures = []
    if policy is approx.InputPolicy.OWN_INDEX:
        b_ref = args.budgets[-1]
        failures = [approx.score(curve.records, b, b_ref) for b in args.budgets[:-1]]
    if args.csv_out is not None:
        args.csv_out.write_text(approx.records_csv(curve.records), encoding="utf-8")
    fmt = args.format or "json"
    if fmt == "csv":
        _emit(args, approx.records_csv(curve.records))
    elif fmt == "json":
        _emit(args, approx.curve_json(curve, failures))
    else:
        lines = [f"population [{args.start}, {args.start + n}), input {policy.value}"]
        lines += [f"  budget {b:>8}: halted {f} ({float(f):.4f})" for b, f in curve.points]
        lines += [
            f"  predictor at {s.predictor_budget} wrong on {s.disagreements}/{s.n}"
            f" relative to budget {s.reference_budget}"
            for s in failures
        ]
        _emit(args, "\n".join(lines) + "\n")
    fractions = [f for _, f in curve.points]
    monotone = all(a <= b for a, b in zip(fractions, fractions[1:]))
    monotone &= all(a.fraction >= b.fraction for a, b in zip(failures, failures[1:]))
    return EXIT_OK if monotone else EXIT_VIOLATION


def _overhead_rows(pairs, policy, headroom) -> List[dict]:
    rows = []
    for d, k in pairs:
        u = universal.UniversalDecider(d, policy)
        budget = policy(universal.bit_length(d) + len(k))
        rep = universal.overhead_report(u, k, budget, headroom)
        rows.append({
            "index": d,
            "input": k,
            "budget": budget,
            "value": rep.direct.value,
            "direct_steps": rep.direct.host_steps,
            "selfsim_steps": rep.selfsim.simulated_steps,
            "selfsim_host_steps": rep.selfsim.host_steps,
            "encoding_bits": universal.decode_cost(d),
            "ratio": rep.ratio,
        })
    return rows


def overhead_summary(rows: Sequence[dict]) -> dict:
    ratios = [r["ratio"] for r in rows if r["ratio"] is not None]
    median = statistics.median(ratios) if ratios else None
    return {
        "rows": len(rows),
        "decided": len(ratios),
        "median_ratio": None if median is None else float(median),
        "median_ratio_exact": None if median is None else str(Fraction(median)),
        "min_ratio": None if not ratios else float(min(ratios)),
        "all_ratios_above_1": all(x > 1 for x in ratios),
    }


def cmd_overhead(args) -> int:
    policy = args.budget_poly
    if args.sample is not None:
        lo = args.start if args.start else ONE_STATE_RANGE[0]
        hi = lo + (args.n or ONE_STATE_RANGE[1] - ONE_STATE_RANGE[0])
        pairs = universal.sample_pairs(args.sample, args.seed, (max(lo, 1), hi))
    else:
        if args.machine is not None:
            try:
                d = bits_to_index(encode_machine(machinefile.read(args.machine)))
            except machinefile.MachinefileError as e:
                for err in e.errors:
                    print(f"{args.machine}:{err}", file=sys.stderr)
                return EXIT_USAGE
        elif args.index is not None:
            d = args.index
        else:
            print("overhead: give --index, --machine or --sample", file=sys.stderr)
            return EXIT_USAGE
        pairs = [(d, k) for k in (args.inputs or [index_to_bits(d)])]
    rows = _overhead_rows(pairs, policy, args.headroom)
    summary = overhead_summary(rows)
    fmt = args.format or "text"
    if fmt == "json":
        for r in rows:
            r["ratio"] = None if r["ratio"] is None else str(r["ratio"])
        _emit(args, _dumps({"summary": summary, "rows": rows}))
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({**r, "ratio": "" if r["ratio"] is None else str(r["ratio"])})
        _emit(args, buf.getvalue())
    else:
        lines = [f"{'index':>8} {'input':>8} {'value':>5} {'direct':>8} {'selfsim':>9} ratio"]
        for r in rows:
            ratio = "undefined" if r["ratio"] is None else f"{float(r['ratio']):.3f}"
            value = "-" if r["value"] is None else r["value"]
            lines.append(
                f"{r['index']:>8} {r['input'] or '-':>8} {value:>5} "
                f"{r['direct_steps']:>8} {r['selfsim_host_steps']:>9} {ratio}"
            )
        if summary["median_ratio"] is not None:
            lines.append(f"median ratio {summary['median_ratio_exact']} ({summary['median_ratio']:.4f})")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if summary["all_ratios_above_1"] else EXIT_VIOLATION


def _load_profile(name: str) -> selftest.AgentProfile:
    builtins = selftest.builtin_profiles()
    if name in builtins:
        return builtins[name]
    with open(name, encoding="utf-8") as fh:
        return selftest.AgentProfile.from_dict(json.load(fh))


def cmd_selftest(args) -> int:
    try:
        profile = _load_profile(args.profile)
    except (OSError, ValueError, TypeError) as e:
        print(f"selftest: cannot load profile {args.profile!r}: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.empirical:
        if profile.machine is None:
            print("selftest: --empirical needs a profile with a machine", file=sys.stderr)
            return EXIT_USAGE
        lo = args.start or ONE_STATE_RANGE[0]
        hi = lo + (args.n or ONE_STATE_RANGE[1] - ONE_STATE_RANGE[0])
        sample = universal.sample_pairs(args.sample_size, args.seed, (lo, hi))
        challenge = selftest.own_index_challenge(profile) if args.challenge is None else args.challenge
        result = selftest.administer_empirical(profile, sample, challenge, args.budget_poly, args.headroom)
    else:
        result = selftest.administer(profile)
    if (args.format or "text") == "json":
        _emit(args, result.to_json())
    else:
        _emit(args, result.transcript(profile.name) + result.to_json())
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "enumerate": cmd_enumerate,
    "diagonal": cmd_diagonal,
    "halting-stats": cmd_halting_stats,
    "overhead": cmd_overhead,
    "selftest": cmd_selftest,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
