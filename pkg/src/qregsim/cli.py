"""Command-line harness: run algorithms, verify golden checkpoints, emit the
query-count ledger, and dump oracle tables.

All randomness flows from --seed through numpy SeedSequence spawning, so a
given command line reproduces its output byte for byte. Exit status is 0 on
success, 2 for usage errors, 1 for verification failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter

import numpy as np

from .algorithms import (
    ledger_to_csv,
    ledger_to_json,
    run_deutsch,
    run_grover2,
    run_shor_period,
    run_simon,
    speedup_ledger,
)
from .hilbert import DEFAULT_WIDTH_CAP
from .oracles import build_modexp, build_two_to_one, deutsch_family, kronecker_family, oracle_to_json

FAMILY_ALIASES = {
    "xor": "two_to_one_xor",
    "arith": "two_to_one_arith",
    "two_to_one_xor": "two_to_one_xor",
    "two_to_one_arith": "two_to_one_arith",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qregsim",
        description="Multi-register state-vector simulator for oracle algorithms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute seeded algorithm trials")
    run.add_argument("--algo", required=True, choices=("simon", "shor", "deutsch", "grover2"))
    run.add_argument("--n", type=int, help="argument register width (simon)")
    run.add_argument("--r", type=int, help="collision spacing (simon)")
    run.add_argument("--family", default="xor", help="2-to-1 family: xor or arith")
    run.add_argument("--a", type=int, help="base of a^x mod L (shor)")
    run.add_argument("--L", type=int, help="modulus (shor)")
    run.add_argument("--a-width", type=int, help="override argument width (shor)")
    run.add_argument("--variant", default=None, help="algorithm variant")
    run.add_argument("--k", help="oracle mode (deutsch: 2-bit label; grover2: 0..3)")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--trials", type=int, default=1)
    run.add_argument("--skip-v-measurement", action="store_true")
    run.add_argument("--output", default=None)
    run.add_argument("--format", default="json", choices=("json",))

    verify = sub.add_parser("verify", help="run the golden checkpoint suite")
    verify.add_argument("--format", default="text", choices=("text", "json"))
    verify.add_argument("--output", default=None)

    ledger = sub.add_parser("ledger", help="emit the query-count comparison table")
    ledger.add_argument("--seed", type=int, default=0)
    ledger.add_argument("--trials", type=int, default=30)
    ledger.add_argument("--n-min", type=int, default=2)
    ledger.add_argument("--n-max", type=int, default=8)
    ledger.add_argument("--format", default="csv", choices=("csv", "json"))
    ledger.add_argument("--output", default=None)

    dump = sub.add_parser("dump-oracle", help="print one oracle table as JSON")
    dump.add_argument(
        "--family", required=True, choices=("xor", "arith", "modexp", "deutsch", "kronecker")
    )
    dump.add_argument("--n", type=int)
    dump.add_argument("--r", type=int)
    dump.add_argument("--a", type=int)
    dump.add_argument("--L", type=int)
    dump.add_argument("--k")
    dump.add_argument("--seed", type=int, default=0)
    dump.add_argument("--output", default=None)
    return parser


def _trial_rngs(seed: int, trials: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]


def _frequencies(counter: Counter, trials: int) -> dict:
    return {
        str(key): count / trials
        for key, count in sorted(counter.items(), key=lambda kv: str(kv[0]))
    }


def _canonical_two_to_one(n: int, r: int, family: str):
    # pair i (by smaller element) gets value i; n=2, r=2 gives f = (0, 1, 0, 1)
    return build_two_to_one(n, r, range(1 << max(0, n - 1)), family=family)


def _run_simon(args, width_cap: int) -> dict:
    oracle = _canonical_two_to_one(args.n, args.r, FAMILY_ALIASES[args.family])
    trials = []
    outcome_counts: dict[str, Counter] = {}
    for i, rng in enumerate(_trial_rngs(args.seed, args.trials)):
        trace = run_simon(
            oracle,
            rng,
            measure_v_at_t3=not args.skip_v_measurement,
            width_cap=width_cap,
        )
        for rec in trace.measurements:
            outcome_counts.setdefault(rec.register, Counter())[rec.outcome] += 1
        trials.append({"trial": i, **trace.to_json()})
    aggregate = {
        f"{reg}_frequencies": _frequencies(counts, args.trials)
        for reg, counts in sorted(outcome_counts.items())
    }
    return {"oracle": oracle_to_json(oracle), "aggregate": aggregate, "trials": trials}


def _run_shor(args, width_cap: int) -> dict:
    trials = []
    period_counts: Counter = Counter()
    z_counts: Counter = Counter()
    for i, rng in enumerate(_trial_rngs(args.seed, args.trials)):
        trace, result = run_shor_period(
            args.a, args.L, rng, a_width=args.a_width, width_cap=width_cap
        )
        period_counts[result.recovered_period] += 1
        z_counts[result.measured_z] += 1
        trials.append(
            {
                "trial": i,
                "result": {
                    "measured_z": result.measured_z,
                    "convergents": [[f.numerator, f.denominator] for f in result.convergents],
                    "recovered_period": result.recovered_period,
                },
                **trace.to_json(),
            }
        )
    aggregate = {
        "period_frequencies": _frequencies(period_counts, args.trials),
        "z_frequencies": _frequencies(z_counts, args.trials),
    }
    return {"aggregate": aggregate, "trials": trials}


def _run_deutsch(args) -> dict:
    variant = args.variant or "original"
    trials = []
    answer_counts: Counter = Counter()
    mode_counts: Counter = Counter()
    for i, rng in enumerate(_trial_rngs(args.seed, args.trials)):
        trace, result = run_deutsch(
            variant, k=args.k if variant == "original" else None, rng=rng
        )
        answer_counts[result.answer] += 1
        mode_counts[result.mode_label] += 1
        trials.append(
            {
                "trial": i,
                "result": {"mode": result.mode_label, "answer": result.answer},
                **trace.to_json(),
            }
        )
    return {
        "aggregate": {
            "answer_frequencies": _frequencies(answer_counts, args.trials),
            "mode_frequencies": _frequencies(mode_counts, args.trials),
        },
        "trials": trials,
    }


def _run_grover(args) -> dict:
    variant = args.variant or "standard"
    trials = []
    answer_counts: Counter = Counter()
    for i, rng in enumerate(_trial_rngs(args.seed, args.trials)):
        trace, result = run_grover2(
            variant, k=int(args.k) if variant == "standard" else None, rng=rng
        )
        answer_counts[result.answer] += 1
        trials.append(
            {
                "trial": i,
                "result": {
                    "target": result.target,
                    "answer": result.answer,
                    "confirmed": result.confirmed,
                    "oracle_uses": result.oracle_uses,
                },
                **trace.to_json(),
            }
        )
    return {
        "aggregate": {"answer_frequencies": _frequencies(answer_counts, args.trials)},
        "trials": trials,
    }


def cmd_run(args, width_cap: int) -> dict:
    if args.trials < 1:
        raise ValueError("--trials must be >= 1")
    if args.algo == "simon":
        if args.n is None or args.r is None:
            raise ValueError("simon needs --n and --r")
        payload = _run_simon(args, width_cap)
    elif args.algo == "shor":
        if args.a is None or args.L is None:
            raise ValueError("shor needs --a and --L")
        payload = _run_shor(args, width_cap)
    elif args.algo == "deutsch":
        if (args.variant or "original") == "original" and args.k is None:
            raise ValueError("deutsch original needs --k")
        payload = _run_deutsch(args)
    else:
        if (args.variant or "standard") == "standard" and args.k is None:
            raise ValueError("grover2 standard needs --k")
        payload = _run_grover(args)
    config = {
        key: value
        for key, value in vars(args).items()
        if key not in ("command", "output", "format") and value is not None
    }
    return {"config": config, **payload}


def _build_dump_oracle(args):
    if args.family in ("xor", "arith"):
        if args.n is None or args.r is None:
            raise ValueError("2-to-1 families need --n and --r")
        return _canonical_two_to_one(args.n, args.r, FAMILY_ALIASES[args.family])
    if args.family == "modexp":
        if args.a is None or args.L is None or args.n is None:
            raise ValueError("modexp needs --a, --L and --n (domain width)")
        return build_modexp(args.a, args.L, args.n)
    if args.family == "deutsch":
        if args.k is None:
            raise ValueError("deutsch needs --k")
        return deutsch_family()[int(str(args.k), 2) if isinstance(args.k, str) else int(args.k)]
    if args.n is None or args.k is None:
        raise ValueError("kronecker needs --n and --k")
    return kronecker_family(args.n)[int(args.k)]


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    width_cap = int(os.environ.get("DIS_WIDTH_CAP", DEFAULT_WIDTH_CAP))

    if args.command == "verify":
        from .verification import run_all_checks

        results = run_all_checks()
        if args.format == "json":
            payload = {
                "checks": [
                    {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
                ],
                "all_passed": all(r.passed for r in results),
            }
            _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.output)
        else:
            lines = [
                f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results
            ]
            passed = sum(r.passed for r in results)
            lines.append(f"{passed}/{len(results)} checks passed")
            _emit("\n".join(lines) + "\n", args.output)
        return 0 if all(r.passed for r in results) else 1

    try:
        if args.command == "run":
            payload = cmd_run(args, width_cap)
            _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.output)
        elif args.command == "ledger":
            rows = speedup_ledger(
                range(args.n_min, args.n_max + 1), trials=args.trials, seed=args.seed
            )
            if args.format == "csv":
                _emit(ledger_to_csv(rows), args.output)
            else:
                _emit(json.dumps(ledger_to_json(rows), indent=2, sort_keys=True) + "\n", args.output)
        else:
            oracle = _build_dump_oracle(args)
            _emit(json.dumps(oracle_to_json(oracle), indent=2, sort_keys=True) + "\n", args.output)
    except (ValueError, LookupError) as exc:
        parser.error(str(exc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
