"""Command-line front end: sample, count, test, bench, tau.

All permutations cross this boundary as 1-based labels, matching the
poset file format; the library itself is 0-based. Output is fully
deterministic for a given (file, seed, flags) triple: no timestamps, and
JSON is emitted with sorted keys, so reruns are byte-identical.
"""

import argparse
import csv
import io
import json
import os
import sys

from .bits import GENERATOR_ID, resolve_seed
from .cftp import make_sampler, sample_extensions
from .errors import CapExceeded, CycleError, PosetFormatError
from .oracle import count_extensions, enumerate_extensions
from .poset import load_poset
from .stats import cost_report, measure_tau, uniformity_test

ENV_SEED = "LEXSAMP_SEED"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CAP = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; keep 2 reserved for cap errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lexsamp",
                     description="Exactly-uniform sampling of linear extensions "
                                 "of a partial order.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples=None):
        p.add_argument("input", help="poset file (line 1: `n <count>`, then `<i> <j>` pairs, 1-based)")
        p.add_argument("--seed", type=int, default=None,
                       help=f"64-bit master seed (default: ${ENV_SEED} or OS entropy)")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        if samples is not None:
            p.add_argument("--samples", type=int, default=samples,
                           help=f"number of draws (default {samples})")

    p = sub.add_parser("sample", help="draw uniform linear extensions")
    common(p, samples=1)
    p.add_argument("--driver", choices=("doubling", "fixed"), default="doubling")
    p.add_argument("--t0", type=int, default=None,
                   help="initial sweeps (doubling) or the fixed sweep count")

    p = sub.add_parser("count", help="count linear extensions exactly")
    common(p)
    p.add_argument("--cap", type=int, default=20, help="largest n to attempt")

    p = sub.add_parser("test", help="chi-square the sampler against the oracle")
    common(p, samples=10000)
    p.add_argument("--driver", choices=("doubling", "fixed"), default="doubling")
    p.add_argument("--t0", type=int, default=None)
    p.add_argument("--baseline", default=None,
                   help="bin against this poset's extension set instead "
                        "(cells it allows but the input forbids must stay empty)")

    p = sub.add_parser("bench", help="aggregate run costs of the fixed-t driver")
    common(p)
    p.add_argument("--runs", type=int, default=200)
    p.add_argument("--t", type=int, default=None,
                   help="sweeps per level (default: recommended for n)")

    p = sub.add_parser("tau", help="measure star promotion times (uses only n from the file)")
    common(p)
    p.add_argument("--replicates", type=int, default=10000)

    return parser


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return resolve_seed(args.seed)
    env = os.environ.get(ENV_SEED)
    if env is not None:
        return resolve_seed(int(env))
    return resolve_seed(None)


def _one_based(perm) -> list[int]:
    return [x + 1 for x in perm]


def _emit_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _emit_csv(rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _cmd_sample(args, seed) -> int:
    poset = load_poset(args.input)
    if args.samples < 1:
        raise ValueError("--samples must be >= 1")
    if args.t0 is not None and args.t0 < 1:
        raise ValueError("--t0 must be >= 1")
    perms, reports = sample_extensions(poset, args.samples, seed,
                                       driver=args.driver, t0=args.t0)
    stats = {
        "seed": seed,
        "driver": args.driver,
        "initial_sweeps": reports[0].initial_sweeps,
        "generator": GENERATOR_ID,
        "samples": args.samples,
        "total_sweeps": sum(r.stats.sweeps_executed for r in reports),
        "total_bits": sum(r.stats.bits_consumed for r in reports),
        "total_swaps": sum(r.stats.swap_ops for r in reports),
        "max_recursion_depth": max(r.stats.recursion_depth for r in reports),
    }
    rows = [_one_based(p) for p in perms]
    if args.format == "json":
        _emit_json({"extensions": rows, "stats": stats})
    elif args.format == "csv":
        _emit_csv(rows)
        print(f"lexsamp: seed {seed}", file=sys.stderr)
    else:
        for row in rows:
            print(" ".join(str(x) for x in row))
        for key, value in stats.items():
            print(f"# {key}: {value}")
    return EXIT_OK


def _cmd_count(args, seed) -> int:
    poset = load_poset(args.input)
    count = count_extensions(poset, cap=args.cap)
    if args.format == "json":
        _emit_json({"count": count, "n": poset.n})
    elif args.format == "csv":
        _emit_csv([["n", "count"], [poset.n, count]])
    else:
        print(count)
    return EXIT_OK


def _cmd_test(args, seed) -> int:
    poset = load_poset(args.input)
    cells = None
    if args.baseline is not None:
        base = load_poset(args.baseline)
        if base.n != poset.n:
            raise ValueError("baseline poset must have the same item count")
        base_original = [base.to_original_perm(e)
                         for e in enumerate_extensions(base).extensions]
        cells = [poset.to_internal_perm(p) for p in base_original]
    sampler = make_sampler(poset, seed, driver=args.driver, t0=args.t0)
    report = uniformity_test(poset, sampler, args.samples, cells=cells)
    header = {"seed": seed, "driver": args.driver, "samples": args.samples,
              "generator": GENERATOR_ID}
    if args.format == "json":
        payload = report.to_dict()
        payload["cells"] = [_one_based(poset.to_original_perm(c))
                            for c in report.cells]
        payload.update(header)
        _emit_json(payload)
    elif args.format == "csv":
        rows = [["extension", "observed", "expected"]]
        for cell, obs, exp in zip(report.cells, report.observed, report.expected):
            name = " ".join(str(x) for x in _one_based(poset.to_original_perm(cell)))
            rows.append([name, obs, exp])
        rows.append(["p_value", report.p_value, ""])
        _emit_csv(rows)
        print(f"lexsamp: seed {seed}", file=sys.stderr)
    else:
        for key, value in header.items():
            print(f"# {key}: {value}")
        print(report.to_text(
            label=lambda c: " ".join(str(x) for x in _one_based(poset.to_original_perm(c)))))
    return EXIT_OK


def _cmd_bench(args, seed) -> int:
    poset = load_poset(args.input)
    if args.runs < 1:
        raise ValueError("--runs must be >= 1")
    report = cost_report(poset, args.runs, seed, t=args.t)
    if args.format == "json":
        payload = report.to_dict()
        payload["seed"] = seed
        _emit_json(payload)
    elif args.format == "csv":
        rows = [["metric", "value"]] + [[k, v] for k, v in report.to_dict().items()]
        rows.append(["seed", seed])
        _emit_csv(rows)
    else:
        print(f"# seed: {seed}")
        print(report.to_text())
    return EXIT_OK


def _cmd_tau(args, seed) -> int:
    poset = load_poset(args.input)
    if poset.n < 2:
        raise ValueError("tau needs a poset with n >= 2")
    if args.replicates < 2:
        raise ValueError("--replicates must be >= 2")
    sample = measure_tau(poset.n, args.replicates, seed)
    payload = sample.to_dict()
    payload["seed"] = seed
    if args.format == "json":
        _emit_json(payload)
    elif args.format == "csv":
        _emit_csv([["metric", "value"]] + [[k, v] for k, v in payload.items()])
    else:
        width = max(len(k) for k in payload)
        for key, value in payload.items():
            shown = f"{value:.4f}" if isinstance(value, float) else value
            print(f"{key:<{width}}  {shown}")
    return EXIT_OK


_COMMANDS = {
    "sample": _cmd_sample,
    "count": _cmd_count,
    "test": _cmd_test,
    "bench": _cmd_bench,
    "tau": _cmd_tau,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        seed = _resolve_seed(args)
        return _COMMANDS[args.command](args, seed)
    except PosetFormatError as exc:
        print(f"lexsamp: {args.input}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CycleError as exc:
        pretty = " -> ".join(str(x + 1) for x in exc.cycle)
        print(f"lexsamp: {args.input}: precedence cycle: {pretty}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"lexsamp: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (OSError, ValueError) as exc:
        print(f"lexsamp: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
