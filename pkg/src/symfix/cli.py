"""Command-line surface.

Every file-writing command embeds a run manifest (command, parameters,
engine version, elapsed time, input digests).  Result payloads are
deterministic; wall-clock information lives only in the manifest.

Exit codes: 0 success, 1 usage, 2 validation, 3 budget-partial,
4 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import importlib.resources
import io
import json
import os
import sys
import time
from datetime import datetime, timezone

from . import __version__
from .bitpal import Bitstring, cluster_code, count_palindromic_proper_prefixes, neighbors
from .codes import length_sequence
from .optimize import Source, best_code, entropy, expected_length, redundancy_soft_check
from .oracle import ORACLE_MAX_N, compare_with_search, oracle_dominant
from .search import (
    MODE_EXHAUSTIVE,
    MODE_OPTIMAL_COMPLETE,
    PruneConfig,
    result_to_dot,
    result_to_json,
    search,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4

BUDGET_ENV = "SYMFIX_BUDGET_NODES"
TABLE_GUARDRAIL_N = 20
BUILTIN_TABLE = "builtin"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _manifest(command: str, params: dict, elapsed: float, inputs: dict[str, str]) -> dict:
    return {
        "command": command,
        "parameters": params,
        "engine_version": __version__,
        "elapsed_seconds": round(elapsed, 6),
        "input_digests": inputs,
        "created": datetime.now(timezone.utc).isoformat(),
    }


def _write_json(path: "str | None", doc: dict) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _node_budget(args) -> "int | None":
    if getattr(args, "budget_nodes", None) is not None:
        return args.budget_nodes
    env = os.environ.get(BUDGET_ENV)
    if env:
        return int(env)
    return None


def _prune_config(args) -> PruneConfig:
    mode = args.mode.replace("-", "_")
    if mode == MODE_EXHAUSTIVE:
        return PruneConfig.exhaustive()
    return PruneConfig.optimal_complete(
        half_index=not args.no_half_index,
        monotone_max=not args.no_monotone_max,
        strict_sum=not args.no_strict_sum,
        depth2_dominated=not args.no_depth2,
        complement_mirror=not args.no_complement_mirror,
    )


def _add_search_flags(p: argparse.ArgumentParser, default_mode: str) -> None:
    p.add_argument(
        "--mode",
        choices=["exhaustive", "optimal-complete", "auto"],
        default=default_mode,
        help="pruning mode (auto: exhaustive for n <= 8, optimal-complete beyond)",
    )
    p.add_argument("--no-half-index", action="store_true", help="disable the half-index pivot prune")
    p.add_argument("--no-monotone-max", action="store_true", help="disable the monotone max-length prune")
    p.add_argument("--no-strict-sum", action="store_true", help="disable sum-nonincrease flagging")
    p.add_argument("--no-depth2", action="store_true", help="disable the dominated depth-1 subtree cut")
    p.add_argument("--no-complement-mirror", action="store_true", help="disable complement flag mirroring")
    p.add_argument("--budget-nodes", type=int, default=None, help=f"node cap (or ${BUDGET_ENV})")
    p.add_argument("--budget-seconds", type=float, default=None, help="wall-clock cap")
    p.add_argument("--threads", type=int, default=1, help="frontier expansion threads")


def _positive_n(text: str) -> int:
    value = int(text)
    if value < 3:
        raise argparse.ArgumentTypeError("n must be at least 3")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="symfix", description=__doc__)
    parser.add_argument("--version", action="version", version=f"symfix {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("neighbors", help="list the neighboring palindromes of a pivot")
    p.add_argument("--sigma", required=True, help="pivot palindrome, e.g. 0 or 11")
    p.add_argument("--n", type=int, required=True, help="maximum word length")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("search", help="run the transformation search")
    p.add_argument("--n", type=_positive_n, required=True)
    _add_search_flags(p, default_mode="optimal-complete")
    p.add_argument("--out", default=None, help="write the result JSON here (default stdout)")
    p.add_argument("--dot", default=None, help="also write a DOT rendering of the tree")

    p = sub.add_parser("table", help="dominant-sequence counts for a range of n")
    p.add_argument("--max-n", type=_positive_n, required=True)
    _add_search_flags(p, default_mode="auto")
    p.add_argument(
        "--compare",
        nargs="?",
        const=BUILTIN_TABLE,
        default=None,
        help=f"CSV with n,...,symmetric columns ({BUILTIN_TABLE!r} or omit value for the shipped table)",
    )
    p.add_argument("--out", default=None, help="write the counts CSV here (default stdout)")

    p = sub.add_parser("optimize", help="pick the best dominant code for a source")
    p.add_argument("--n", type=_positive_n, required=True)
    p.add_argument("--probs", default=None, help="CSV/newline file of probabilities")
    p.add_argument("--p", nargs="*", type=float, default=None, help="inline probabilities")
    p.add_argument("--trials", type=int, default=None, help="run the random-source redundancy soft check")
    p.add_argument("--seed", type=int, default=0, help="seed for --trials")
    _add_search_flags(p, default_mode="auto")
    p.add_argument("--out", default=None)

    p = sub.add_parser("oracle", help="exhaustive ground truth at small n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--csv", default=None, help="write an n,count CSV row table here")

    p = sub.add_parser("verify", help="compare the search against the oracle")
    p.add_argument("--n", type=int, required=True)
    _add_search_flags(p, default_mode="exhaustive")
    p.add_argument("--out", default=None)

    p = sub.add_parser("cluster", help="the length-n cluster code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-prefixes", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def _auto_config(args, n: int) -> PruneConfig:
    if args.mode == "auto":
        mode = "exhaustive" if n <= ORACLE_MAX_N else "optimal-complete"
        args = argparse.Namespace(**{**vars(args), "mode": mode})
    return _prune_config(args)


def _cmd_neighbors(args) -> int:
    start = time.monotonic()
    words = sorted(neighbors(Bitstring(args.sigma), args.n))
    if args.format == "json":
        doc = {
            "manifest": _manifest(
                "neighbors", {"sigma": args.sigma, "n": args.n}, time.monotonic() - start, {}
            ),
            "result": {"sigma": args.sigma, "n": args.n, "neighbors": [str(w) for w in words]},
        }
        _write_json(None, doc)
    else:
        for w in words:
            print(w)
    return EXIT_OK


def _cmd_search(args) -> int:
    start = time.monotonic()
    config = _auto_config(args, args.n)
    result = search(
        args.n,
        config,
        node_budget=_node_budget(args),
        time_budget=args.budget_seconds,
        threads=args.threads,
    )
    doc = {
        "manifest": _manifest(
            "search",
            {
                "n": args.n,
                "mode": config.mode,
                "flags": config.flag_dict(),
                "threads": args.threads,
                "budget_nodes": _node_budget(args),
                "budget_seconds": args.budget_seconds,
            },
            time.monotonic() - start,
            {},
        ),
        "result": result_to_json(result),
    }
    _write_json(args.out, doc)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(result_to_dot(result))
    if not result.complete:
        print(f"partial result: {result.stats.budget_reason}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def _load_reference_table(spec: str) -> dict[int, int]:
    if spec == BUILTIN_TABLE:
        ref = importlib.resources.files("symfix").joinpath("data/table1.csv")
        text = ref.read_text()
    else:
        with open(spec) as fh:
            text = fh.read()
    out: dict[int, int] = {}
    for row in csv.DictReader(io.StringIO(text)):
        out[int(row["n"])] = int(row["symmetric"])
    return out


def _cmd_table(args) -> int:
    start = time.monotonic()
    budget = _node_budget(args)
    if args.max_n > TABLE_GUARDRAIL_N and budget is None and args.budget_seconds is None:
        print(
            f"table --max-n {args.max_n} exceeds the guardrail ({TABLE_GUARDRAIL_N}); "
            f"pass --budget-nodes/--budget-seconds or set ${BUDGET_ENV} to proceed",
            file=sys.stderr,
        )
        return EXIT_USAGE
    reference = _load_reference_table(args.compare) if args.compare else None
    rows = []
    partial = False
    for n in range(3, args.max_n + 1):
        config = _auto_config(args, n)
        result = search(
            n,
            config,
            node_budget=budget,
            time_budget=args.budget_seconds,
            threads=args.threads,
        )
        count = len(result.dominant_sequences)
        rows.append((n, count, result.complete))
        partial = partial or not result.complete
    lines = ["n,count"] + [f"{n},{count}" for n, count, _ in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    mismatch = False
    if reference is not None:
        for n, count, complete in rows:
            want = reference.get(n)
            if want is None:
                print(f"n={n} count={count} (no reference row)", file=sys.stderr)
                continue
            tag = "MATCH" if count == want else "MISMATCH"
            if not complete:
                tag += " (budget-partial)"
            print(f"n={n} count={count} expected={want} {tag}", file=sys.stderr)
            if count != want and complete:
                mismatch = True
    if partial:
        return EXIT_BUDGET
    if mismatch:
        return EXIT_MISMATCH
    return EXIT_OK


def _read_probs(args) -> Source:
    if args.probs and args.p:
        raise ValueError("give probabilities either via --probs or --p, not both")
    if args.probs:
        values = []
        with open(args.probs) as fh:
            for line in fh:
                for cell in line.replace(",", " ").split():
                    values.append(float(cell))
        return Source(tuple(values))
    if args.p:
        return Source(tuple(args.p))
    raise ValueError("a source is required: --probs FILE or --p ...")


def _cmd_optimize(args) -> int:
    start = time.monotonic()
    config = _auto_config(args, args.n)
    result = search(
        args.n,
        config,
        node_budget=_node_budget(args),
        time_budget=args.budget_seconds,
        threads=args.threads,
    )
    inputs = {args.probs: _sha256(args.probs)} if args.probs else {}
    if args.trials:
        violations = redundancy_soft_check(result, args.trials, args.seed)
        for v in violations:
            print(
                f"warning: expected length {v.expected:.6f} exceeds 2H+1={2*v.entropy+1:.6f}",
                file=sys.stderr,
            )
        doc = {
            "manifest": _manifest(
                "optimize",
                {"n": args.n, "trials": args.trials, "seed": args.seed},
                time.monotonic() - start,
                inputs,
            ),
            "result": {
                "n": args.n,
                "trials": args.trials,
                "violations": len(violations),
            },
        }
        _write_json(args.out, doc)
        return EXIT_OK
    source = _read_probs(args)
    if source.n != args.n:
        raise ValueError(f"{source.n} probabilities given for n={args.n}")
    code, value = best_code(args.n, source, result)
    doc = {
        "manifest": _manifest(
            "optimize", {"n": args.n, "probs": args.probs or args.p}, time.monotonic() - start, inputs
        ),
        "result": {
            "n": args.n,
            "words": [str(w) for w in code.words],
            "lengths": list(length_sequence(code).lengths),
            "expected_length": value,
            "entropy": entropy(source),
            "assignment": [
                {"symbol": i, "probability": p, "word": str(w)}
                for i, (p, w) in enumerate(zip(source.probs, code.words))
            ],
        },
    }
    _write_json(args.out, doc)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    start = time.monotonic()
    report = oracle_dominant(args.n)
    doc = {
        "manifest": _manifest("oracle", {"n": args.n}, time.monotonic() - start, {}),
        "result": {
            "n": report.n,
            "total_codes": report.total_codes,
            "dominant_sequences": sorted(list(s.lengths) for s in report.dominant_sequences),
            "dominant_codes": [[str(w) for w in c.words] for c in report.dominant_codes],
        },
    }
    _write_json(args.out, doc)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("n,count\n")
            fh.write(f"{report.n},{len(report.dominant_sequences)}\n")
    return EXIT_OK


def _cmd_verify(args) -> int:
    start = time.monotonic()
    config = _auto_config(args, args.n)
    report = compare_with_search(
        args.n,
        config,
        node_budget=_node_budget(args),
        time_budget=args.budget_seconds,
        threads=args.threads,
    )
    doc = {
        "manifest": _manifest(
            "verify", {"n": args.n, "mode": config.mode}, time.monotonic() - start, {}
        ),
        "result": {
            "n": args.n,
            "clean": report.clean,
            "sequences_match": report.sequences_match,
            "sequences_only_in_oracle": sorted(
                list(s.lengths) for s in report.sequences_only_in_oracle
            ),
            "sequences_only_in_search": sorted(
                list(s.lengths) for s in report.sequences_only_in_search
            ),
            "codes_only_in_oracle": [[str(w) for w in c.words] for c in report.codes_only_in_oracle],
            "codes_only_in_search": [[str(w) for w in c.words] for c in report.codes_only_in_search],
        },
    }
    _write_json(args.out, doc)
    if report.clean:
        print(f"search == oracle at n={args.n}", file=sys.stderr)
        return EXIT_OK
    print(f"search != oracle at n={args.n}", file=sys.stderr)
    return EXIT_MISMATCH


def _cmd_cluster(args) -> int:
    start = time.monotonic()
    code = cluster_code(args.n)
    count = count_palindromic_proper_prefixes(code) if args.count_prefixes else None
    if args.format == "json":
        result = {"n": args.n, "words": [str(w) for w in code.words]}
        if count is not None:
            result["prefix_count"] = count
        doc = {
            "manifest": _manifest("cluster", {"n": args.n}, time.monotonic() - start, {}),
            "result": result,
        }
        _write_json(None, doc)
    else:
        for w in code.words:
            print(w)
        if count is not None:
            print(f"palindromic proper prefixes: {count}")
    return EXIT_OK


_COMMANDS = {
    "neighbors": _cmd_neighbors,
    "search": _cmd_search,
    "table": _cmd_table,
    "optimize": _cmd_optimize,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
    "cluster": _cmd_cluster,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.cmd](args)
    except (ValueError, OSError) as exc:
        print(f"symfix {args.cmd}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
