# src/partition_topology/cli.py
from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Any, List, Optional

from .config import FORMATS, SUITES, ToolkitConfig, config_from_env, ensure_within_cap
from .engine.combinatorics import PointedComposition, beta, permutations_with_descent_composition
from .engine.complexes import reduced_homology
from .engine.errors import InvalidInputError, classify_error, exit_code_for
from .engine.morse import build_matching, critical_cell_table, matching_to_json
from .engine.ordered import build_Delta_c, build_Lambda
from .engine.partitions import build_filter_Pi_lambda_m, build_subposet_Pi_c
from .output import format_table, render_json, render_report, write_json, write_report, write_text
from .pipeline import VerificationPipeline


def log(msg: str) -> None:
    print(f"[{time.strftime('%H:%M:%S')}] {msg}", file=sys.stderr, flush=True)


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from None


def _composition(args: argparse.Namespace) -> PointedComposition:
    if args.composition is None:
        raise InvalidInputError("--composition is required")
    return PointedComposition.of(args.composition)


def _pointed_partition(args: argparse.Namespace) -> tuple:
    if args.lam is None or args.m is None:
        raise InvalidInputError("--lambda and --m are required")
    if args.m < 0:
        raise InvalidInputError("--m must be non-negative")
    return tuple(args.lam), int(args.m)


def _emit(text: str, output: Optional[Path]) -> None:
    if output:
        write_text(output, text + "\n")
        log(f"Written to {output}")
    else:
        print(text)


def _emit_json(data: Any, output: Optional[Path]) -> None:
    if output:
        write_json(output, data)
        log(f"Written to {output}")
    else:
        print(render_json(data))


# -- commands -------------------------------------------------------------------


def cmd_beta(args: argparse.Namespace, cfg: ToolkitConfig) -> int:
    c = _composition(args)
    value = beta(c, cap=cfg.cap("beta"))
    lines = [str(value)]
    if args.list:
        lines += [str(alpha) for alpha in permutations_with_descent_composition(c)]
    _emit("\n".join(lines), args.output)
    return 0


def cmd_verify(args: argparse.Namespace, cfg: ToolkitConfig) -> int:
    pipeline = VerificationPipeline(cfg, suite=args.suite, log=log)
    report = pipeline.run()
    log(str(report))
    if args.output:
        write_report(args.output, report, cfg.output_format)
        log(f"Written to {args.output}")
    else:
        print(render_report(report, cfg.output_format))
    return report.exit_code


def _homology_target(args: argparse.Namespace, cfg: ToolkitConfig) -> tuple:
    if args.complex == "delta":
        k = build_Delta_c(_composition(args), cap=cfg.cap("delta"))
        return str(k), reduced_homology(k)
    if args.complex == "lambda":
        lam, m = _pointed_partition(args)
        k = build_Lambda(lam, m, cap=cfg.cap("lambda"), allow_non_knapsack=cfg.allow_non_knapsack)
        return str(k), reduced_homology(k)

    # order complex of the poset minus its top
    if args.composition is not None:
        c = _composition(args)
        ensure_within_cap(c.n, "order_complex", cfg.cap("order_complex"))
        poset = build_subposet_Pi_c(c, cap=cfg.cap("pointed_lattice"))
        name = f"Delta(Pi*_{c} - 1^)"
    else:
        lam, m = _pointed_partition(args)
        ensure_within_cap(sum(lam) + m, "order_complex", cfg.cap("order_complex"))
        poset = build_filter_Pi_lambda_m(lam, m, cap=cfg.cap("pointed_lattice"), allow_non_knapsack=cfg.allow_non_knapsack)
        name = f"Delta(Pi*_{{{','.join(map(str, sorted(lam, reverse=True)))},_{m}}} - 1^)"
    return name, reduced_homology(poset.without([poset.top()]).order_complex())


def cmd_homology(args: argparse.Namespace, cfg: ToolkitConfig) -> int:
    name, profile = _homology_target(args, cfg)
    if args.format == "json":
        _emit_json({"complex": name, **profile.to_json()}, args.output)
    else:
        _emit(f"{name}: {profile}", args.output)
    return 0


def cmd_matching(args: argparse.Namespace, cfg: ToolkitConfig) -> int:
    lam, m = _pointed_partition(args)
    cap = cfg.cap("lambda")
    if args.all:
        decisions = matching_to_json(build_matching(lam, m, strict=m > 0, cap=cap))
        if args.format == "json":
            _emit_json(decisions, args.output)
            return 0
        rows = [[d["face"], d["status"], d["partner"], d["edge_type"]] for d in decisions]
        _emit(format_table(["face", "status", "partner", "type"], rows), args.output)
        return 0

    table = critical_cell_table(lam, m, cap=cap)
    if args.format == "json":
        _emit_json([row.to_json() for row in table], args.output)
        return 0
    rows: List[List[Any]] = [
        [
            str(row.d),
            row.beta,
            str(row.epsilon),
            " ".join(f"{'+' if s > 0 else '-'}{c}" for c, s in row.w),
            " ".join(str(t) for t in row.cells),
        ]
        for row in table
    ]
    total = sum(row.beta for row in table)
    text = format_table(["d", "beta", "epsilon", "W", "critical cells"], rows) + f"\n\ntotal critical cells: {total}"
    _emit(text, args.output)
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partition-topology",
        description="Pointed partition posets, ordered set partition complexes and their homology",
    )
    parser.add_argument("--verbose", action="store_true", help="Debug logging from the engines")
    parser.add_argument("--jobs", type=int, help="Worker processes for verify")
    parser.add_argument("--rng-seed", type=int, help="Seed for sampled claims")
    parser.add_argument("--sphere-samples", type=int, help="Random (alpha, c) per n for the Sigma_alpha sphere claims")
    parser.add_argument("--witness-dir", type=Path, help="Directory for failed-claim witnesses")
    parser.add_argument("--output", type=Path, help="Write the result to this file instead of stdout")
    parser.add_argument(
        "--allow-non-knapsack",
        action="store_true",
        help="Build posets and complexes for partitions that are not knapsack",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p_beta = sub.add_parser("beta", help="Count permutations with a descent composition")
    p_beta.add_argument("--composition", type=_int_list, required=True, help="e.g. 1,2,1")
    p_beta.add_argument("--list", action="store_true", help="Also print the permutations")
    p_beta.set_defaults(func=cmd_beta)

    p_verify = sub.add_parser("verify", help="Run verification suites")
    p_verify.add_argument("--suite", choices=[*SUITES, "all"], default="all", help="'all' runs the suites of PARTITION_TOPOLOGY_SUITES (default: every suite)")
    p_verify.add_argument("--max-n", type=int, help="Largest n to check")
    p_verify.add_argument("--format", choices=FORMATS, help="Report format")
    p_verify.set_defaults(func=cmd_verify)

    p_hom = sub.add_parser("homology", help="Reduced homology of a complex")
    p_hom.add_argument("--complex", choices=["delta", "lambda", "order-complex"], required=True)
    p_hom.add_argument("--composition", type=_int_list)
    p_hom.add_argument("--lambda", dest="lam", type=_int_list)
    p_hom.add_argument("--m", type=int)
    p_hom.add_argument("--format", choices=["json", "table"], default="table")
    p_hom.set_defaults(func=cmd_homology)

    p_match = sub.add_parser("matching", help="Morse matching and critical cells on Lambda")
    p_match.add_argument("--lambda", dest="lam", type=_int_list, required=True)
    p_match.add_argument("--m", type=int, required=True)
    p_match.add_argument("--all", action="store_true", help="List every matching decision")
    p_match.add_argument("--format", choices=["json", "table"], default="table")
    p_match.set_defaults(func=cmd_matching)

    return parser


def _config(args: argparse.Namespace) -> ToolkitConfig:
    cfg = config_from_env()
    if args.jobs is not None:
        cfg.jobs = max(1, args.jobs)
    if args.rng_seed is not None:
        cfg.rng_seed = args.rng_seed
    if args.sphere_samples is not None:
        cfg.sphere_samples = max(0, args.sphere_samples)
    if args.witness_dir is not None:
        cfg.witness_dir = args.witness_dir
    if getattr(args, "max_n", None) is not None:
        cfg.max_n = args.max_n
    if getattr(args, "format", None) is not None and args.command == "verify":
        cfg.output_format = args.format
    cfg.allow_non_knapsack = bool(args.allow_non_knapsack)
    return cfg


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        datefmt="%H:%M:%S",
    )

    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except KeyboardInterrupt:
        print("\nInterrupted by user.", file=sys.stderr)
        return 1
    except Exception as e:
        kind = classify_error(e)
        print(f"Error: {e} [{kind.value}]", file=sys.stderr)
        return exit_code_for(kind)


if __name__ == "__main__":
    sys.exit(main())
