"""Command-line interface: learn, check-evident, verify-reduction, suite."""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from .concepts import SparsePoly, SparsePtf
from .distributions import exact_loss, mc_loss
from .evident import evidence_report
from .formats import (
    dump_dnf,
    parse_distribution,
    parse_dfa,
    parse_dnf,
    parse_junta,
    parse_poly,
    parse_tree,
)
from .harness import (
    ExperimentConfig,
    doubled_tree_family,
    opposite_literal_family,
    parity_dfa,
    random_dnf,
    random_junta,
    random_tree,
    run_learning_suite,
    run_reconstruction_corpus,
    run_reduction_suite,
)
from .learner import learn_evident_dnf_run, plan_samples
from .oracle import LocalMQOracle, draw_training_set
from .reductions import (
    dfa_type_a_reduction,
    dnf_type_a_reduction,
    junta_type_b_reduction,
    poly_type_b_reduction,
    ptf_type_b_reduction,
    tree_type_b_reduction,
    verify_reduction,
)

EXACT_LOSS_MAX_N = 20
MC_SAMPLES = 100_000


def _emit(payload: dict | list, out: str | None) -> None:
    lines = payload if isinstance(payload, list) else [payload]
    text = "\n".join(json.dumps(line, sort_keys=True) for line in lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_learn(args: argparse.Namespace) -> int:
    target = parse_dnf(Path(args.target).read_text())
    dist = parse_distribution(args.dist)
    if args.auto_plan:
        plan = plan_samples(target.n, args.epsilon)
        m1, m2 = plan.m1, plan.m2
    else:
        if args.m1 is None or args.m2 is None:
            raise SystemExit("provide --m1 and --m2, or --auto-plan")
        m1, m2 = args.m1, args.m2
    s1 = draw_training_set(dist, target, m1, args.seed)
    s2 = draw_training_set(dist, target, m2, args.seed + 1)
    oracle = LocalMQOracle.for_samples(target, args.q, s1, s2)
    run = learn_evident_dnf_run(s1, s2, oracle)
    if target.n <= EXACT_LOSS_MAX_N:
        loss, estimator = exact_loss(dist, target, run.formula), "exact"
    else:
        loss, estimator = mc_loss(dist, target, run.formula, MC_SAMPLES, args.seed + 2), "mc"
    _emit(
        {
            "hypothesis": dump_dnf(run.formula).splitlines(),
            "loss": str(loss),
            "loss_float": float(loss),
            "estimator": estimator,
            "epsilon": args.epsilon,
            "m1": m1,
            "m2": m2,
            "queries": run.oracle_stats.query_count,
            "max_locality": run.oracle_stats.max_locality,
            "positives": run.positives_seen,
            "terms_added": run.terms_added,
            "terms_pruned": run.terms_pruned,
        },
        args.out,
    )
    return 0


def _cmd_check_evident(args: argparse.Namespace) -> int:
    formula = parse_dnf(Path(args.formula).read_text())
    dist = parse_distribution(args.dist)
    beta = Fraction(args.beta) if args.beta else None
    report = evidence_report(formula, dist, beta)
    _emit(report.to_dict(), args.out)
    return 0 if report.verdict else 1


def _default_concept(construction: str, n: int, q0: int, seed: int):
    rng = random.Random(seed)
    if construction == "dnf":
        return random_dnf(n, 2, 2, rng)
    if construction == "dfa":
        return parity_dfa(n)
    if construction == "junta":
        return random_junta(n, min(2, n), rng)
    if construction == "tree":
        return random_tree(n, 4, rng)
    poly = SparsePoly(n, {frozenset({j}): Fraction(1, j + 1) for j in range(1, n + 1)})
    if construction == "poly":
        return poly
    return SparsePtf(poly, Fraction(0))


def _cmd_verify_reduction(args: argparse.Namespace) -> int:
    factories = {
        "dnf": lambda: dnf_type_a_reduction(args.n, args.k),
        "dfa": lambda: dfa_type_a_reduction(args.n, args.k),
        "junta": lambda: junta_type_b_reduction(args.n, args.q0),
        "tree": lambda: tree_type_b_reduction(args.n, args.q0),
        "poly": lambda: poly_type_b_reduction(args.n, args.q0),
        "ptf": lambda: ptf_type_b_reduction(args.n, args.q0),
    }
    reduction = factories[args.construction]()
    if args.concept:
        text = Path(args.concept).read_text()
        parsers = {
            "dnf": parse_dnf,
            "dfa": parse_dfa,
            "junta": parse_junta,
            "tree": parse_tree,
            "poly": parse_poly,
            "ptf": parse_poly,
        }
        concept = parsers[args.construction](text)
    else:
        concept = _default_concept(args.construction, args.n, args.q0, args.seed)
    report = verify_reduction(reduction, concept)
    _emit(report.to_dict(), args.out)
    return 0 if report.passed else 1


def _read_config(path: str) -> dict:
    values: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise SystemExit(f"malformed config line (expected key = value): {raw!r}")
        values[key.strip()] = value.strip()
    return values


def _cmd_suite(args: argparse.Namespace) -> int:
    if args.config:
        cfg = _read_config(args.config)
        args.which = cfg.get("which", args.which)
        args.family = cfg.get("family", args.family)
        args.trials = int(cfg.get("trials", args.trials))
        args.seed = int(cfg.get("seed", args.seed))
        args.epsilon = float(cfg.get("epsilon", args.epsilon))
        args.m1 = int(cfg.get("m1", args.m1))
        args.m2 = int(cfg.get("m2", args.m2))
        args.q = int(cfg.get("q", args.q))
        args.corpus_count = int(cfg.get("corpus_count", args.corpus_count))
    lines: list[dict] = []
    all_passed = True
    if args.which in ("learning", "all"):
        families = {
            "opposite": [("opposite-literal", opposite_literal_family())],
            "doubled": [("doubled-tree", doubled_tree_family())],
            "both": [
                ("opposite-literal", opposite_literal_family()),
                ("doubled-tree", doubled_tree_family()),
            ],
        }[args.family]
        for name, family in families:
            report = run_learning_suite(
                ExperimentConfig(
                    name=name,
                    family=family,
                    trials=args.trials,
                    base_seed=args.seed,
                    epsilon=args.epsilon,
                    m1=args.m1,
                    m2=args.m2,
                    q=args.q,
                )
            )
            lines.append(report.canonical_dict())
            all_passed &= report.passed
    if args.which in ("corpus", "all"):
        report = run_reconstruction_corpus(count=args.corpus_count, base_seed=args.seed)
        lines.append(report.to_dict())
        all_passed &= report.passed
    if args.which in ("reductions", "all"):
        report = run_reduction_suite(base_seed=args.seed)
        lines.append(report.to_dict())
        all_passed &= report.passed
    _emit(lines, args.out)
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lmqlab",
        description="Learning with Hamming-local membership queries: learner, verifiers, suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    learn = sub.add_parser("learn", help="run the 1-local-query DNF learner on a target formula")
    learn.add_argument("--target", required=True, help="DNF formula file")
    learn.add_argument("--dist", required=True, help="uniform:N | product:p1,...,pN | file:PATH")
    learn.add_argument("--epsilon", type=float, default=0.1)
    learn.add_argument("--m1", type=int)
    learn.add_argument("--m2", type=int)
    learn.add_argument("--auto-plan", action="store_true", help="derive m1/m2 from the guarantee bounds")
    learn.add_argument("--seed", type=int, default=0)
    learn.add_argument("--q", type=int, default=1)
    learn.add_argument("--out")
    learn.set_defaults(func=_cmd_learn)

    check = sub.add_parser("check-evident", help="exact per-term evidence rates for a formula")
    check.add_argument("--formula", required=True)
    check.add_argument("--dist", required=True)
    check.add_argument("--beta", help="evidence threshold as a fraction, default 1/n")
    check.add_argument("--out")
    check.set_defaults(func=_cmd_check_evident)

    verify = sub.add_parser("verify-reduction", help="exhaustively verify one reduction")
    verify.add_argument(
        "--construction", required=True, choices=["dnf", "dfa", "junta", "tree", "poly", "ptf"]
    )
    verify.add_argument("--n", type=int, required=True, help="source dimension")
    verify.add_argument("--q0", type=int, default=1, help="flip budget for majority constructions")
    verify.add_argument("--k", type=int, help="replication factor for dnf/dfa, default n^2")
    verify.add_argument("--concept", help="source concept file; omit for a seeded fixture")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--out")
    verify.set_defaults(func=_cmd_verify_reduction)

    suite = sub.add_parser("suite", help="seeded multi-trial suites with JSON-line reports")
    suite.add_argument("--which", choices=["learning", "corpus", "reductions", "all"], default="all")
    suite.add_argument("--family", choices=["opposite", "doubled", "both"], default="both")
    suite.add_argument("--trials", type=int, default=20)
    suite.add_argument("--seed", type=int, default=0)
    suite.add_argument("--epsilon", type=float, default=0.1)
    suite.add_argument("--m1", type=int, default=5000)
    suite.add_argument("--m2", type=int, default=50000)
    suite.add_argument("--q", type=int, default=1)
    suite.add_argument("--corpus-count", type=int, default=1000)
    suite.add_argument("--config", help="key = value file overriding the flags above")
    suite.add_argument("--out")
    suite.set_defaults(func=_cmd_suite)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
