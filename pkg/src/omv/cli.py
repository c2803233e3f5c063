"""Command-line front end.

Subcommands:

    gen        write a reproducible random instance file
    solve      answer an instance file with a reduction chain
    verify     recompute an answer file with the naive solver and compare
    protocol   stdio session: matrix first, then one answer line per query line
    bench      per-query counter and wall-time table across sizes and trials

Exit codes: 0 success, 1 verification mismatch, 2 parse error, 3 validation
error (bad instance values, incompatible chain, unsatisfiable generator
flags), 4 protocol error.  Answers go to standard output (or the chosen
file); counter summaries go to standard error so pipes stay clean.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional

from . import formats
from .chains import ChainError, build_solver, parse_chain, validate_chain
from .core import (
    MONOTONE_CASES,
    PROBLEMS,
    ReductionConfig,
    StreamOrderError,
    Vector,
    validate,
    validate_query,
)
from .harness import InstanceSpec, gen_instance
from .oracle import NaiveSolver

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_PROTOCOL = 4


class ProtocolError(ValueError):
    """Malformed traffic in a stdio protocol session."""


class ValidationFailure(ValueError):
    """Instance or query content rejected by validation."""


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _config_from_args(args) -> ReductionConfig:
    hitting: Optional[int | str] = None
    if getattr(args, "hitting", None) is not None:
        hitting = args.hitting if args.hitting == "full" else int(args.hitting)
    return ReductionConfig(
        t=getattr(args, "t", None),
        delta=getattr(args, "delta", None),
        hitting_set_size=hitting,
        seed=getattr(args, "seed", 0),
        bound_constant=getattr(args, "bound_constant", 4),
        repeats=getattr(args, "repeats", 1),
    )


def cmd_gen(args) -> int:
    spec = InstanceSpec(
        problem=args.problem,
        n=args.n,
        distribution=args.dist,
        lo=args.lo,
        hi=args.hi,
        density=args.density,
        inf_prob=args.inf_prob,
        monotone=args.monotone,
        bound_constant=args.bound_constant,
        queries=args.queries,
        seed=args.seed,
    )
    try:
        matrix, queries = gen_instance(spec)
    except ValueError as exc:
        raise ValidationFailure(str(exc)) from exc
    text = formats.print_instance(formats.Instance(args.problem, matrix, queries))
    _write_text(args.out, text)
    return EXIT_OK


def _load_instance(path: str, bound: int = 4) -> formats.Instance:
    instance = formats.parse_instance(_read_text(path))
    violation = validate(instance.matrix, instance.problem, bound_constant=bound)
    if violation is not None:
        raise ValidationFailure(f"invalid matrix: {violation}")
    for j, query in enumerate(instance.queries, start=1):
        violation = validate_query(
            query,
            instance.problem,
            instance.matrix.n,
            monotone=instance.matrix.monotone,
            bound_constant=bound,
        )
        if violation is not None:
            raise ValidationFailure(f"invalid query {j}: {violation}")
    return instance


def _print_counters(solver, stream=None) -> None:
    stream = stream if stream is not None else sys.stderr
    snap = solver.counters.snapshot()
    summary = " ".join(f"{key}={value}" for key, value in snap.items())
    print(f"counters: {summary}", file=stream)


def cmd_solve(args) -> int:
    instance = _load_instance(args.instance, bound=args.bound_constant)
    chain = parse_chain(args.chain)
    validate_chain(chain, instance.problem)
    config = _config_from_args(args)
    solver = build_solver(chain, instance.problem, instance.matrix, config)
    answers = []
    for query in instance.queries:
        answers.append(solver.query(query))
    _write_text(args.out, formats.print_answers(answers))
    _print_counters(solver)
    return EXIT_OK


def cmd_verify(args) -> int:
    instance = _load_instance(args.instance)
    claimed = formats.parse_answers(_read_text(args.answers), instance.matrix.n)
    if len(claimed) != len(instance.queries):
        raise formats.ParseError(
            f"answer file has {len(claimed)} rows, instance has {len(instance.queries)} queries"
        )
    solver = NaiveSolver(instance.matrix, problem=instance.problem)
    for j, query in enumerate(instance.queries, start=1):
        want = solver.query(query)
        got = claimed[j - 1]
        for i in range(instance.matrix.n):
            if want[i] != got[i]:
                print(
                    f"mismatch at query {j} row {i + 1}: "
                    f"expected {formats.format_value(want[i])}, "
                    f"got {formats.format_value(got[i])}"
                )
                return EXIT_MISMATCH
    print("ok")
    return EXIT_OK


def cmd_protocol(args) -> int:
    # Line-at-a-time reads: the next query is only consumed after the
    # previous answer has been written and flushed.
    problem, matrix = formats.read_header_and_matrix(sys.stdin.readline)
    bound = args.bound_constant
    violation = validate(matrix, problem, bound_constant=bound)
    if violation is not None:
        raise ValidationFailure(f"invalid matrix: {violation}")
    chain = parse_chain(args.chain)
    validate_chain(chain, problem)
    solver = build_solver(chain, problem, matrix, _config_from_args(args))
    may_skip_count = True  # piped instance files carry a "queries <q>" line
    while True:
        line = sys.stdin.readline()
        if line == "":
            break
        if not line.strip():
            continue
        tokens = line.split()
        if may_skip_count and tokens[0] == "queries" and len(tokens) == 2:
            may_skip_count = False
            continue
        may_skip_count = False
        if len(tokens) != matrix.n:
            raise ProtocolError(
                f"query has {len(tokens)} values, expected {matrix.n}"
            )
        try:
            query = Vector([formats.parse_value(t) for t in tokens])
        except formats.ParseError as exc:
            raise ProtocolError(str(exc)) from exc
        violation = validate_query(
            query, problem, matrix.n, monotone=matrix.monotone, bound_constant=bound
        )
        if violation is not None:
            raise ProtocolError(f"invalid query: {violation}")
        try:
            answer = solver.query(query)
        except StreamOrderError as exc:
            raise ProtocolError(str(exc)) from exc
        print(" ".join(formats.format_value(v) for v in answer), flush=True)
    _print_counters(solver)
    return EXIT_OK


def cmd_bench(args) -> int:
    chain = parse_chain(args.chain)
    problem = args.problem
    if problem is None:
        head = chain[0]
        if head == "naive":
            raise ValidationFailure("chain 'naive' needs an explicit --problem")
        from .chains import LINKS

        problem = LINKS[head].problem
    validate_chain(chain, problem)
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    columns = (
        "chain",
        "problem",
        "n",
        "trial",
        "queries",
        "inner_queries",
        "scan_length_total",
        "multiset_updates",
        "candidates_enumerated",
        "rmq_queries",
        "elapsed_ms",
    )
    print("\t".join(columns))
    for n in sizes:
        for trial in range(args.trials):
            spec = InstanceSpec(
                problem=problem,
                n=n,
                monotone=args.monotone if problem == "bmmp" else None,
                bound_constant=args.bound_constant if problem == "bmmp" else 1,
                seed=args.seed + trial,
            )
            matrix, queries = gen_instance(spec)
            config = _config_from_args(args)
            solver = build_solver(chain, problem, matrix, config)
            start = time.perf_counter()
            for query in queries:
                solver.query(query)
            elapsed_ms = (time.perf_counter() - start) * 1000.0
            snap = solver.counters.snapshot()
            row = (
                ",".join(chain),
                problem,
                str(n),
                str(trial),
                str(len(queries)),
                str(snap["inner_queries"]),
                str(snap["scan_length_total"]),
                str(snap["multiset_updates"]),
                str(snap["candidates_enumerated"]),
                str(snap["rmq_queries"]),
                f"{elapsed_ms:.3f}",
            )
            print("\t".join(row))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omv",
        description="Online matrix-vector product variants: generate, solve, verify, benchmark.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random instance file")
    gen.add_argument("problem", choices=PROBLEMS)
    gen.add_argument("n", type=int)
    gen.add_argument("--dist", choices=("uniform", "skewed", "boolean"), default="uniform")
    gen.add_argument("--lo", type=int, default=0)
    gen.add_argument("--hi", type=int, default=None)
    gen.add_argument("--density", type=float, default=0.5)
    gen.add_argument("--inf-prob", dest="inf_prob", type=float, default=0.0)
    gen.add_argument("--monotone", choices=MONOTONE_CASES, default=None)
    gen.add_argument("--bound-constant", dest="bound_constant", type=int, default=1)
    gen.add_argument("--queries", type=int, default=None)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--out", default=None)
    gen.set_defaults(func=cmd_gen)

    def add_solver_flags(p):
        p.add_argument("--chain", default="naive")
        p.add_argument("--t", type=int, default=None)
        p.add_argument("--delta", type=int, default=None)
        p.add_argument("--hitting", default=None, help="hitting set size or 'full'")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--bound-constant", dest="bound_constant", type=int, default=4)
        p.add_argument("--repeats", type=int, default=1)

    solve = sub.add_parser("solve", help="answer an instance with a reduction chain")
    solve.add_argument("instance")
    add_solver_flags(solve)
    solve.add_argument("-o", "--out", default=None)
    solve.set_defaults(func=cmd_solve)

    verify = sub.add_parser("verify", help="check answers against the naive solver")
    verify.add_argument("instance")
    verify.add_argument("answers")
    verify.set_defaults(func=cmd_verify)

    protocol = sub.add_parser("protocol", help="interactive stdio query session")
    add_solver_flags(protocol)
    protocol.set_defaults(func=cmd_protocol)

    bench = sub.add_parser("bench", help="counter and timing table")
    add_solver_flags(bench)
    bench.add_argument("--problem", choices=PROBLEMS, default=None)
    bench.add_argument("--sizes", default="8,16,32")
    bench.add_argument("--trials", type=int, default=3)
    bench.add_argument("--monotone", choices=MONOTONE_CASES, default="rows")
    bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except formats.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ProtocolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL
    except (ValidationFailure, ChainError, StreamOrderError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
