"""Shared domain types for online matrix-vector product solvers.

An online solver is handed a square matrix up front for preprocessing and
must then answer a stream of vector queries one at a time: each answer has
to be produced before the next query becomes visible.  Six product variants
share this contract (tokens used throughout the package and in file
formats):

    bool    -- boolean product: out[i] = 1 iff some k has M[i,k] = v[k] = 1
    eq      -- equality product: out[i] = 1 iff some k has M[i,k] = v[k]
    dom     -- dominance product: out[i] = 1 iff some k has M[i,k] <= v[k]
    minwit  -- min-witness: smallest 1-based k with M[i,k] = v[k] = 1, or inf
    minmax  -- min-max: min over k of max(M[i,k], v[k])
    bmmp    -- bounded monotone min-plus: min over k of M[i,k] + v[k], with
               entries in [0, c*n] and one declared monotonicity direction

Values are plain Python ints; the infinity sentinels are ``float("inf")``
and ``float("-inf")``, which order correctly against ints and stay exact
(finite values never become floats).  Storage is 0-based; every index that
reaches a user (violation reports, min-witness answers, file formats) is
1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

INF = float("inf")
NEG_INF = float("-inf")

# Finite values beyond this magnitude could make derived quantities (rank
# shifts, 2*(i+k)-M[i,k], min-plus sums) overflow a 64-bit accumulator in
# the numpy-backed solvers; validate() rejects them up front.
VALUE_LIMIT = 2**40

PROBLEMS = ("bool", "eq", "dom", "minwit", "minmax", "bmmp")

#: Monotonicity directions for the bmmp problem, named by file-format token:
#: rows   -- every matrix row is nondecreasing left to right
#: cols   -- every matrix column is nondecreasing top to bottom
#: query  -- every query vector is nondecreasing
#: stream -- each coordinate is nondecreasing from one query to the next
MONOTONE_CASES = ("rows", "cols", "query", "stream")

Value = int | float


def is_finite(value: Value) -> bool:
    """True for plain ints, False for the two infinity sentinels."""
    return not isinstance(value, float)


def compare(a: Value, b: Value) -> int:
    """Three-way comparison under the total order -inf < ints < +inf."""
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


class DimensionMismatch(ValueError):
    """Query vector length does not match the solver's matrix dimension."""


class StreamOrderError(ValueError):
    """A stream-monotone query regressed below the previous query."""


@dataclass(frozen=True)
class Violation:
    """First offending position found by validate(); indices are 1-based."""

    row: Optional[int]
    col: Optional[int]
    reason: str

    def __str__(self) -> str:
        where = ""
        if self.row is not None and self.col is not None:
            where = f" at ({self.row},{self.col})"
        elif self.col is not None:
            where = f" at column {self.col}"
        return f"{self.reason}{where}"


@dataclass
class Vector:
    """Column vector over ints and infinity sentinels."""

    entries: list[Value]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k: int) -> Value:
        return self.entries[k]

    def __iter__(self) -> Iterator[Value]:
        return iter(self.entries)


@dataclass
class Matrix:
    """Square row-major matrix over ints and infinity sentinels.

    ``tag`` records the intended value domain ("boolean", "integer" or
    "bounded").  ``monotone`` carries the declared monotonicity direction
    for bmmp instances (None elsewhere); for the query/stream cases it is
    a promise about the query stream rather than a matrix property.
    validate() checks actual content against a problem kind.
    """

    rows: list[list[Value]]
    tag: str = "integer"
    monotone: Optional[str] = None

    @property
    def n(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> list[Value]:
        return self.rows[i]

    def column(self, k: int) -> list[Value]:
        return [row[k] for row in self.rows]


def _entry_violation(v: Value, problem: str, n: int, bound: int) -> Optional[str]:
    if problem in ("bool", "minwit"):
        if v not in (0, 1):
            return "boolean entry must be 0 or 1"
        return None
    if is_finite(v) and abs(v) > VALUE_LIMIT:
        return "finite value exceeds the +/-2^40 limit"
    if problem == "eq":
        if not is_finite(v):
            return "equality product requires finite entries"
        return None
    if problem == "bmmp":
        if not is_finite(v):
            return "min-plus requires finite entries"
        if v < 0 or v > bound * n:
            return f"entry outside [0, {bound}*n]"
        return None
    # dom / minmax accept the full extended domain
    return None


def validate(
    matrix: Matrix,
    problem: str,
    monotone: Optional[str] = None,
    bound_constant: int = 4,
) -> Optional[Violation]:
    """Check a matrix against a problem kind's value domain.

    Returns None when the matrix is acceptable, otherwise a Violation
    naming the first offending entry (1-based).  For bmmp with the rows or
    cols case the declared monotonicity is checked as well; the query and
    stream cases constrain query vectors, not the matrix.  When
    ``monotone`` is not given it defaults to the matrix's own declaration.
    """
    if monotone is None:
        monotone = matrix.monotone
    if problem not in PROBLEMS:
        return Violation(None, None, f"unknown problem {problem!r}")
    if problem == "bmmp" and monotone not in MONOTONE_CASES:
        return Violation(None, None, f"bmmp requires a monotone case, got {monotone!r}")
    if problem != "bmmp" and monotone is not None:
        return Violation(None, None, "monotone case only applies to bmmp")
    n = matrix.n
    if n == 0:
        return Violation(None, None, "matrix dimension must be positive")
    for i, row in enumerate(matrix.rows):
        if len(row) != n:
            return Violation(i + 1, None, f"row has length {len(row)}, expected {n}")
        for k, v in enumerate(row):
            reason = _entry_violation(v, problem, n, bound_constant)
            if reason is not None:
                return Violation(i + 1, k + 1, reason)
    if problem == "bmmp" and monotone == "rows":
        for i, row in enumerate(matrix.rows):
            for k in range(n - 1):
                if row[k] > row[k + 1]:
                    return Violation(i + 1, k + 2, "row not nondecreasing")
    if problem == "bmmp" and monotone == "cols":
        for i in range(n - 1):
            for k in range(n):
                if matrix.rows[i][k] > matrix.rows[i + 1][k]:
                    return Violation(i + 2, k + 1, "column not nondecreasing")
    return None


def validate_query(
    vector: Vector,
    problem: str,
    n: int,
    monotone: Optional[str] = None,
    bound_constant: int = 4,
) -> Optional[Violation]:
    """Check one query vector against a problem kind (and the query case)."""
    if len(vector) != n:
        return Violation(None, None, f"query length {len(vector)}, expected {n}")
    for k, v in enumerate(vector):
        reason = _entry_violation(v, problem, n, bound_constant)
        if reason is not None:
            return Violation(None, k + 1, reason)
    if problem == "bmmp" and monotone == "query":
        for k in range(n - 1):
            if vector[k] > vector[k + 1]:
                return Violation(None, k + 2, "query vector not nondecreasing")
    return None


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def ceil_cbrt(n: int) -> int:
    r = round(n ** (1.0 / 3.0))
    while r**3 < n:
        r += 1
    while r > 1 and (r - 1) ** 3 >= n:
        r -= 1
    return r


@dataclass
class ReductionConfig:
    """Tunables shared by all reductions.

    ``t``, ``delta`` and ``hitting_set_size`` default to None meaning
    "auto": t = ceil(sqrt(n)), delta = ceil(n^(1/3)) and
    |R| = ceil(3 * delta * ln n), resolved when a solver preprocesses its
    matrix.  ``hitting_set_size`` may also be the string "full", which
    replaces random sampling with every column (forced-hit mode, making the
    randomized min-plus reduction deterministic).  ``bound_constant`` is
    the c in the [0, c*n] value bound accepted by the bmmp solver.
    ``repeats`` runs that many independent copies of the randomized step
    and takes a per-entry majority vote.  ``debug`` enables witness
    recording for soundness checks in tests.

    ``inner`` selects how a reduction builds its inner solvers when no
    factory is passed explicitly: None for the naive solver, or a chain
    (list of link names, or the comma-separated string the CLI accepts)
    applied recursively.
    """

    t: Optional[int] = None
    delta: Optional[int] = None
    hitting_set_size: Optional[int | str] = None
    seed: int = 0
    bound_constant: int = 4
    repeats: int = 1
    debug: bool = False
    inner: Optional[list[str] | str] = None

    def resolve_t(self, n: int) -> int:
        return self.t if self.t is not None else ceil_sqrt(n)

    def resolve_delta(self, n: int) -> int:
        return self.delta if self.delta is not None else ceil_cbrt(n)

    def resolve_hitting(self, n: int, delta: int) -> int | str:
        if self.hitting_set_size is None:
            return math.ceil(3 * delta * math.log(n)) if n > 1 else 0
        return self.hitting_set_size


_COUNTER_FIELDS = (
    "inner_queries",
    "scan_length_total",
    "multiset_updates",
    "candidates_enumerated",
    "rmq_queries",
)


@dataclass
class CounterLedger:
    """Operation counts mirroring each reduction's cost accounting.

    inner_queries counts queries issued to inner solver instances (with a
    per-instance breakdown in ``per_inner``); scan_length_total counts
    elements examined in rare-value and bucket scans; multiset_updates
    counts ordered-multiset repositionings; candidates_enumerated and
    rmq_queries count candidate-listing work.  Counters only grow; create
    a fresh solver to reset them.
    """

    inner_queries: int = 0
    scan_length_total: int = 0
    multiset_updates: int = 0
    candidates_enumerated: int = 0
    rmq_queries: int = 0
    per_inner: dict[str, int] = field(default_factory=dict)

    def count_inner(self, label: str, amount: int = 1) -> None:
        self.inner_queries += amount
        self.per_inner[label] = self.per_inner.get(label, 0) + amount

    def snapshot(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in _COUNTER_FIELDS}

    def since(self, snap: dict[str, int]) -> dict[str, int]:
        return {name: getattr(self, name) - snap[name] for name in _COUNTER_FIELDS}


class OnlineSolver:
    """Base class implementing the online query contract.

    Subclasses preprocess in __init__ and implement _answer().  query()
    checks dimensions, delegates, and advances query_index, which is
    1-based and equals j while the j-th query is being answered (the
    boolean-to-min-plus encoding needs it).  A solver must never look at
    any vector other than the current one; the harness's adaptive sessions
    exist to catch violations.
    """

    problem: str = ""

    def __init__(self, matrix: Matrix, config: Optional[ReductionConfig] = None):
        self.matrix = matrix
        self.config = config if config is not None else ReductionConfig()
        self.counters = CounterLedger()
        self._query_index = 1

    @property
    def query_index(self) -> int:
        return self._query_index

    def query(self, vector: Vector) -> Vector:
        if len(vector) != self.matrix.n:
            raise DimensionMismatch(
                f"query length {len(vector)} against {self.matrix.n}x{self.matrix.n} matrix"
            )
        answer = self._answer(vector)
        self._query_index += 1
        return answer

    def _answer(self, vector: Vector) -> Vector:
        raise NotImplementedError


#: Builds an inner solver for ``problem`` on ``matrix``; reductions receive
#: one of these so that chains compose without the modules knowing each
#: other.
SolverFactory = Callable[[str, Matrix, ReductionConfig], OnlineSolver]


def inner_factory(config: ReductionConfig) -> SolverFactory:
    """Resolve a config's ``inner`` selector into a solver factory.

    Imports happen at call time: this is the one place the shared types
    need to reach the chain builder and the naive solver.
    """
    from . import chains, oracle

    if config.inner is None:
        return oracle.naive_factory
    names = (
        chains.parse_chain(config.inner)
        if isinstance(config.inner, str)
        else list(config.inner)
    )

    def build(problem: str, matrix: Matrix, cfg: ReductionConfig) -> OnlineSolver:
        return chains.build_solver(names, problem, matrix, cfg)

    return build
