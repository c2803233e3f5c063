"""The three light reductions: dom from eq, minwit from minmax, bool from bmmp.

Dominance from equality first replaces values by ranks.  Matrix entries map
to 1 + (number of distinct matrix values strictly below), query entries to
the number of distinct matrix values less-or-equal; the mapping is an order
embedding, so M[i,k] <= v[k] iff rank(M[i,k]) <= query_rank(v[k]), with
everything now in [0, n^2].  A strict comparison a < b over nonnegative
integers holds iff at some bit position a has 0, b has 1, and the higher
bits agree, so testing rank <= query_rank (that is, rank < query_rank + 1)
becomes one equality product per bit position: slice l stores the high
bits of the rank where bit l is 0 (a sentinel otherwise), the query stores
the high bits of query_rank + 1 where bit l is 1, and a slice equality hit
at any level means dominance.

Min-witness from min-max encodes positions as values: mapping 1-entries to
their own 1-based column index and 0-entries to +inf makes the min-max of
the encoded pair equal the smallest common 1-position.

Boolean from bounded monotone min-plus tilts the values by their position:
with rows/columns/queries numbered from 1, matrix entries become
2*(i+k) - M[i,k] and the j-th query becomes 2*(j-k) - v[k] + 2n (the +2n
keeps entries nonnegative and shifts the decision target by the same
constant).  The min-plus sum at (i,k) is then 2*(i+j) + 2n minus
(M[i,k] + v[k]), so the minimum hits 2*(i+j) - 2 + 2n exactly when some k
has both entries equal to 1.  The tilt makes the encoded matrix
nondecreasing along rows and columns and the encoded queries nondecreasing
across the stream, which is the monotonicity promise the inner solver gets.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Optional

from .core import (
    INF,
    Matrix,
    OnlineSolver,
    ReductionConfig,
    SolverFactory,
    Value,
    Vector,
    inner_factory,
)


class RankMap:
    """Order embedding of matrix values (and arbitrary query values) into ints.

    rank() is defined on values that appear in the matrix and starts at 1;
    query_rank() is defined on any value and counts the distinct matrix
    values less-or-equal, starting at 0.  For a matrix value a and any b,
    a <= b iff rank(a) <= query_rank(b).
    """

    def __init__(self, matrix: Matrix):
        self.values: list[Value] = sorted({v for row in matrix.rows for v in row})

    def rank(self, value: Value) -> int:
        return bisect_left(self.values, value) + 1

    def query_rank(self, value: Value) -> int:
        return bisect_right(self.values, value)


def rank_bit_count(n: int) -> int:
    """Number of bit slices needed for ranks of an n x n matrix.

    Ranks reach n^2 and the strictness shift adds one, so one bit beyond
    ceil(log2(n^2)) always suffices; the degenerate n = 1 still needs two
    bits to see the shift.
    """
    return max((n * n - 1).bit_length() + 1, 2)


class DomFromEqSolver(OnlineSolver):
    """Online dominance solver asking one equality query per bit slice."""

    problem = "dom"
    inner_problem = "eq"

    def __init__(
        self,
        matrix: Matrix,
        config: Optional[ReductionConfig] = None,
        make_inner: Optional[SolverFactory] = None,
    ):
        super().__init__(matrix, config)
        make_inner = make_inner if make_inner is not None else inner_factory(self.config)
        n = matrix.n
        self.rank_map = RankMap(matrix)
        self.bit_count = rank_bit_count(n)
        self._slices: list[OnlineSolver] = []
        for level in range(self.bit_count):
            rows = []
            for row in matrix.rows:
                encoded = []
                for v in row:
                    r = self.rank_map.rank(v)
                    encoded.append(r >> (level + 1) if (r >> level) & 1 == 0 else -1)
                rows.append(encoded)
            self._slices.append(
                make_inner("eq", Matrix(rows, tag="integer"), self.config)
            )

    def _answer(self, vector: Vector) -> Vector:
        n = self.matrix.n
        shifted = [self.rank_map.query_rank(v) + 1 for v in vector]
        out = [0] * n
        for level, inner in enumerate(self._slices):
            masked = [
                b >> (level + 1) if (b >> level) & 1 == 1 else -2 for b in shifted
            ]
            bits = inner.query(Vector(masked))
            self.counters.count_inner(f"eq[{level}]")
            for i in range(n):
                if bits[i]:
                    out[i] = 1
        return Vector(out)


class MinWitnessFromMinMaxSolver(OnlineSolver):
    """Online min-witness solver asking one min-max query per query."""

    problem = "minwit"
    inner_problem = "minmax"

    def __init__(
        self,
        matrix: Matrix,
        config: Optional[ReductionConfig] = None,
        make_inner: Optional[SolverFactory] = None,
    ):
        super().__init__(matrix, config)
        make_inner = make_inner if make_inner is not None else inner_factory(self.config)
        rows = [
            [k + 1 if v == 1 else INF for k, v in enumerate(row)]
            for row in matrix.rows
        ]
        self._inner = make_inner("minmax", Matrix(rows, tag="integer"), self.config)

    def _answer(self, vector: Vector) -> Vector:
        n = self.matrix.n
        encoded = Vector([k + 1 if vector[k] == 1 else INF for k in range(n)])
        answer = self._inner.query(encoded)
        self.counters.count_inner("minmax")
        return Vector([a if a <= n else INF for a in answer])


def tilt_matrix(matrix: Matrix) -> Matrix:
    """Position-tilted boolean matrix for the min-plus route (1-based i, k)."""
    rows = [
        [2 * ((i + 1) + (k + 1)) - v for k, v in enumerate(row)]
        for i, row in enumerate(matrix.rows)
    ]
    return Matrix(rows, tag="bounded", monotone="stream")


def tilt_query(vector: Vector, j: int, n: int) -> Vector:
    """Position-tilted j-th boolean query, shifted by 2n to stay nonnegative."""
    return Vector([2 * (j - (k + 1)) - vector[k] + 2 * n for k in range(n)])


class BoolFromBmmpSolver(OnlineSolver):
    """Online boolean solver asking one bounded monotone min-plus query each.

    The tilt keeps encoded query entries within the inner solver's
    [0, 4n] bound for streams of up to n queries (the defining stream
    shape); longer streams are rejected by the inner validation.
    """

    problem = "bool"
    inner_problem = "bmmp"

    def __init__(
        self,
        matrix: Matrix,
        config: Optional[ReductionConfig] = None,
        make_inner: Optional[SolverFactory] = None,
    ):
        super().__init__(matrix, config)
        make_inner = make_inner if make_inner is not None else inner_factory(self.config)
        self._inner = make_inner("bmmp", tilt_matrix(matrix), self.config)

    def _answer(self, vector: Vector) -> Vector:
        n = self.matrix.n
        j = self.query_index
        answer = self._inner.query(tilt_query(vector, j, n))
        self.counters.count_inner("bmmp")
        target = [2 * ((i + 1) + j) - 2 + 2 * n for i in range(n)]
        return Vector([1 if answer[i] == target[i] else 0 for i in range(n)])
