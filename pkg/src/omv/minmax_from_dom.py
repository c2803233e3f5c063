"""Min-max product solver built from dominance-product inner solvers.

Each output entry min_k max(M[i,k], v[k]) is split into two one-sided
minima and the final answer is their minimum:

    u[i] = min{ M[i,k] : M[i,k] >= v[k] }   (the matrix side wins the max)
    w[i] = min{ v[k]   : v[k] >= M[i,k] }   (the query side wins the max)

For u, every matrix row is sorted and chopped into t buckets of at most
ceil(n/t) consecutive elements.  Bucket l of all rows forms a slice matrix
holding the negated member values and +inf elsewhere; a dominance query
against the negated query vector then tells, per row, whether bucket l
contains an element >= the query coordinate above it.  The first hitting
bucket is scanned directly for the smallest qualifying element.  For w the
roles flip: the query vector is sorted and bucketed, each bucket becomes a
masked query against a single dominance solver on the matrix itself, and
the first hitting bucket is scanned.  Per query this issues exactly 2t
inner dominance queries and scans at most 2 * n * ceil(n/t) bucket
elements.

Inner dominance solvers only see finite values: finitize() replaces the
infinities by extreme finite stand-ins (matrix side wider than query side)
chosen so that no legal comparison changes and the +inf padding can never
produce a hit.  Genuine -inf matrix entries cannot survive that mapping --
negation folds them onto the padding value -- so their contributions are
recovered by a direct per-row scan over the precomputed positions holding
them; matrices without -inf entries take the bucketed path exclusively.
"""

from __future__ import annotations

from typing import Optional

from .core import (
    INF,
    NEG_INF,
    Matrix,
    OnlineSolver,
    ReductionConfig,
    SolverFactory,
    Value,
    Vector,
    ceil_div,
    inner_factory,
    is_finite,
)


def finitize(values: list[Value], w_bound: int, role: str) -> list[Value]:
    """Map infinities and out-of-range entries to extreme finite values.

    ``w_bound`` is the largest absolute finite value of the matrix the
    dominance instance was built from.  Matrix-side infinities become
    +/-(3W+2); query-side entries beyond +/-W (including infinities)
    become +/-(2W+1).  Every dominance comparison between a legal matrix
    value and a legal query value is unchanged by the mapping, and the
    matrix-side +inf can never be dominated by any mapped query entry.
    """
    if role == "matrix":
        big = 3 * w_bound + 2
        return [v if is_finite(v) else (big if v == INF else -big) for v in values]
    if role == "query":
        cap = 2 * w_bound + 1
        return [cap if v > w_bound else (-cap if v < -w_bound else v) for v in values]
    raise ValueError(f"unknown finitize role {role!r}")


def _negate(value: Value) -> Value:
    return -value


class MinMaxFromDomSolver(OnlineSolver):
    """Online min-max solver over 2t dominance inner queries per query."""

    problem = "minmax"
    inner_problem = "dom"

    def __init__(
        self,
        matrix: Matrix,
        config: Optional[ReductionConfig] = None,
        make_inner: Optional[SolverFactory] = None,
    ):
        super().__init__(matrix, config)
        make_inner = make_inner if make_inner is not None else inner_factory(self.config)
        n = matrix.n
        self.t = self.config.resolve_t(n)
        self.bucket_size = ceil_div(n, self.t)

        finite = [v for row in matrix.rows for v in row if is_finite(v)]
        self.w_bound = max((abs(v) for v in finite), default=0)

        # Sorted rows with (value, column) tie-break; equal values may end
        # up in different buckets, which the scan step tolerates.
        self._sorted_rows: list[list[tuple[Value, int]]] = [
            sorted((row[k], k) for k in range(n)) for row in matrix.rows
        ]
        self._buckets: list[list[list[tuple[Value, int]]]] = [
            [
                sorted_row[l * self.bucket_size : (l + 1) * self.bucket_size]
                for l in range(self.t)
            ]
            for sorted_row in self._sorted_rows
        ]
        self.neginf_cols: list[list[int]] = [
            [k for k in range(n) if row[k] == NEG_INF] for row in matrix.rows
        ]

        self._slice_solvers: list[OnlineSolver] = []
        for l in range(self.t):
            member = [
                {col for _, col in self._buckets[i][l]} for i in range(n)
            ]
            rows = [
                finitize(
                    [
                        _negate(matrix.rows[i][k]) if k in member[i] else INF
                        for k in range(n)
                    ],
                    self.w_bound,
                    "matrix",
                )
                for i in range(n)
            ]
            self._slice_solvers.append(
                make_inner("dom", Matrix(rows, tag="integer"), self.config)
            )

        # The query-side phase asks dominance queries against the matrix
        # itself.  -inf entries are folded onto the never-hit padding value
        # (their query-side contributions come from the direct scan), +inf
        # entries take the standard mapping.
        matrix_rows = [
            finitize(
                [INF if v == NEG_INF else v for v in row], self.w_bound, "matrix"
            )
            for row in matrix.rows
        ]
        self._matrix_solver = make_inner(
            "dom", Matrix(matrix_rows, tag="integer"), self.config
        )

    def _scan_bucket(
        self, bucket: list[tuple[Value, int]], qualifies
    ) -> Optional[Value]:
        for value, col in bucket:
            self.counters.scan_length_total += 1
            if qualifies(col):
                return value
        return None

    def _matrix_side(self, vector: Vector) -> list[Value]:
        """u[i] = min matrix entry in row i that is >= its query coordinate."""
        n = self.matrix.n
        neg_query = Vector(
            finitize([_negate(v) for v in vector], self.w_bound, "query")
        )
        hit_rows: list[list[int]] = []
        for l, solver in enumerate(self._slice_solvers):
            bits = solver.query(neg_query)
            self.counters.count_inner(f"dom[bucket{l}]")
            hit_rows.append(bits.entries)

        rows = self.matrix.rows
        out: list[Value] = []
        for i in range(n):
            best: Value = INF
            for l in range(self.t):
                if hit_rows[l][i]:
                    found = self._scan_bucket(
                        self._buckets[i][l],
                        lambda col, i=i: rows[i][col] >= vector[col],
                    )
                    if found is None:
                        raise AssertionError(
                            "hitting bucket contained no qualifying element"
                        )
                    best = found
                    break
            if self.neginf_cols[i]:
                self.counters.scan_length_total += len(self.neginf_cols[i])
                if any(vector[k] == NEG_INF for k in self.neginf_cols[i]):
                    best = NEG_INF
            out.append(best)
        return out

    def _query_side(self, vector: Vector) -> list[Value]:
        """w[i] = min query coordinate that is >= its matrix entry in row i."""
        n = self.matrix.n
        order = sorted((vector[k], k) for k in range(n))
        buckets = [
            order[l * self.bucket_size : (l + 1) * self.bucket_size]
            for l in range(self.t)
        ]
        hit_rows = []
        for l in range(self.t):
            member = {col for _, col in buckets[l]}
            masked = finitize(
                [vector[k] if k in member else NEG_INF for k in range(n)],
                self.w_bound,
                "query",
            )
            bits = self._matrix_solver.query(Vector(masked))
            self.counters.count_inner("dom[matrix]")
            hit_rows.append(bits.entries)

        rows = self.matrix.rows
        out: list[Value] = []
        for i in range(n):
            best: Value = INF
            for l in range(self.t):
                if hit_rows[l][i]:
                    found = self._scan_bucket(
                        buckets[l],
                        lambda col, i=i: vector[col] >= rows[i][col],
                    )
                    if found is None:
                        raise AssertionError(
                            "hitting bucket contained no qualifying element"
                        )
                    best = found
                    break
            if self.neginf_cols[i]:
                self.counters.scan_length_total += len(self.neginf_cols[i])
                side = min(vector[k] for k in self.neginf_cols[i])
                if side < best:
                    best = side
            out.append(best)
        return out

    def _answer(self, vector: Vector) -> Vector:
        matrix_side = self._matrix_side(vector)
        query_side = self._query_side(vector)
        return Vector([min(u, w) for u, w in zip(matrix_side, query_side)])
