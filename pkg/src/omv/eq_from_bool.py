"""Equality-product solver built from boolean-product inner solvers.

For each matrix column the t most frequent values are split off into t
boolean slice matrices: slice l marks the positions holding the column's
l-th most frequent value.  A query coordinate matching a frequent value is
caught by the corresponding boolean inner product; every other value that
appears in a column is "rare" (at most ceil(n/t) occurrences) and is kept
in a per-column dictionary mapping the value to the rows holding it, which
the query phase scans directly.  The output is exact: a 1 is emitted iff
some coordinate of the query equals the matrix entry above it.

Per query this issues exactly t inner boolean queries (slices that are
entirely zero are skipped and counted as issued-with-shortcut) and scans
at most n * ceil(n/t) rare entries.
"""

from __future__ import annotations

from collections import Counter
from typing import Optional

from .core import (
    Matrix,
    OnlineSolver,
    ReductionConfig,
    SolverFactory,
    Value,
    Vector,
    inner_factory,
)


class EqFromBoolSolver(OnlineSolver):
    """Online equality-product solver over t boolean inner instances."""

    problem = "eq"
    inner_problem = "bool"

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

        # top_values[k]: the t most frequent values of column k, most
        # frequent first, ties broken by smaller value; may be shorter than
        # t when the column has fewer distinct values (absent slots yield
        # all-zero slice columns rather than invented filler values).
        self.top_values: list[list[Value]] = []
        self.rare_rows: list[dict[Value, list[int]]] = []
        for k in range(n):
            column = matrix.column(k)
            counts = Counter(column)
            ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
            frequent = [value for value, _ in ranked[: self.t]]
            self.top_values.append(frequent)
            frequent_set = set(frequent)
            rare: dict[Value, list[int]] = {}
            for i, value in enumerate(column):
                if value not in frequent_set:
                    rare.setdefault(value, []).append(i)
            self.rare_rows.append(rare)

        self._slices: list[Optional[OnlineSolver]] = []
        self._slice_rows: list[list[list[int]]] = []
        self.shortcut_queries = 0
        for level in range(self.t):
            rows = [
                [
                    1
                    if level < len(self.top_values[k])
                    and matrix.rows[i][k] == self.top_values[k][level]
                    else 0
                    for k in range(n)
                ]
                for i in range(n)
            ]
            if any(any(row) for row in rows):
                self._slices.append(make_inner("bool", Matrix(rows, tag="boolean"), self.config))
            else:
                self._slices.append(None)
            if self.config.debug:
                # Keep slice contents so witnesses can be reconstructed.
                self._slice_rows.append(rows)
        self.last_witnesses: Optional[list[int]] = None

    def _answer(self, vector: Vector) -> Vector:
        n = self.matrix.n
        out = [0] * n
        witnesses = [-1] * n if self.config.debug else None

        for level, inner in enumerate(self._slices):
            label = f"bool[{level}]"
            if inner is None:
                # All-zero slice: the product is all zeros without asking.
                self.counters.count_inner(label)
                self.shortcut_queries += 1
                continue
            masked = [
                1
                if level < len(self.top_values[k])
                and vector[k] == self.top_values[k][level]
                else 0
                for k in range(n)
            ]
            bits = inner.query(Vector(masked))
            self.counters.count_inner(label)
            for i in range(n):
                if bits[i] and not out[i]:
                    out[i] = 1
                    if witnesses is not None:
                        rows = self._slice_rows[level]
                        witnesses[i] = next(
                            k for k in range(n) if masked[k] and rows[i][k]
                        )

        for k in range(n):
            hits = self.rare_rows[k].get(vector[k])
            if hits is None:
                continue
            self.counters.scan_length_total += len(hits)
            for i in hits:
                if not out[i]:
                    out[i] = 1
                    if witnesses is not None:
                        witnesses[i] = k

        self.last_witnesses = witnesses
        return Vector(out)
