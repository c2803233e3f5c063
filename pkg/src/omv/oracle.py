"""Naive reference solvers for all six products, plus brute-force helpers.

Two layers live here on purpose.  The module-level functions (bool_mv,
eq_exists_mv, ...) are definitional enumerations written in plain Python;
they are the ground truth that every test compares against and they stay
deliberately dumb.  NaiveSolver wraps the same O(n^2)-per-query semantics
in numpy so that reduction chains, which issue very many inner queries,
run at a usable speed.  The two layers are cross-checked against each
other in the test suite.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .core import (
    INF,
    DimensionMismatch,
    Matrix,
    OnlineSolver,
    ReductionConfig,
    Value,
    Vector,
)


def _check_dims(matrix: Matrix, vector: Vector) -> int:
    if len(vector) != matrix.n:
        raise DimensionMismatch(
            f"vector length {len(vector)} against {matrix.n}x{matrix.n} matrix"
        )
    return matrix.n


def bool_mv(matrix: Matrix, vector: Vector) -> Vector:
    """Boolean product: out[i] = 1 iff some k has M[i,k] = 1 and v[k] = 1."""
    n = _check_dims(matrix, vector)
    out = [
        1 if any(matrix.rows[i][k] == 1 and vector[k] == 1 for k in range(n)) else 0
        for i in range(n)
    ]
    return Vector(out)


def eq_exists_mv(matrix: Matrix, vector: Vector) -> Vector:
    """Equality product: out[i] = 1 iff some k has M[i,k] = v[k]."""
    n = _check_dims(matrix, vector)
    out = [
        1 if any(matrix.rows[i][k] == vector[k] for k in range(n)) else 0
        for i in range(n)
    ]
    return Vector(out)


def dom_exists_mv(matrix: Matrix, vector: Vector) -> Vector:
    """Dominance product: out[i] = 1 iff some k has M[i,k] <= v[k]."""
    n = _check_dims(matrix, vector)
    out = [
        1 if any(matrix.rows[i][k] <= vector[k] for k in range(n)) else 0
        for i in range(n)
    ]
    return Vector(out)


def minwitness_mv(matrix: Matrix, vector: Vector) -> Vector:
    """Min-witness product: smallest 1-based k with M[i,k] = v[k] = 1, else inf."""
    n = _check_dims(matrix, vector)
    out: list[Value] = []
    for i in range(n):
        witness: Value = INF
        for k in range(n):
            if matrix.rows[i][k] == 1 and vector[k] == 1:
                witness = k + 1
                break
        out.append(witness)
    return Vector(out)


def minmax_mv(matrix: Matrix, vector: Vector) -> Vector:
    """Min-max product: out[i] = min over k of max(M[i,k], v[k])."""
    n = _check_dims(matrix, vector)
    out = [
        min(max(matrix.rows[i][k], vector[k]) for k in range(n)) for i in range(n)
    ]
    return Vector(out)


def _extended_sum(a: Value, b: Value) -> Value:
    # +inf absorbs; the -inf + +inf combination never occurs because min-plus
    # inputs are validated finite or +inf only.
    if a == INF or b == INF:
        return INF
    return a + b


def minplus_mv(matrix: Matrix, vector: Vector) -> Vector:
    """Min-plus product: out[i] = min over k of M[i,k] + v[k].

    The public bmmp problem is finite-valued; +inf entries are tolerated
    here for internal helpers and absorb any sum they appear in.
    """
    n = _check_dims(matrix, vector)
    out = [
        min(_extended_sum(matrix.rows[i][k], vector[k]) for k in range(n))
        for i in range(n)
    ]
    return Vector(out)


def candidate_set_bruteforce(
    matrix: Matrix, vector: Vector, delta: int, i: int
) -> set[int]:
    """Candidate columns for output i of min-plus, by full enumeration.

    Rounds M and v down by delta, finds the rounded row minimum, and
    returns every 0-based k whose rounded sum is the minimum or one above
    it.  This is the reference that list_candidates() must reproduce; it
    always contains every true minimizer of M[i,k] + v[k].
    """
    if delta < 1:
        raise ValueError("delta must be >= 1")
    n = _check_dims(matrix, vector)
    sums = [matrix.rows[i][k] // delta + vector[k] // delta for k in range(n)]
    lo = min(sums)
    return {k for k in range(n) if sums[k] in (lo, lo + 1)}


def bit_trick_predicate(a: int, b: int, bits: int) -> bool:
    """Strict-less-than test via a per-bit decomposition.

    True iff some bit position l < bits has bit l of a clear, bit l of b
    set, and a and b identical above bit l.  For 0 <= a, b < 2**bits this
    is equivalent to a < b; the equality-product route to dominance rests
    on exactly this decomposition.
    """
    if a < 0 or b < 0 or a >= 1 << bits or b >= 1 << bits:
        raise ValueError("operands must lie in [0, 2**bits)")
    for level in range(bits):
        if (a >> level) & 1 == 0 and (b >> level) & 1 == 1:
            if a >> (level + 1) == b >> (level + 1):
                return True
    return False


def _to_array(values, n: int) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape[-1] != n:
        raise DimensionMismatch(f"expected length {n}, got {arr.shape[-1]}")
    return arr


def as_values(arr: np.ndarray) -> list[Value]:
    """Convert a float64 answer row back to ints and infinity sentinels."""
    out: list[Value] = []
    for x in arr.tolist():
        if x == INF or x == -INF:
            out.append(x)
        else:
            out.append(int(x))
    return out


class NaiveSolver(OnlineSolver):
    """O(n^2)-per-query solver for any of the six products.

    The matrix is converted once to a float64 array at preprocessing time
    (floats represent our bounded ints and the infinity sentinels exactly),
    and each query is one vectorized pass.  With ``config.debug`` set, the
    equality product records one witness column per output 1 in
    ``last_witnesses`` (-1 where the output is 0), which the randomized
    min-plus reduction uses for its soundness checks.
    """

    def __init__(
        self,
        matrix: Matrix,
        config: Optional[ReductionConfig] = None,
        problem: str = "bool",
    ):
        super().__init__(matrix, config)
        self.problem = problem
        self._m = np.array(matrix.rows, dtype=np.float64)
        if problem in ("bool", "minwit"):
            self._mbool = self._m == 1.0
        self.last_witnesses: Optional[list[int]] = None
        try:
            self._impl = getattr(self, f"_{problem}_answer")
        except AttributeError:
            raise ValueError(f"unknown problem {problem!r}") from None

    def _answer(self, vector: Vector) -> Vector:
        return self._impl(_to_array(vector.entries, self.matrix.n))

    def _bool_answer(self, v: np.ndarray) -> Vector:
        hits = self._mbool & (v == 1.0)[None, :]
        return Vector(hits.any(axis=1).astype(np.int64).tolist())

    def _eq_answer(self, v: np.ndarray) -> Vector:
        hits = self._m == v[None, :]
        any_hit = hits.any(axis=1)
        if self.config.debug:
            first = np.argmax(hits, axis=1)
            self.last_witnesses = [
                int(f) if h else -1 for f, h in zip(first, any_hit)
            ]
        return Vector(any_hit.astype(np.int64).tolist())

    def _dom_answer(self, v: np.ndarray) -> Vector:
        return Vector((self._m <= v[None, :]).any(axis=1).astype(np.int64).tolist())

    def _minwit_answer(self, v: np.ndarray) -> Vector:
        hits = self._mbool & (v == 1.0)[None, :]
        first = np.argmax(hits, axis=1)
        any_hit = hits.any(axis=1)
        return Vector([int(f) + 1 if h else INF for f, h in zip(first, any_hit)])

    def _minmax_answer(self, v: np.ndarray) -> Vector:
        return Vector(as_values(np.min(np.maximum(self._m, v[None, :]), axis=1)))

    def _bmmp_answer(self, v: np.ndarray) -> Vector:
        return Vector(as_values(np.min(self._m + v[None, :], axis=1)))


def naive_factory(problem: str, matrix: Matrix, config: ReductionConfig) -> NaiveSolver:
    """SolverFactory building a NaiveSolver; the terminal link of every chain."""
    return NaiveSolver(matrix, config, problem=problem)
