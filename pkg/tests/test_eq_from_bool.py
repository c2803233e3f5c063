import random

from omv.core import Matrix, ReductionConfig, Vector, ceil_div
from omv.eq_from_bool import EqFromBoolSolver
from omv.oracle import NaiveSolver, eq_exists_mv


def test_frequency_table_frozen_example():
    # column (5, 5, 7, 9) with two frequent slots: 5 twice, then the 7/9
    # frequency tie broken by smaller value; 9 stays rare at row 4.
    column = [5, 5, 7, 9]
    matrix = Matrix([[c, 0, 0, 0] for c in column])
    solver = EqFromBoolSolver(matrix, ReductionConfig(t=2))
    assert solver.top_values[0] == [5, 7]
    assert solver.rare_rows[0] == {9: [3]}


def test_all_distinct_column_with_large_t():
    matrix = Matrix([[1, 0], [2, 0]])
    solver = EqFromBoolSolver(matrix, ReductionConfig(t=2))
    assert solver.top_values[0] == [1, 2]
    assert solver.rare_rows[0] == {}


def test_constant_column_single_slot():
    matrix = Matrix([[4, 4], [4, 4]])
    solver = EqFromBoolSolver(matrix, ReductionConfig(t=1))
    assert solver.top_values == [[4], [4]]
    assert all(not rare for rare in solver.rare_rows)


def test_rare_values_respect_frequency_cap():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.randint(2, 16)
        t = rng.choice([1, 2, ceil_div(n, 2)])
        matrix = Matrix([[rng.randint(0, 4) for _ in range(n)] for _ in range(n)])
        solver = EqFromBoolSolver(matrix, ReductionConfig(t=t))
        cap = ceil_div(n, t)
        for k in range(n):
            column = matrix.column(k)
            for value, rows in solver.rare_rows[k].items():
                assert rows == sorted(rows)
                assert column.count(value) == len(rows) <= cap
            assert len(set(solver.top_values[k])) == len(solver.top_values[k])


def test_absent_query_value_contributes_nothing():
    matrix = Matrix([[1, 1], [2, 2]])
    solver = EqFromBoolSolver(matrix, ReductionConfig(t=1))
    assert solver.query(Vector([99, 98])).entries == [0, 0]


def test_differential_against_oracle():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randint(2, 16)
        wide = rng.random() < 0.5
        span = (0, 3) if not wide else (-50, 50)
        t = rng.choice([1, 2, None, n])
        matrix = Matrix([[rng.randint(*span) for _ in range(n)] for _ in range(n)])
        solver = EqFromBoolSolver(matrix, ReductionConfig(t=t))
        reference = NaiveSolver(matrix, problem="eq")
        for _ in range(n):
            v = Vector([rng.randint(*span) for _ in range(n)])
            assert solver.query(v).entries == reference.query(v).entries


def test_counters_exact_inner_queries_and_scan_cap():
    rng = random.Random(4)
    for n, t in ((8, 2), (16, 4), (12, 5)):
        matrix = Matrix([[rng.randint(0, 3) for _ in range(n)] for _ in range(n)])
        solver = EqFromBoolSolver(matrix, ReductionConfig(t=t))
        for _ in range(5):
            snap = solver.counters.snapshot()
            solver.query(Vector([rng.randint(0, 3) for _ in range(n)]))
            delta = solver.counters.since(snap)
            assert delta["inner_queries"] == t
            assert delta["scan_length_total"] <= n * ceil_div(n, t)


def test_all_zero_slices_counted_as_shortcut():
    # one distinct value per column but three slots: two slices are empty
    matrix = Matrix([[4, 4], [4, 4]])
    solver = EqFromBoolSolver(matrix, ReductionConfig(t=3))
    solver.query(Vector([4, 0]))
    assert solver.counters.inner_queries == 3
    assert solver.shortcut_queries == 2


def test_debug_witnesses_are_sound():
    rng = random.Random(6)
    for _ in range(25):
        n = rng.randint(2, 10)
        matrix = Matrix([[rng.randint(0, 3) for _ in range(n)] for _ in range(n)])
        solver = EqFromBoolSolver(matrix, ReductionConfig(t=2, debug=True))
        v = Vector([rng.randint(0, 3) for _ in range(n)])
        out = solver.query(v)
        for i in range(n):
            if out[i]:
                k = solver.last_witnesses[i]
                assert matrix.rows[i][k] == v[k]
            else:
                assert solver.last_witnesses[i] == -1


def test_composes_with_real_boolean_inner_chain():
    rng = random.Random(14)
    matrix = Matrix([[rng.randint(0, 2) for _ in range(6)] for _ in range(6)])
    calls = []

    def factory(problem, inner_matrix, config):
        assert problem == "bool"
        calls.append(inner_matrix.n)
        return NaiveSolver(inner_matrix, config, problem="bool")

    solver = EqFromBoolSolver(matrix, ReductionConfig(t=2), make_inner=factory)
    v = Vector([rng.randint(0, 2) for _ in range(6)])
    assert solver.query(v).entries == eq_exists_mv(matrix, v).entries
    assert calls  # inner instances were actually created through the factory
