"""Reduction-chain composition.

A chain is a comma-separated list of link names ending in "naive", e.g.
"minmax<-dom,dom<-eq,eq<-bool,naive".  Each link solves the problem on the
left of its arrow by querying inner instances of the problem on the right;
"naive" is the polymorphic terminal that answers any problem directly.
Adjacent links must agree on the problem they hand across, mirroring the
arrows of the reduction diagram; build_solver() checks this and wires the
solvers together through inner-solver factories.

The minwit-to-bool step is a one-line projection (a witness exists iff the
boolean product is 1), implemented here rather than as a module of its own.
"""

from __future__ import annotations

from typing import Optional

from .bmmp_from_eq import BmmpFromEqSolver
from .core import Matrix, OnlineSolver, ReductionConfig, SolverFactory, Vector, inner_factory
from .eq_from_bool import EqFromBoolSolver
from .folklore import BoolFromBmmpSolver, DomFromEqSolver, MinWitnessFromMinMaxSolver
from .minmax_from_dom import MinMaxFromDomSolver
from .oracle import NaiveSolver


class ChainError(ValueError):
    """Malformed or incompatible reduction chain."""


class BoolFromMinWitSolver(OnlineSolver):
    """Trivial projection: the boolean product is 1 iff a witness exists."""

    problem = "bool"
    inner_problem = "minwit"

    def __init__(
        self,
        matrix: Matrix,
        config: Optional[ReductionConfig] = None,
        make_inner: Optional[SolverFactory] = None,
    ):
        super().__init__(matrix, config)
        make_inner = make_inner if make_inner is not None else inner_factory(self.config)
        self._inner = make_inner("minwit", matrix, self.config)

    def _answer(self, vector: Vector) -> Vector:
        witnesses = self._inner.query(vector)
        self.counters.count_inner("minwit")
        return Vector([1 if w <= self.matrix.n else 0 for w in witnesses])


LINKS: dict[str, type[OnlineSolver]] = {
    "eq<-bool": EqFromBoolSolver,
    "dom<-eq": DomFromEqSolver,
    "minmax<-dom": MinMaxFromDomSolver,
    "minwit<-minmax": MinWitnessFromMinMaxSolver,
    "bmmp<-eq": BmmpFromEqSolver,
    "bool<-bmmp": BoolFromBmmpSolver,
    "bool<-minwit": BoolFromMinWitSolver,
}

#: Complete chain from each problem down to the naive boolean oracle,
#: following the reduction diagram (the boolean problem goes around the
#: large cycle through the min-witness projection; see ALT_BOOL_CHAIN for
#: the short cycle through min-plus).
FULL_CYCLE: dict[str, list[str]] = {
    "eq": ["eq<-bool", "naive"],
    "dom": ["dom<-eq", "eq<-bool", "naive"],
    "minmax": ["minmax<-dom", "dom<-eq", "eq<-bool", "naive"],
    "minwit": ["minwit<-minmax", "minmax<-dom", "dom<-eq", "eq<-bool", "naive"],
    "bmmp": ["bmmp<-eq", "eq<-bool", "naive"],
    "bool": [
        "bool<-minwit",
        "minwit<-minmax",
        "minmax<-dom",
        "dom<-eq",
        "eq<-bool",
        "naive",
    ],
}

ALT_BOOL_CHAIN = ["bool<-bmmp", "bmmp<-eq", "eq<-bool", "naive"]


def parse_chain(text: str) -> list[str]:
    """Split a chain string, appending the naive terminal when omitted."""
    names = [part.strip() for part in text.split(",") if part.strip()]
    if not names:
        raise ChainError("empty chain")
    for name in names:
        if name != "naive" and name not in LINKS:
            raise ChainError(f"unknown chain link {name!r}")
    if names[-1] != "naive":
        names.append("naive")
    return names


def validate_chain(names: list[str], problem: str) -> None:
    """Check that a chain solves ``problem`` and its links compose."""
    current = problem
    for position, name in enumerate(names):
        if name == "naive":
            if position != len(names) - 1:
                raise ChainError("naive must be the terminal link")
            return
        link = LINKS.get(name)
        if link is None:
            raise ChainError(f"unknown chain link {name!r}")
        if link.problem != current:
            raise ChainError(
                f"link {name!r} solves {link.problem!r} but {current!r} is needed"
            )
        current = link.inner_problem
    raise ChainError("chain must terminate in the naive oracle")


def build_solver(
    names: list[str],
    problem: str,
    matrix: Matrix,
    config: Optional[ReductionConfig] = None,
) -> OnlineSolver:
    """Instantiate the composed solver for ``problem`` on ``matrix``."""
    validate_chain(names, problem)
    config = config if config is not None else ReductionConfig()

    def factory(inner_problem: str, inner_matrix: Matrix, cfg: ReductionConfig):
        return build_solver(names[1:], inner_problem, inner_matrix, cfg)

    head = names[0]
    if head == "naive":
        return NaiveSolver(matrix, config, problem=problem)
    return LINKS[head](matrix, config, make_inner=factory)
