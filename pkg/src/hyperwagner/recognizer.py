"""Embeddability verdicts via the two forbidden minors."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .complexes import UniformComplex
from .connectivity import one_skeleton, vertex_connectivity
from .errors import TooSmall
from .generators import complete_bipartite_uniform, complete_uniform
from .homology import ShapeReport, rd_shape_check
from .minors import (
    BUDGET_EXHAUSTED,
    FOUND,
    MinorWitness,
    SearchBudget,
    has_minor,
)

EMBEDDABLE = "embeddable"
NON_EMBEDDABLE = "non-embeddable"
MINOR_FREE_UNVERIFIED = "minor-free-unverified"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class PreconditionReport:
    uniform: bool
    connected: bool
    closed: bool
    shape: ShapeReport
    skeleton_connectivity: Optional[int]
    d_connected: bool
    triangulated: str  # "asserted" | "not-asserted": never decided here

    def structural_ok(self) -> bool:
        return self.connected and self.closed and self.shape.verdict == "PASS"


@dataclass(frozen=True)
class Verdict:
    status: str
    which: Optional[str]  # "complete" | "bipartite" on non-embeddable
    witness: Optional[MinorWitness]
    preconditions: PreconditionReport
    reason: str = ""
    nodes: int = 0


def check_preconditions(c: UniformComplex,
                        assert_triangulated: bool = False) -> PreconditionReport:
    """Everything checkable about the recognizer's input hypothesis.

    Whether the complex really is the boundary skeleton of a closed
    higher-dimensional complex cannot be decided here; it enters the
    report only as the caller's assertion.
    """
    shape = rd_shape_check(c)
    closed = c.is_closed() and bool(c.facets)
    kappa: Optional[int] = None
    try:
        kappa, _ = vertex_connectivity(one_skeleton(c))
    except TooSmall:
        pass
    return PreconditionReport(
        uniform=True,
        connected=shape.connected,
        closed=closed,
        shape=shape,
        skeleton_connectivity=kappa,
        d_connected=kappa is not None and kappa >= c.d,
        triangulated="asserted" if assert_triangulated else "not-asserted",
    )


def plain_k33() -> UniformComplex:
    """K33 as an ordinary graph, parts {0,1,2} and {3,4,5}."""
    return UniformComplex(2, 6, [(a, b) for a in range(3) for b in range(3, 6)])


def bipartite_target(d: int) -> UniformComplex:
    """The bipartite obstruction searched for at uniformity d."""
    # at d=2 the planarity obstruction is the plain complete bipartite
    # graph, which also subsumes the literal bipartite family there
    if d == 2:
        return plain_k33()
    return complete_bipartite_uniform(3, d + 1, d)


def _decide(c: UniformComplex, budget: Optional[SearchBudget],
            preconditions: PreconditionReport, gate_on_preconditions: bool,
            assert_triangulated: bool, reduce_first: bool) -> Verdict:
    nodes = 0
    exhausted = []
    for which, target in (("complete", complete_uniform(c.d + 3, c.d)),
                          ("bipartite", bipartite_target(c.d))):
        outcome = has_minor(c, target, budget, reduce_first=reduce_first)
        nodes += outcome.nodes
        if outcome.status == FOUND:
            return Verdict(NON_EMBEDDABLE, which, outcome.witness,
                           preconditions, nodes=nodes)
        if outcome.status == BUDGET_EXHAUSTED:
            exhausted.append(which)
    if exhausted:
        return Verdict(UNKNOWN, None, None, preconditions,
                       reason=f"budget exhausted on {', '.join(exhausted)} "
                              "target", nodes=nodes)
    if not gate_on_preconditions:
        return Verdict(EMBEDDABLE, None, None, preconditions, nodes=nodes)
    if preconditions.structural_ok():
        if assert_triangulated:
            return Verdict(EMBEDDABLE, None, None, preconditions, nodes=nodes)
        return Verdict(MINOR_FREE_UNVERIFIED, None, None, preconditions,
                       reason="minor-free, but the triangulated hypothesis "
                              "was not asserted", nodes=nodes)
    if preconditions.shape.verdict == "PASS-MODULO-PI1-UNKNOWN":
        return Verdict(UNKNOWN, None, None, preconditions,
                       reason="minor-free, but the fundamental group could "
                              "not be decided", nodes=nodes)
    bad = []
    if not preconditions.connected:
        bad.append("not connected")
    if not preconditions.closed:
        bad.append("not closed")
    if preconditions.shape.verdict == "FAIL":
        bad.append("shape check failed: " + ", ".join(preconditions.shape.failures))
    return Verdict(UNKNOWN, None, None, preconditions,
                   reason="minor-free, but preconditions failed: "
                          + "; ".join(bad), nodes=nodes)


def is_embeddable(c: UniformComplex, budget: Optional[SearchBudget] = None,
                  assert_triangulated: bool = True) -> Verdict:
    """Embeddability verdict from the two forbidden-minor searches.

    A found minor refutes embeddability unconditionally. An empty search
    supports "embeddable" only under the full input hypothesis: the
    structural parts are checked here and the triangulated part is the
    caller's assertion; without it the verdict degrades to
    minor-free-unverified.
    """
    preconditions = check_preconditions(c, assert_triangulated)
    return _decide(c, budget, preconditions, gate_on_preconditions=True,
                   assert_triangulated=assert_triangulated,
                   reduce_first=c.d == 2)


def wagner_d2(g: UniformComplex, budget: Optional[SearchBudget] = None) -> Verdict:
    """Planarity of a graph given as a 2-uniform complex.

    The d=2 characterization is unconditional, so no precondition gating:
    both searches empty means planar.
    """
    preconditions = check_preconditions(g)
    return _decide(g, budget, preconditions, gate_on_preconditions=False,
                   assert_triangulated=False, reduce_first=True)
