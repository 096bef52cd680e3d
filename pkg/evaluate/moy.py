"""Brackets of MOY graphs: through the web expansion and as n-state sums.

An n-state assigns every edge e a subset s(e) of {1..n} with |s(e)| = |e|,
such that at each vertex s(e1) and s(e2) partition s(e0). Following each
label i through the edges containing it splits the graph into loops, so

    2 rot(s) = sum over edges of winding(e) * sum over i in s(e) of (2i - n - 1).

Three polynomials come out of this module:

* ``moy_bracket``: the bracket of the web W(graph), in t.
* ``moy_state_sum``: N(graph) times the n-state sum, in t; equal to the above.
* ``moy_original_bracket``: the graph polynomial with quarter-integer powers
  of q, stored in u = q^(1/4).

An annulus labelled k counts as k free label-1 annuli.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterator, List, Tuple

from algebra.combinat import pi_count, quantum_factorial, quantum_int
from algebra.poly import ONE, ZERO, LaurentPoly, t_power
from evaluate.tensor_eval import evaluate
from webs.moy_graph import MOYEdge, MOYGraph, MOYVertex, expand_W, moy_edges
from errors import NonIntegralExponent, NonIntegralResult, NoStates, OpenDiagram
from utils import logger


@dataclass(frozen=True)
class MOYState:
    """Label sets of the non-annulus edges and label tuples of the annuli."""

    subsets: Tuple[Tuple[int, FrozenSet[int]], ...]
    annuli: Tuple[Tuple[int, Tuple[int, ...]], ...] = ()

    def of(self, edge_id: int) -> FrozenSet[int]:
        return dict(self.subsets)[edge_id]


@dataclass(frozen=True)
class SubstitutionReport:
    lhs: LaurentPoly
    rhs: LaurentPoly
    eta: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def _closed(graph: MOYGraph) -> None:
    if not graph.is_closed:
        raise OpenDiagram("MOY brackets need a closed graph")


def _vertex_options(
    vertex: MOYVertex,
    labels: Dict[int, int],
    assignment: Dict[int, FrozenSet[int]],
    n: int,
) -> Iterator[Tuple[FrozenSet[int], FrozenSet[int], FrozenSet[int]]]:
    s0, s1, s2 = (assignment.get(edge_id) for edge_id in (vertex.e0, vertex.e1, vertex.e2))
    if s0 is not None:
        firsts = [s1] if s1 is not None else [frozenset(c) for c in itertools.combinations(sorted(s0), labels[vertex.e1])]
        for first in firsts:
            if not first <= s0:
                continue
            second = s0 - first
            if s2 is None or s2 == second:
                yield s0, first, second
        return
    everything = range(1, n + 1)
    firsts = [s1] if s1 is not None else [frozenset(c) for c in itertools.combinations(everything, labels[vertex.e1])]
    for first in firsts:
        rest = [label for label in everything if label not in first]
        seconds = [s2] if s2 is not None else [frozenset(c) for c in itertools.combinations(rest, labels[vertex.e2])]
        for second in seconds:
            if first & second:
                continue
            yield first | second, first, second


def _edge_assignments(edges: Tuple[MOYEdge, ...], vertices: Tuple[MOYVertex, ...], n: int) -> Iterator[Dict[int, FrozenSet[int]]]:
    labels = {edge.edge_id: edge.label for edge in edges}
    assignment: Dict[int, FrozenSet[int]] = {}

    def search(position: int) -> Iterator[Dict[int, FrozenSet[int]]]:
        if position == len(vertices):
            yield dict(assignment)
            return
        vertex = vertices[position]
        for option in _vertex_options(vertex, labels, assignment, n):
            added = []
            for edge_id, subset in zip((vertex.e0, vertex.e1, vertex.e2), option):
                if edge_id not in assignment:
                    assignment[edge_id] = subset
                    added.append(edge_id)
            yield from search(position + 1)
            for edge_id in added:
                del assignment[edge_id]

    yield from search(0)


def enumerate_moy_states(graph: MOYGraph) -> Iterator[MOYState]:
    _closed(graph)
    n = graph.n
    edges, vertices = moy_edges(graph)
    annuli = [edge for edge in edges if edge.kind == "annulus"]
    for assignment in _edge_assignments(edges, vertices, n):
        subsets = tuple(sorted(assignment.items()))
        for free in itertools.product(*(itertools.product(range(1, n + 1), repeat=edge.label) for edge in annuli)):
            yield MOYState(subsets, tuple((edge.edge_id, labels) for edge, labels in zip(annuli, free)))


def double_rotation(state: MOYState, edges: Tuple[MOYEdge, ...], n: int) -> int:
    """2 rot(s), an integer."""
    winding = {edge.edge_id: edge.winding for edge in edges}
    total = sum(winding[edge_id] * sum(2 * i - n - 1 for i in subset) for edge_id, subset in state.subsets)
    total += sum(winding[edge_id] * sum(2 * i - n - 1 for i in labels) for edge_id, labels in state.annuli)
    return total


def _vertex_pi(state: MOYState, vertices: Tuple[MOYVertex, ...]) -> int:
    subsets = dict(state.subsets)
    return sum(pi_count(subsets[vertex.e1], subsets[vertex.e2]) for vertex in vertices)


def _annulus_factor(edge: MOYEdge, n: int, scale: int) -> LaurentPoly:
    """Sum over free labels of x^(winding*(2i-n-1)) for each of the |e| annuli, x = var^scale."""
    single = LaurentPoly.from_pairs((scale * edge.winding * (2 * i - n - 1), 1) for i in range(1, n + 1))
    return single**edge.label


def _band_sum(edges, vertices, n: int, *, rot_scale: int, pi_weight: Callable[[int], LaurentPoly]) -> Tuple[LaurentPoly, int]:
    """Sum over edge states of var^(rot_scale * 2rot(s)) * pi_weight(total pi)."""
    total = ZERO
    count = 0
    for assignment in _edge_assignments(edges, vertices, n):
        state = MOYState(tuple(sorted(assignment.items())))
        total = total + t_power(rot_scale * double_rotation(state, edges, n)) * pi_weight(_vertex_pi(state, vertices))
        count += 1
    return total, count


def moy_normalization(graph: MOYGraph) -> LaurentPoly:
    """N(graph) = prod_e [|e|]! * prod_v q^((n(n-1) - |e1||e2|)/2) [n - |e0|]!, in t."""
    n = graph.n
    edges, vertices = moy_edges(graph)
    label = {edge.edge_id: edge.label for edge in edges}
    result = ONE
    for edge in edges:
        if edge.kind == "edge":
            result = result * quantum_factorial(edge.label, n)
    doubled = 0
    for vertex in vertices:
        doubled += n * (n * (n - 1) - label[vertex.e1] * label[vertex.e2])
        result = result * quantum_factorial(n - label[vertex.e0], n)
    if doubled % 2:
        raise NonIntegralExponent("normalization has a half-integer power of t", exponent=f"{doubled}/2")
    return result * t_power(doubled // 2)


def moy_bracket(graph: MOYGraph) -> LaurentPoly:
    """[graph]_n = <W(graph)>_n."""
    _closed(graph)
    return evaluate(expand_W(graph))


def moy_state_sum(graph: MOYGraph) -> LaurentPoly:
    """N(graph) * sum_s q^(2rot(s)) prod_v (-q)^pi(s(e1), s(e2)), in t."""
    _closed(graph)
    n = graph.n
    edges, vertices = moy_edges(graph)
    total, count = _band_sum(edges, vertices, n, rot_scale=n, pi_weight=lambda pi: t_power(n * pi, (-1) ** pi))
    for edge in edges:
        if edge.kind == "annulus":
            total = total * _annulus_factor(edge, n, n)
    logger.debug("MOY state sum finished", n=n, states=count, vertices=len(vertices))
    return moy_normalization(graph) * total


def moy_original_bracket(graph: MOYGraph) -> LaurentPoly:
    """q^(-sum_v |e1||e2|/4) sum_s q^rot(s) prod_v q^(pi/2), in u = q^(1/4)."""
    _closed(graph)
    n = graph.n
    edges, vertices = moy_edges(graph)
    label = {edge.edge_id: edge.label for edge in edges}
    total, _ = _band_sum(edges, vertices, n, rot_scale=2, pi_weight=lambda pi: t_power(2 * pi))
    for edge in edges:
        if edge.kind == "annulus":
            total = total * _annulus_factor(edge, n, 2)
    return total.shift(-sum(label[vertex.e1] * label[vertex.e2] for vertex in vertices))


def annulus_value(n: int) -> LaurentPoly:
    """Original-bracket value of one label-1 annulus: [n] in q^(1/2), written in u."""
    return quantum_int(n, 2)


def eta(graph: MOYGraph) -> int:
    """(n+1) * sum over edges and annuli of |e| winding(e), mod 2."""
    n = graph.n
    edges, vertices = moy_edges(graph)
    if next(_edge_assignments(edges, vertices, n), None) is None:
        raise NoStates("MOY graph admits no n-state", n=n)
    return ((n + 1) * sum(edge.label * edge.winding for edge in edges)) % 2


def eta_over_states(graph: MOYGraph) -> List[int]:
    """2 rot(s) mod 2 for every n-state."""
    edges, _ = moy_edges(graph)
    parities = [double_rotation(state, edges, graph.n) % 2 for state in enumerate_moy_states(graph)]
    if not parities:
        raise NoStates("MOY graph admits no n-state", n=graph.n)
    return parities


def substitution_check(graph: MOYGraph) -> SubstitutionReport:
    """Compare {graph} q^(sum|e1||e2|/4) at q^(1/2) -> -q with [graph] (-1)^eta / N(graph)."""
    n = graph.n
    edges, vertices = moy_edges(graph)
    label = {edge.edge_id: edge.label for edge in edges}
    lifted = moy_original_bracket(graph).shift(sum(label[vertex.e1] * label[vertex.e2] for vertex in vertices))
    in_half_q = lifted.rescaled(2)
    if in_half_q is None:
        raise NonIntegralResult("original bracket is not a polynomial in q^(1/2)", value=lifted.render("u"))
    lhs = in_half_q.substitute(power=n, negate=True)
    parity = eta(graph)
    rhs = (moy_bracket(graph) * (-1) ** parity).divide_exact(moy_normalization(graph))
    report = SubstitutionReport(lhs, rhs, parity)
    if not report.ok:
        logger.error("MOY substitution identity failed", lhs=lhs.render(), rhs=rhs.render(), eta=parity)
    return report
