"""Planar-web state sums and skein resolution of crossings.

A state labels every band and annulus of a planar web by 1..n so that the
n bands at each vertex carry distinct labels. Its weight is

    q^rot(S) * prod over vertices of (-q)^l(P(S, v))

where P(S, v) lists the labels of the vertex legs left to right and
rot(S) = sum over edges of ind(e) * (2 S(e) - n - 1).

The winding ind(e) is counted from the bends along the edge: with every
vertex leg pointing up, each band has as many caps as cups, so only the
bends that carry a weight need to be counted (capQ +1, cupQ -1, capE and
cupE 0). Summed along a band or annulus this equals its total turning.

Diagrams with crossings are first rewritten as RationalFunc combinations of
planar webs by resolving the lowest crossing repeatedly:

    <L+> = t^(n-1) <L0> - t^(-n^2(n-1)/2 - 1) / [n-2]! <ladder>

and the negative rule is derived from the skein relation
t <L+> - t^-1 <L-> = (q - q^-1) <L0>.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

import networkx as nx

from algebra.combinat import Permutation, quantum_factorial
from algebra.poly import ONE, ZERO, LaurentPoly, RationalFunc, t_power
from webs.diagram import CAPS, CROSSINGS, CUPS, VERTICES, DiagramCombination, SlicedDiagram, strand_graph
from webs.library import expand_mixed_crossings, ladder_slices
from errors import HasCrossings, InputError, NotDivisible, OpenDiagram
from utils import logger


TURN_WEIGHTS = {"capQ": 1, "cupQ": -1, "capE": 0, "cupE": 0}


@dataclass(frozen=True)
class Edge:
    """A band (vertex to vertex) or an annulus (closed loop) of a planar web."""

    edge_id: int
    kind: str
    ind: int
    turns: Tuple[Tuple[int, str], ...]


@dataclass(frozen=True)
class VertexLegs:
    slice_index: int
    gen: str
    legs: Tuple[int, ...]


@dataclass(frozen=True)
class EdgeGeometry:
    n: int
    edges: Tuple[Edge, ...]
    vertices: Tuple[VertexLegs, ...]

    @property
    def bands(self) -> Tuple[Edge, ...]:
        return tuple(edge for edge in self.edges if edge.kind == "band")

    @property
    def annuli(self) -> Tuple[Edge, ...]:
        return tuple(edge for edge in self.edges if edge.kind == "annulus")


@dataclass(frozen=True)
class WebState:
    """Labels indexed by edge id."""

    labels: Tuple[int, ...]

    def label(self, edge_id: int) -> int:
        return self.labels[edge_id]


def trace_edges(diagram: SlicedDiagram) -> EdgeGeometry:
    """Split a closed planar web into bands and annuli with their windings."""
    if not diagram.is_planar:
        raise HasCrossings("state sums need a crossingless web")
    if not diagram.is_closed:
        raise OpenDiagram("state sums need a closed web")

    graph = strand_graph(diagram)
    components = sorted((sorted(component) for component in nx.connected_components(graph)), key=lambda nodes: nodes[0])
    owner: Dict[Tuple[int, int], int] = {}
    for edge_id, nodes in enumerate(components):
        for node in nodes:
            owner[node] = edge_id

    turns: Dict[int, List[Tuple[int, str]]] = {edge_id: [] for edge_id in range(len(components))}
    vertices: List[VertexLegs] = []
    for level, piece in enumerate(diagram.slices):
        if piece.gen in CAPS:
            turns[owner[(level, piece.at)]].append((level, piece.gen))
        elif piece.gen in CUPS:
            turns[owner[(level + 1, piece.at)]].append((level, piece.gen))
        elif piece.gen in VERTICES:
            row = level if piece.gen == "vin" else level + 1
            legs = tuple(owner[(row, piece.at + offset)] for offset in range(diagram.n))
            vertices.append(VertexLegs(level, piece.gen, legs))

    attached = {edge_id for vertex in vertices for edge_id in vertex.legs}
    edges = tuple(
        Edge(
            edge_id=edge_id,
            kind="band" if edge_id in attached else "annulus",
            ind=sum(TURN_WEIGHTS[gen] for _, gen in turns[edge_id]),
            turns=tuple(turns[edge_id]),
        )
        for edge_id in range(len(components))
    )
    return EdgeGeometry(diagram.n, edges, tuple(vertices))


def _band_assignments(geometry: EdgeGeometry) -> Iterator[Dict[int, int]]:
    """Every labelling of the bands that is injective at each vertex."""
    n = geometry.n
    vertices = geometry.vertices
    assignment: Dict[int, int] = {}

    def search(position: int) -> Iterator[Dict[int, int]]:
        if position == len(vertices):
            yield dict(assignment)
            return
        legs = vertices[position].legs
        fixed = [assignment[edge_id] for edge_id in legs if edge_id in assignment]
        if len(set(fixed)) != len(fixed):
            return
        free = [edge_id for edge_id in legs if edge_id not in assignment]
        available = [label for label in range(1, n + 1) if label not in fixed]
        for labels in itertools.permutations(available, len(free)):
            assignment.update(zip(free, labels))
            yield from search(position + 1)
            for edge_id in free:
                del assignment[edge_id]

    yield from search(0)


def enumerate_states(diagram: SlicedDiagram | EdgeGeometry) -> Iterator[WebState]:
    """All admissible states; annuli are labelled freely."""
    geometry = diagram if isinstance(diagram, EdgeGeometry) else trace_edges(diagram)
    annuli = [edge.edge_id for edge in geometry.annuli]
    for bands in _band_assignments(geometry):
        for loop_labels in itertools.product(range(1, geometry.n + 1), repeat=len(annuli)):
            labels = dict(bands)
            labels.update(zip(annuli, loop_labels))
            yield WebState(tuple(labels[edge_id] for edge_id in range(len(geometry.edges))))


def rotation_index(state: WebState, geometry: EdgeGeometry) -> int:
    """rot_n(S) = sum over edges of ind(e) * (2 S(e) - n - 1)."""
    n = geometry.n
    return sum(edge.ind * (2 * state.label(edge.edge_id) - n - 1) for edge in geometry.edges)


def vertex_lengths(state: WebState | Dict[int, int], geometry: EdgeGeometry) -> List[int]:
    """l(P(S, v)) for every vertex, in vertex order."""
    lookup = state.label if isinstance(state, WebState) else state.__getitem__
    return [Permutation(tuple(lookup(edge_id) for edge_id in vertex.legs)).length() for vertex in geometry.vertices]


def state_weight(state: WebState, geometry: EdgeGeometry) -> LaurentPoly:
    """q^rot(S) prod_v (-q)^l(P(S,v)) in t."""
    total_length = sum(vertex_lengths(state, geometry))
    return t_power(geometry.n * (rotation_index(state, geometry) + total_length), (-1) ** total_length)


def _annulus_factor(edge: Edge, n: int) -> LaurentPoly:
    return LaurentPoly.from_pairs((n * edge.ind * (2 * label - n - 1), 1) for label in range(1, n + 1))


@dataclass(frozen=True)
class BandTally:
    """One pass over the band states: their weighted sum and vertex-length parities."""

    total: LaurentPoly
    states: int
    odd_states: int


def tally_bands(geometry: EdgeGeometry) -> BandTally:
    n = geometry.n
    bands = geometry.bands
    terms: Dict[int, int] = {}
    states = 0
    odd = 0
    for assignment in _band_assignments(geometry):
        rot = sum(edge.ind * (2 * assignment[edge.edge_id] - n - 1) for edge in bands)
        total_length = sum(vertex_lengths(assignment, geometry))
        exponent = n * (rot + total_length)
        terms[exponent] = terms.get(exponent, 0) + (-1 if total_length % 2 else 1)
        states += 1
        odd += total_length % 2
    return BandTally(LaurentPoly(terms), states, odd)


def _with_annuli(total: LaurentPoly, geometry: EdgeGeometry) -> LaurentPoly:
    for edge in geometry.annuli:
        total = total * _annulus_factor(edge, geometry.n)
    return total


def state_sum(diagram: SlicedDiagram) -> LaurentPoly:
    """The bracket of a closed planar web as a sum over its states."""
    geometry = trace_edges(diagram)
    tally = tally_bands(geometry)
    logger.debug(
        "State sum finished",
        n=geometry.n,
        band_states=tally.states,
        annuli=len(geometry.annuli),
        vertices=len(geometry.vertices),
    )
    return _with_annuli(tally.total, geometry)


# -- crossing resolution ---------------------------------------------------------


def positive_rule(n: int) -> Tuple[RationalFunc, RationalFunc]:
    """Coefficients of (L0, ladder) in the expansion of a positive crossing."""
    smooth = RationalFunc.of(t_power(n - 1))
    ladder = RationalFunc(t_power(-(n * n * (n - 1)) // 2 - 1), quantum_factorial(n - 2, n))
    return smooth, -ladder


def negative_rule(n: int) -> Tuple[RationalFunc, RationalFunc]:
    """Coefficients of (L0, ladder) for a negative crossing.

    From t <L+> - t^-1 <L-> = (q - q^-1) <L0>:
    <L-> = t^2 <L+> - t (q - q^-1) <L0>.
    """
    smooth, ladder = positive_rule(n)
    skein = t_power(n + 1) - t_power(1 - n)
    return smooth * t_power(2) - skein, ladder * t_power(2)


def resolve_crossings(diagram: SlicedDiagram, order: Sequence[int] | None = None) -> DiagramCombination:
    """Rewrite a diagram as a combination of planar webs.

    Crossings are numbered bottom to top after mixed crossings are expanded.
    ``order`` lists those numbers in the order they are resolved; the default
    takes the lowest crossing first.
    """
    n = diagram.n
    rules = {"xp": positive_rule(n), "xm": negative_rule(n)}
    expanded = expand_mixed_crossings(diagram)
    numbering = itertools.count()
    tags = tuple(next(numbering) if piece.gen in CROSSINGS else None for piece in expanded.slices)
    count = sum(tag is not None for tag in tags)
    order = tuple(range(count)) if order is None else tuple(order)
    if sorted(order) != list(range(count)):
        raise InputError("resolution order must list every crossing once", crossings=count, order=order)
    priority = {crossing: step for step, crossing in enumerate(order)}
    leaves: List[Tuple[SlicedDiagram, RationalFunc]] = []

    def resolve(current: SlicedDiagram, current_tags: Tuple[int | None, ...], coeff: RationalFunc) -> None:
        pending = [(priority[tag], i) for i, tag in enumerate(current_tags) if tag is not None]
        if not pending:
            leaves.append((current, coeff))
            return
        _, index = min(pending)
        piece = current.slices[index]
        smooth, ladder = rules[piece.gen]
        before, after = current.slices[:index], current.slices[index + 1 :]
        tags_before, tags_after = current_tags[:index], current_tags[index + 1 :]
        resolve(current.with_slices(before + after), tags_before + tags_after, coeff * smooth)
        rungs = tuple(ladder_slices(n, piece.at))
        resolve(
            current.with_slices(before + rungs + after),
            tags_before + (None,) * len(rungs) + tags_after,
            coeff * ladder,
        )

    resolve(expanded, tags, RationalFunc.of(ONE))
    combination = DiagramCombination.collect(leaves)
    logger.debug("Crossings resolved", n=n, crossings=count, leaves=len(combination))
    return combination


def crossing_count(diagram: SlicedDiagram) -> int:
    """Crossings left after mixed crossings are expanded; the length of a resolution order."""
    return sum(1 for piece in expand_mixed_crossings(diagram).slices if piece.gen in CROSSINGS)


def combination_value(combination: DiagramCombination) -> LaurentPoly:
    """Sum of coefficient times state sum over the planar leaves, reduced exactly."""
    total = RationalFunc.of(ZERO)
    for leaf, coeff in combination:
        total = total + coeff * state_sum(leaf)
    try:
        return total.to_poly()
    except NotDivisible:
        logger.error("Resolved state sum is not a Laurent polynomial", value=repr(total))
        raise


def state_sum_resolved(diagram: SlicedDiagram) -> LaurentPoly:
    """State sum of any closed diagram, resolving crossings first if present."""
    if diagram.is_planar:
        return state_sum(diagram)
    return combination_value(resolve_crossings(diagram))


# -- positivity --------------------------------------------------------------------


@dataclass(frozen=True)
class LeafReport:
    index: int
    states: int
    odd_states: int
    bracket: LaurentPoly
    in_q_ring: bool
    nonnegative: bool

    @property
    def ok(self) -> bool:
        return self.odd_states == 0 and self.in_q_ring and self.nonnegative


@dataclass(frozen=True)
class PositivityReport:
    n: int
    leaves: Tuple[LeafReport, ...]

    @property
    def ok(self) -> bool:
        return all(leaf.ok for leaf in self.leaves)

    def summary(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "leaves": len(self.leaves),
            "odd_state_leaves": [leaf.index for leaf in self.leaves if leaf.odd_states],
            "negative_leaves": [leaf.index for leaf in self.leaves if not leaf.nonnegative],
            "ok": self.ok,
        }


def positivity_report(diagram: SlicedDiagram, n: int | None = None) -> PositivityReport:
    """Check every resolution leaf for even vertex lengths and non-negative brackets."""
    if n is not None and n != diagram.n:
        diagram = SlicedDiagram(n, diagram.slices, diagram.bottom)
    leaves: List[LeafReport] = []
    for index, (leaf, _) in enumerate(resolve_crossings(diagram)):
        geometry = trace_edges(leaf)
        tally = tally_bands(geometry)
        bracket = _with_annuli(tally.total, geometry)
        leaves.append(
            LeafReport(
                index=index,
                states=tally.states,
                odd_states=tally.odd_states,
                bracket=bracket,
                in_q_ring=bracket.rescaled(diagram.n) is not None,
                nonnegative=bracket.is_nonnegative(),
            )
        )
    report = PositivityReport(diagram.n, tuple(leaves))
    logger.debug("Positivity checked", **report.summary())
    return report
