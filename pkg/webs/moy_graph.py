"""Sliced MOY graphs: labelled trivalent planar graphs and their web expansion.

Strands carry a label in 1..n and an orientation. The generators are

    mcup  [k]      ()          -> (k, k)   orient "ud" (default) or "du"
    mcap  [k]      (k, k)      -> ()       orientation read from the strands
    split [k, l]   (k+l up)    -> (k up, l up)
    merge [k, l]   (k up, l up) -> (k+l up)

In the web expansion a strand labelled k becomes k parallel strands and both
trivalent vertices become a sink/source ladder on k+l strands with n-k-l
return strands.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Tuple

import networkx as nx

from webs.diagram import DOWN, UP, Slice, SlicedDiagram
from webs.library import ladder_slices
from errors import FlowViolation, ValidationError, WebSyntaxError
from utils import logger


MOY_GENERATORS = ("mcup", "mcap", "split", "merge")
MOY_VERTICES = ("split", "merge")
MOY_ARITY = {"mcup": (0, 2), "mcap": (2, 0), "split": (1, 2), "merge": (2, 1)}

Strand = Tuple[int, str]
MOYSignature = Tuple[Strand, ...]


@dataclass(frozen=True)
class MOYSlice:
    gen: str
    at: int
    labels: Tuple[int, ...]
    orient: str = UP + DOWN


@dataclass(frozen=True)
class MOYEdge:
    edge_id: int
    kind: str
    label: int
    winding: int


@dataclass(frozen=True)
class MOYVertex:
    slice_index: int
    gen: str
    e0: int
    e1: int
    e2: int


@dataclass(frozen=True)
class MOYGraph:
    """A closed crossingless MOY_n-graph in sliced form."""

    n: int
    slices: Tuple[MOYSlice, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "slices", tuple(self.slices))
        _ = self.signatures

    @cached_property
    def signatures(self) -> Tuple[MOYSignature, ...]:
        if self.n < 2:
            raise ValidationError("n must be at least 2", slice_index=None, reason="n < 2")
        current: MOYSignature = ()
        levels: List[MOYSignature] = [current]
        for index, piece in enumerate(self.slices):
            produced, consumed = self._apply(index, piece, current)
            current = current[: piece.at] + produced + current[piece.at + consumed :]
            levels.append(current)
        return tuple(levels)

    def _check_label(self, index: int, label: int) -> None:
        if not 1 <= label <= self.n:
            raise FlowViolation(f"label {label} outside 1..{self.n}", slice_index=index)

    def _apply(self, index: int, piece: MOYSlice, current: MOYSignature) -> Tuple[MOYSignature, int]:
        expected = 1 if piece.gen in ("mcup", "mcap") else 2
        if piece.gen not in MOY_GENERATORS:
            raise ValidationError(f"unknown generator {piece.gen!r}", slice_index=index, reason="unknown generator")
        if len(piece.labels) != expected:
            raise ValidationError(f"{piece.gen} takes {expected} label(s)", slice_index=index, reason="labels")
        for label in piece.labels:
            self._check_label(index, label)
        consumed, _ = MOY_ARITY[piece.gen]
        if piece.at < 0 or piece.at + consumed > len(current):
            raise ValidationError(
                f"{piece.gen} at {piece.at} does not fit {len(current)} strands",
                slice_index=index,
                reason="arity",
            )
        window = current[piece.at : piece.at + consumed]

        if piece.gen == "mcup":
            if piece.orient not in (UP + DOWN, DOWN + UP):
                raise ValidationError("mcup orient must be 'ud' or 'du'", slice_index=index, reason="orient")
            k = piece.labels[0]
            return ((k, piece.orient[0]), (k, piece.orient[1])), 0
        if piece.gen == "mcap":
            (left_label, left_dir), (right_label, right_dir) = window
            if left_label != right_label or left_label != piece.labels[0]:
                raise FlowViolation("mcap closes strands with different labels", slice_index=index)
            if left_dir == right_dir:
                raise ValidationError("mcap needs opposite orientations", slice_index=index, reason="orientation mismatch")
            return (), 2

        if any(direction != UP for _, direction in window):
            raise ValidationError(f"{piece.gen} needs upward strands", slice_index=index, reason="orientation mismatch")
        k, l = piece.labels
        if k + l > self.n:
            raise FlowViolation(f"vertex label {k + l} exceeds n={self.n}", slice_index=index)
        if piece.gen == "split":
            if window[0][0] != k + l:
                raise FlowViolation(f"split of a {window[0][0]}-strand into {k}+{l}", slice_index=index)
            return ((k, UP), (l, UP)), 1
        if (window[0][0], window[1][0]) != (k, l):
            raise FlowViolation(
                f"merge labels {k},{l} do not match strands {window[0][0]},{window[1][0]}",
                slice_index=index,
            )
        return ((k + l, UP),), 2

    @property
    def is_closed(self) -> bool:
        return not self.signatures[-1]

    def offset(self, level: int, position: int) -> int:
        """Number of web strands left of ``position`` on ``level``."""
        return sum(label for label, _ in self.signatures[level][:position])


# -- file format ------------------------------------------------------------------


def parse_moy(text: str, *, require_closed: bool = True, n_override: int | None = None) -> MOYGraph:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WebSyntaxError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    if not isinstance(payload, dict):
        raise WebSyntaxError("MOY graph must be a JSON object")
    n = payload.get("n")
    raw_slices = payload.get("slices")
    if not isinstance(n, int) or isinstance(n, bool):
        raise WebSyntaxError("field 'n' must be an integer")
    if not isinstance(raw_slices, list):
        raise WebSyntaxError("field 'slices' must be an array")
    if n_override is not None:
        n = n_override

    slices: List[MOYSlice] = []
    for index, raw in enumerate(raw_slices):
        if not isinstance(raw, dict):
            raise WebSyntaxError("slice must be an object", slice_index=index)
        gen, at, labels = raw.get("gen"), raw.get("at"), raw.get("labels")
        if not isinstance(gen, str):
            raise WebSyntaxError("slice field 'gen' must be a string", slice_index=index)
        if not isinstance(at, int) or isinstance(at, bool):
            raise WebSyntaxError("slice field 'at' must be an integer", slice_index=index)
        if not isinstance(labels, list) or not all(isinstance(label, int) and not isinstance(label, bool) for label in labels):
            raise WebSyntaxError("slice field 'labels' must be an array of integers", slice_index=index)
        orient = raw.get("orient", UP + DOWN)
        if not isinstance(orient, str):
            raise WebSyntaxError("slice field 'orient' must be a string", slice_index=index)
        slices.append(MOYSlice(gen, at, tuple(labels), orient))

    graph = MOYGraph(n, tuple(slices))
    if require_closed and not graph.is_closed:
        raise ValidationError("MOY graph does not close up", slice_index=len(slices), reason="non-closed boundary")
    logger.debug("MOY graph parsed", n=n, slices=len(slices))
    return graph


def render_moy(graph: MOYGraph) -> str:
    rendered = []
    for piece in graph.slices:
        entry: Dict[str, object] = {"gen": piece.gen, "at": piece.at, "labels": list(piece.labels)}
        if piece.gen == "mcup" and piece.orient != UP + DOWN:
            entry["orient"] = piece.orient
        rendered.append(entry)
    return json.dumps({"n": graph.n, "slices": rendered})


# -- web expansion -----------------------------------------------------------------


def expand_W(graph: MOYGraph) -> SlicedDiagram:
    """The n-web W(graph): k parallel strands per k-edge, ladders at vertices."""
    n = graph.n
    slices: List[Slice] = []
    for level, piece in enumerate(graph.slices):
        origin = graph.offset(level, piece.at)
        if piece.gen == "mcup":
            k = piece.labels[0]
            gen = "cupE" if piece.orient == UP + DOWN else "cupQ"
            slices.extend(Slice(gen, origin + j) for j in range(k))
        elif piece.gen == "mcap":
            k = piece.labels[0]
            left_dir = graph.signatures[level][piece.at][1]
            gen = "capQ" if left_dir == UP else "capE"
            slices.extend(Slice(gen, origin + j) for j in reversed(range(k)))
        else:
            slices.extend(ladder_slices(n, origin, sum(piece.labels)))
    return SlicedDiagram(n, tuple(slices))


# -- edges ----------------------------------------------------------------------------


def _strand_graph(graph: MOYGraph) -> nx.Graph:
    """Graph on (level, position) nodes; vertex legs stay loose."""
    strands = nx.Graph()
    for level, signature in enumerate(graph.signatures):
        strands.add_nodes_from((level, position) for position in range(len(signature)))
    for level, piece in enumerate(graph.slices):
        before = len(graph.signatures[level])
        consumed, produced = MOY_ARITY[piece.gen]
        for position in range(before):
            if position < piece.at:
                strands.add_edge((level, position), (level + 1, position))
            elif position >= piece.at + consumed:
                strands.add_edge((level, position), (level + 1, position - consumed + produced))
        if piece.gen == "mcup":
            strands.add_edge((level + 1, piece.at), (level + 1, piece.at + 1))
        elif piece.gen == "mcap":
            strands.add_edge((level, piece.at), (level, piece.at + 1))
    return strands


def moy_edges(graph: MOYGraph) -> Tuple[Tuple[MOYEdge, ...], Tuple[MOYVertex, ...]]:
    """Edges (vertex to vertex) and annuli with their windings, plus vertex incidences.

    Windings count weighted bends only: an mcap over (up, down) adds +1 and an
    mcup emitting (down, up) adds -1.
    """
    strands = _strand_graph(graph)
    components = sorted((sorted(component) for component in nx.connected_components(strands)), key=lambda nodes: nodes[0])
    owner = {node: edge_id for edge_id, nodes in enumerate(components) for node in nodes}
    winding = [0] * len(components)
    vertices: List[MOYVertex] = []
    for level, piece in enumerate(graph.slices):
        at = piece.at
        if piece.gen == "mcap" and graph.signatures[level][at][1] == UP:
            winding[owner[(level, at)]] += 1
        elif piece.gen == "mcup" and piece.orient == DOWN + UP:
            winding[owner[(level + 1, at)]] -= 1
        elif piece.gen == "split":
            vertices.append(MOYVertex(level, "split", owner[(level, at)], owner[(level + 1, at)], owner[(level + 1, at + 1)]))
        elif piece.gen == "merge":
            vertices.append(MOYVertex(level, "merge", owner[(level + 1, at)], owner[(level, at)], owner[(level, at + 1)]))

    attached = {edge_id for vertex in vertices for edge_id in (vertex.e0, vertex.e1, vertex.e2)}
    edges = []
    for edge_id, nodes in enumerate(components):
        level, position = nodes[0]
        label = graph.signatures[level][position][0]
        kind = "edge" if edge_id in attached else "annulus"
        edges.append(MOYEdge(edge_id, kind, label, winding[edge_id]))
    return tuple(edges), tuple(vertices)
