"""Sliced (Morse-form) diagrams of n-webs, links and tangles.

A diagram is read bottom to top as a list of slices. Each slice applies one
generator at a 0-based strand position and leaves every other strand
untouched. Strands carry an orientation: ``u`` (V, pointing up) or ``d``
(V*, pointing down), and a signature is the tuple of orientations across one
horizontal level.

Generator shapes:

    xp, xm        (a, b) -> (b, a)   crossing; xp has the bottom-left to
                                     top-right strand over, xm the other one
    capE          (d, u) -> ()       capQ  (u, d) -> ()
    cupE          ()     -> (u, d)   cupQ  ()     -> (d, u)
    vin           (u,)*n -> ()       sink, legs read left to right
    vout          ()     -> (u,)*n   source, legs read left to right
    x4            (u, u) -> (u, u)   4-valent singular vertex

The marked point of every vertex is its leftmost leg.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

import networkx as nx

from algebra.poly import RationalFunc
from errors import NoSuchVertex, NotALink, OutOfRange, ValidationError, WebSyntaxError
from utils import logger


UP = "u"
DOWN = "d"

Signature = Tuple[str, ...]

CROSSINGS = ("xp", "xm")
CAPS: Dict[str, Signature] = {"capE": (DOWN, UP), "capQ": (UP, DOWN)}
CUPS: Dict[str, Signature] = {"cupE": (UP, DOWN), "cupQ": (DOWN, UP)}
VERTICES = ("vin", "vout")
SINGULAR_VERTEX = "x4"
GENERATORS = CROSSINGS + tuple(CAPS) + tuple(CUPS) + VERTICES


def flip(orientation: str) -> str:
    return DOWN if orientation == UP else UP


def arity(gen: str, n: int) -> Tuple[int, int]:
    """Number of strands a generator consumes and produces."""
    if gen in CROSSINGS or gen == SINGULAR_VERTEX:
        return 2, 2
    if gen in CAPS:
        return 2, 0
    if gen in CUPS:
        return 0, 2
    if gen == "vin":
        return n, 0
    if gen == "vout":
        return 0, n
    raise ValueError(f"unknown generator {gen!r}")


def produced_signature(gen: str, n: int, consumed: Signature) -> Signature:
    """Signature a generator emits given what it consumes; ValueError on mismatch."""
    if gen in CROSSINGS:
        return (consumed[1], consumed[0])
    if gen in CAPS:
        if consumed != CAPS[gen]:
            raise ValueError(f"{gen} consumes {''.join(CAPS[gen])}, found {''.join(consumed)}")
        return ()
    if gen in CUPS:
        return CUPS[gen]
    if gen == "vin":
        if consumed != (UP,) * n:
            raise ValueError(f"vin consumes {n} up strands, found {''.join(consumed)}")
        return ()
    if gen == "vout":
        return (UP,) * n
    if gen == SINGULAR_VERTEX:
        if consumed != (UP, UP):
            raise ValueError(f"x4 consumes two up strands, found {''.join(consumed)}")
        return (UP, UP)
    raise ValueError(f"unknown generator {gen!r}")


def crossing_sign(gen: str, pair: Signature) -> int:
    """Right-hand sign of a crossing given the orientations it consumes."""
    same = pair[0] == pair[1]
    sign = 1 if same else -1
    return sign if gen == "xp" else -sign


@dataclass(frozen=True)
class Slice:
    gen: str
    at: int


class VertexCount(NamedTuple):
    sinks: int
    sources: int


@dataclass(frozen=True)
class SlicedDiagram:
    """An n-web or tangle in Morse form; validated on construction."""

    n: int
    slices: Tuple[Slice, ...]
    bottom: Signature = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "slices", tuple(self.slices))
        object.__setattr__(self, "bottom", tuple(self.bottom))
        # Touch the chain so invalid diagrams never escape the constructor.
        _ = self.signatures

    @cached_property
    def signatures(self) -> Tuple[Signature, ...]:
        """Signature at every level; ``signatures[i]`` sits just below slice i."""
        if self.n < 2:
            raise ValidationError("n must be at least 2", slice_index=None, reason="n < 2")
        if any(orientation not in (UP, DOWN) for orientation in self.bottom):
            raise ValidationError("bottom signature uses unknown orientations", slice_index=None, reason="bad bottom")
        levels: List[Signature] = [self.bottom]
        current = self.bottom
        for index, piece in enumerate(self.slices):
            if piece.gen not in GENERATORS and piece.gen != SINGULAR_VERTEX:
                raise ValidationError(
                    f"unknown generator {piece.gen!r}",
                    slice_index=index,
                    reason="unknown generator",
                )
            consumes, _ = arity(piece.gen, self.n)
            if piece.at < 0 or piece.at + consumes > len(current):
                raise ValidationError(
                    f"{piece.gen} at {piece.at} does not fit {len(current)} strands",
                    slice_index=index,
                    reason="arity",
                )
            window = current[piece.at : piece.at + consumes]
            try:
                produced = produced_signature(piece.gen, self.n, window)
            except ValueError as exc:
                raise ValidationError(str(exc), slice_index=index, reason="orientation mismatch") from exc
            current = current[: piece.at] + produced + current[piece.at + consumes :]
            levels.append(current)
        return tuple(levels)

    @property
    def top(self) -> Signature:
        return self.signatures[-1]

    @property
    def is_closed(self) -> bool:
        return not self.bottom and not self.top

    @property
    def is_singular(self) -> bool:
        return any(piece.gen == SINGULAR_VERTEX for piece in self.slices)

    @property
    def is_planar(self) -> bool:
        return not any(piece.gen in CROSSINGS or piece.gen == SINGULAR_VERTEX for piece in self.slices)

    @property
    def width(self) -> int:
        """Largest number of strands on any level."""
        return max(len(signature) for signature in self.signatures)

    def vertex_slices(self) -> List[int]:
        """Slice indices of vin/vout in bottom-to-top order (vertex numbering)."""
        return [index for index, piece in enumerate(self.slices) if piece.gen in VERTICES]

    def with_slices(self, slices: Iterable[Slice]) -> "SlicedDiagram":
        return SlicedDiagram(self.n, tuple(slices), self.bottom)

    def then(self, other: "SlicedDiagram") -> "SlicedDiagram":
        """Stack ``other`` on top of this diagram."""
        if other.n != self.n or other.bottom != self.top:
            raise ValidationError("stacked diagrams do not share a boundary", slice_index=len(self.slices), reason="boundary")
        return SlicedDiagram(self.n, self.slices + other.slices, self.bottom)

    def beside(self, other: "SlicedDiagram") -> "SlicedDiagram":
        """Place ``other`` to the right: this diagram first, then ``other`` shifted."""
        offset = len(self.top)
        shifted = tuple(Slice(piece.gen, piece.at + offset) for piece in other.slices)
        return SlicedDiagram(self.n, self.slices + shifted, self.bottom + other.bottom)


Tangle = SlicedDiagram
SingularLinkDiagram = SlicedDiagram


@dataclass(frozen=True)
class DiagramCombination:
    """Formal RationalFunc-linear combination of diagrams."""

    terms: Tuple[Tuple[SlicedDiagram, RationalFunc], ...] = field(default_factory=tuple)

    @classmethod
    def collect(cls, pairs: Iterable[Tuple[SlicedDiagram, RationalFunc]]) -> "DiagramCombination":
        """Merge repeated diagrams and drop zero coefficients, keeping first-seen order."""
        merged: Dict[SlicedDiagram, RationalFunc] = {}
        for diagram, coeff in pairs:
            if diagram in merged:
                merged[diagram] = merged[diagram] + coeff
            else:
                merged[diagram] = RationalFunc.of(coeff)
        return cls(tuple((diagram, coeff) for diagram, coeff in merged.items() if not coeff.is_zero()))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


# -- file format ------------------------------------------------------------


def _decode_bottom(raw: object) -> Signature:
    if raw is None:
        return ()
    if isinstance(raw, str):
        raw = list(raw)
    if not isinstance(raw, list) or any(item not in (UP, DOWN) for item in raw):
        raise WebSyntaxError("bottom must be a list of 'u'/'d'")
    return tuple(raw)


def parse_web(
    text: str,
    *,
    singular: bool = False,
    require_closed: bool = False,
    n_override: int | None = None,
) -> SlicedDiagram:
    """Parse the JSON diagram format and validate the result.

    ``n_override`` replaces the stored n before any slice is validated.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WebSyntaxError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    if not isinstance(payload, dict):
        raise WebSyntaxError("diagram must be a JSON object")
    n = payload.get("n")
    raw_slices = payload.get("slices")
    if not isinstance(n, int) or isinstance(n, bool):
        raise WebSyntaxError("field 'n' must be an integer")
    if not isinstance(raw_slices, list):
        raise WebSyntaxError("field 'slices' must be an array")
    if n_override is not None:
        n = n_override

    slices: List[Slice] = []
    for index, raw in enumerate(raw_slices):
        if not isinstance(raw, dict):
            raise WebSyntaxError("slice must be an object", slice_index=index)
        gen = raw.get("gen")
        at = raw.get("at")
        if not isinstance(gen, str):
            raise WebSyntaxError("slice field 'gen' must be a string", slice_index=index)
        if not isinstance(at, int) or isinstance(at, bool):
            raise WebSyntaxError("slice field 'at' must be an integer", slice_index=index)
        if gen == SINGULAR_VERTEX and not singular:
            raise ValidationError("x4 vertices are only allowed in singular diagrams", slice_index=index, reason="singular vertex")
        slices.append(Slice(gen, at))

    diagram = SlicedDiagram(n, tuple(slices), _decode_bottom(payload.get("bottom")))
    if require_closed and diagram.top:
        raise ValidationError(
            "diagram does not close up",
            slice_index=len(diagram.slices),
            reason="non-closed boundary",
        )
    if require_closed and diagram.bottom:
        raise ValidationError("diagram has open bottom boundary", slice_index=0, reason="non-closed boundary")
    logger.debug("Diagram parsed", n=n, slices=len(slices), width=diagram.width)
    return diagram


def render_web(diagram: SlicedDiagram) -> str:
    """Deterministic JSON text; ``parse_web(render_web(d)) == d``."""
    payload: Dict[str, object] = {"n": diagram.n}
    if diagram.bottom:
        payload["bottom"] = list(diagram.bottom)
    payload["slices"] = [{"gen": piece.gen, "at": piece.at} for piece in diagram.slices]
    return json.dumps(payload)


# -- derived quantities ------------------------------------------------------


def writhe(diagram: SlicedDiagram) -> int:
    """Sum of crossing signs."""
    total = 0
    for index, piece in enumerate(diagram.slices):
        if piece.gen in CROSSINGS:
            total += crossing_sign(piece.gen, diagram.signatures[index][piece.at : piece.at + 2])
    return total


def vertex_count(diagram: SlicedDiagram) -> VertexCount:
    sinks = sum(1 for piece in diagram.slices if piece.gen == "vin")
    sources = sum(1 for piece in diagram.slices if piece.gen == "vout")
    return VertexCount(sinks=sinks, sources=sources)


def strand_graph(diagram: SlicedDiagram) -> nx.Graph:
    """Graph on (level, position) nodes joined along strands.

    Identity strands, crossings and cups/caps join nodes; vertex legs are left
    as loose ends, so every connected component is either a closed curve or
    a path between vertex legs (or the diagram boundary).
    """
    graph = nx.Graph()
    for level, signature in enumerate(diagram.signatures):
        graph.add_nodes_from((level, position) for position in range(len(signature)))
    for level, piece in enumerate(diagram.slices):
        consumes, produces = arity(piece.gen, diagram.n)
        width = len(diagram.signatures[level])
        for position in range(width):
            if position < piece.at:
                graph.add_edge((level, position), (level + 1, position))
            elif position >= piece.at + consumes:
                graph.add_edge((level, position), (level + 1, position - consumes + produces))
        at = piece.at
        if piece.gen in CROSSINGS:
            graph.add_edge((level, at), (level + 1, at + 1))
            graph.add_edge((level, at + 1), (level + 1, at))
        elif piece.gen in CAPS:
            graph.add_edge((level, at), (level, at + 1))
        elif piece.gen in CUPS:
            graph.add_edge((level + 1, at), (level + 1, at + 1))
    return graph


def component_count(diagram: SlicedDiagram) -> int:
    """Number of link components; webs are rejected."""
    if diagram.vertex_slices() or diagram.is_singular:
        raise NotALink("component count needs a link diagram without vertices")
    return nx.number_connected_components(strand_graph(diagram))


def rotate_basepoint(diagram: SlicedDiagram, vertex_index: int, k: int) -> SlicedDiagram:
    """Move the marked point of a vertex k legs to the right.

    The first k legs of a sink are routed around its right side with nested
    cups and caps so they arrive as its last k legs. For a source the last k
    legs are bent back over the top so they leave as its first k legs.
    """
    vertices = diagram.vertex_slices()
    if not 0 <= vertex_index < len(vertices):
        raise NoSuchVertex("vertex index out of range", vertex_index=vertex_index, vertices=len(vertices))
    n = diagram.n
    if not 0 <= k < n:
        raise OutOfRange("rotation needs 0 <= k < n", k=k, n=n)
    if k == 0:
        return diagram

    slice_index = vertices[vertex_index]
    piece = diagram.slices[slice_index]
    a = piece.at
    if piece.gen == "vin":
        replacement = (
            [Slice("cupE", a + n + j) for j in range(k)]
            + [Slice("vin", a + k)]
            + [Slice("capQ", a + j) for j in reversed(range(k))]
        )
    else:
        replacement = (
            [Slice("cupE", a + j) for j in range(k)]
            + [Slice("vout", a + k)]
            + [Slice("capQ", a + k + j) for j in reversed(range(n - k, n))]
        )
    slices = diagram.slices[:slice_index] + tuple(replacement) + diagram.slices[slice_index + 1 :]
    return diagram.with_slices(slices)
