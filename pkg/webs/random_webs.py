"""Seeded random diagrams for the property suites.

Every generator takes a ``random.Random`` so a failing case can be rebuilt
from its seed alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Tuple

from webs.diagram import CUPS, SINGULAR_VERTEX, UP, Slice, SlicedDiagram, arity, rotate_basepoint
from evaluate.statesum import resolve_crossings
from webs.library import braid_slices, closure, shifted
import config


def random_link(
    rng: random.Random,
    n: int,
    *,
    max_crossings: int | None = None,
    max_width: int = 4,
) -> SlicedDiagram:
    """A closed link diagram built from random cups, crossings and caps.

    Strands run in both directions and crossings land on every orientation
    pattern. The diagram always has at least one component.
    """
    max_crossings = config.MAX_CROSSINGS if max_crossings is None else max_crossings
    target = rng.randint(0, max_crossings)
    slices: List[Slice] = [Slice(rng.choice(tuple(CUPS)), 0)]
    signature = list(CUPS[slices[0].gen])
    crossings = 0

    def cap_positions() -> List[int]:
        return [i for i in range(len(signature) - 1) if signature[i] != signature[i + 1]]

    while crossings < target:
        moves = ["cross"] if len(signature) >= 2 else []
        if len(signature) + 2 <= max_width:
            moves.append("cup")
        if len(signature) > 2 and cap_positions():
            moves.append("cap")
        move = rng.choice(moves)
        if move == "cross":
            at = rng.randrange(len(signature) - 1)
            slices.append(Slice(rng.choice(("xp", "xm")), at))
            signature[at], signature[at + 1] = signature[at + 1], signature[at]
            crossings += 1
        elif move == "cup":
            gen = rng.choice(tuple(CUPS))
            at = rng.randint(0, len(signature))
            slices.append(Slice(gen, at))
            signature[at:at] = list(CUPS[gen])
        else:
            at = rng.choice(cap_positions())
            slices.append(Slice("capQ" if signature[at] == UP else "capE", at))
            del signature[at : at + 2]

    while signature:
        at = rng.choice(cap_positions())
        slices.append(Slice("capQ" if signature[at] == UP else "capE", at))
        del signature[at : at + 2]
    return SlicedDiagram(n, tuple(slices))


def random_braid_word(rng: random.Random, strands: int, length: int) -> List[int]:
    if strands < 2:
        return []
    return [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)]


def random_braid_closure(
    rng: random.Random,
    n: int,
    *,
    max_strands: int = 3,
    max_length: int | None = None,
) -> SlicedDiagram:
    max_length = config.MAX_CROSSINGS if max_length is None else max_length
    strands = rng.randint(1, max_strands)
    word = random_braid_word(rng, strands, rng.randint(0, max_length))
    return closure(SlicedDiagram(n, tuple(braid_slices(word)), (UP,) * strands))


def random_planar_web(rng: random.Random, n: int, *, max_crossings: int = 3, rotations: int = 2) -> SlicedDiagram:
    """A crossingless web: one resolution leaf of a random link, base points rotated."""
    link = random_link(rng, n, max_crossings=max_crossings)
    leaves = [leaf for leaf, _ in resolve_crossings(link)]
    web = rng.choice(leaves)
    for _ in range(rotations):
        vertices = web.vertex_slices()
        if not vertices:
            break
        web = rotate_basepoint(web, rng.randrange(len(vertices)), rng.randrange(n))
    return web


def random_singular(rng: random.Random, n: int, *, max_strands: int = 3, max_length: int = 5) -> SlicedDiagram:
    """Closure of a random braid word with some letters replaced by x4 vertices."""
    strands = rng.randint(2, max_strands)
    length = rng.randint(1, max_length)
    slices = []
    for _ in range(length):
        at = rng.randrange(strands - 1)
        slices.append(Slice(rng.choice(("xp", "xm", SINGULAR_VERTEX)), at))
    if not any(piece.gen == SINGULAR_VERTEX for piece in slices):
        slices[rng.randrange(length)] = Slice(SINGULAR_VERTEX, rng.randrange(strands - 1))
    return closure(SlicedDiagram(n, tuple(slices), (UP,) * strands))


@dataclass(frozen=True)
class BraidContext:
    """Upward braids below and above a slot where a local tangle is inserted."""

    strands: int
    below: Tuple[int, ...]
    above: Tuple[int, ...]
    at: int

    def close(self, local: SlicedDiagram) -> SlicedDiagram:
        width = len(local.bottom)
        if local.bottom != (UP,) * width or local.top != (UP,) * width or self.at + width > self.strands:
            raise ValueError("local tangle does not fit the context")
        slices = list(braid_slices(self.below)) + shifted(local.slices, self.at) + list(braid_slices(self.above))
        return closure(SlicedDiagram(local.n, tuple(slices), (UP,) * self.strands))


def random_context(rng: random.Random, width: int = 2, *, extra_strands: int = 1, max_length: int = 3) -> BraidContext:
    """A random closing context for an upward tangle on ``width`` strands."""
    strands = width + rng.randint(0, extra_strands)
    return BraidContext(
        strands=strands,
        below=tuple(random_braid_word(rng, strands, rng.randint(0, max_length))),
        above=tuple(random_braid_word(rng, strands, rng.randint(0, max_length))),
        at=rng.randint(0, strands - width),
    )


def planar_isotopy(diagram: SlicedDiagram, rng: random.Random, moves: int = 10) -> SlicedDiagram:
    """Swap random adjacent slices that act on disjoint strands.

    The result is the same diagram up to planar isotopy.
    """
    slices = list(diagram.slices)
    n = diagram.n
    for _ in range(moves):
        if len(slices) < 2:
            break
        index = rng.randrange(len(slices) - 1)
        lower, upper = slices[index], slices[index + 1]
        lower_in, lower_out = arity(lower.gen, n)
        upper_in, upper_out = arity(upper.gen, n)
        if upper.at + upper_in <= lower.at:
            swapped = [upper, Slice(lower.gen, lower.at - upper_in + upper_out)]
        elif upper.at >= lower.at + lower_out:
            swapped = [Slice(upper.gen, upper.at - lower_out + lower_in), lower]
        else:
            continue
        slices[index : index + 2] = swapped
    return diagram.with_slices(slices)
