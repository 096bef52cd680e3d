"""Named diagrams and local tangles used by the evaluators, suites and CLI."""

from __future__ import annotations

from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from algebra.hecke import lambda_skein
from algebra.poly import LaurentPoly
from webs.diagram import CROSSINGS, DOWN, UP, Signature, Slice, SlicedDiagram
from errors import InputError, OutOfRange


def shifted(slices: Iterable[Slice], offset: int) -> List[Slice]:
    return [Slice(piece.gen, piece.at + offset) for piece in slices]


# -- local templates ----------------------------------------------------------

# Crossings between strands that are not both upward are the upward crossing
# bent by a duality pair. The strand that passes over keeps passing over.
_MIXED_CROSSINGS: Dict[Tuple[str, Signature], List[Slice]] = {
    ("xp", (DOWN, UP)): [Slice("cupE", 2), Slice("xm", 1), Slice("capE", 0)],
    ("xm", (DOWN, UP)): [Slice("cupE", 2), Slice("xp", 1), Slice("capE", 0)],
    ("xp", (UP, DOWN)): [Slice("cupQ", 0), Slice("xm", 1), Slice("capQ", 2)],
    ("xm", (UP, DOWN)): [Slice("cupQ", 0), Slice("xp", 1), Slice("capQ", 2)],
    ("xp", (DOWN, DOWN)): [Slice("cupE", 2), Slice("xm", 1), Slice("capE", 0)],
    ("xm", (DOWN, DOWN)): [Slice("cupE", 2), Slice("xp", 1), Slice("capE", 0)],
}


def mixed_crossing_slices(gen: str, pair: Signature) -> List[Slice]:
    """Slices (at offset 0) realising a crossing on a non-upward pair."""
    if gen not in CROSSINGS:
        raise InputError("not a crossing generator", gen=gen)
    if pair == (UP, UP):
        return [Slice(gen, 0)]
    return list(_MIXED_CROSSINGS[(gen, tuple(pair))])


def expand_mixed_crossings(diagram: SlicedDiagram) -> SlicedDiagram:
    """Rewrite every crossing until all crossings act on two upward strands."""
    current = diagram
    while True:
        for index, piece in enumerate(current.slices):
            if piece.gen not in CROSSINGS:
                continue
            pair = current.signatures[index][piece.at : piece.at + 2]
            if pair == (UP, UP):
                continue
            replacement = shifted(mixed_crossing_slices(piece.gen, pair), piece.at)
            current = current.with_slices(current.slices[:index] + tuple(replacement) + current.slices[index + 1 :])
            break
        else:
            return current


def ladder_slices(n: int, at: int, width: int = 2) -> List[Slice]:
    """Sink over source joined by n - width return strands on the right.

    Acts on ``width`` upward strands starting at ``at``. Width 2 is the
    crossing-resolution web (and the singular-vertex expansion), width n is
    the plain sink/source pair, and width |e0| replaces a MOY vertex.
    """
    if not 1 <= width <= n:
        raise OutOfRange("ladder width must lie in 1..n", width=width, n=n)
    returns = n - width
    return (
        [Slice("cupE", at + width + j) for j in range(returns)]
        + [Slice("vin", at), Slice("vout", at)]
        + [Slice("capQ", at + width + j) for j in reversed(range(returns))]
    )


def kink_slices(sign: int, at: int = 0) -> List[Slice]:
    """A curl on the upward strand at ``at``; sign +1 is the positive kink."""
    gen = "xp" if sign > 0 else "xm"
    return [Slice("cupE", at + 1), Slice(gen, at), Slice("capQ", at + 1)]


def braid_slices(word: Sequence[int]) -> List[Slice]:
    """Slices of the braid ``b_{w1} b_{w2} ...`` (leftmost factor on top).

    Positive letters are xp, negative letters xm, 1-indexed as sigma_i.
    """
    slices = []
    for letter in reversed(list(word)):
        if letter == 0:
            raise InputError("braid letters are nonzero", letter=letter)
        slices.append(Slice("xp" if letter > 0 else "xm", abs(letter) - 1))
    return slices


# -- tangles ------------------------------------------------------------------


def identity_tangle(n: int, signature: Signature) -> SlicedDiagram:
    return SlicedDiagram(n, (), tuple(signature))


def braid_tangle(word: Sequence[int], k: int, n: int) -> SlicedDiagram:
    return SlicedDiagram(n, tuple(braid_slices(word)), (UP,) * k)


def ladder(n: int, width: int = 2) -> SlicedDiagram:
    return SlicedDiagram(n, tuple(ladder_slices(n, 0, width)), (UP,) * width)


def sink_source(n: int) -> SlicedDiagram:
    """A sink directly below a source on n upward strands."""
    return SlicedDiagram(n, (Slice("vin", 0), Slice("vout", 0)), (UP,) * n)


def kink_tangle(n: int, sign: int) -> SlicedDiagram:
    return SlicedDiagram(n, tuple(kink_slices(sign)), (UP,))


def bigon(n: int) -> SlicedDiagram:
    """A strand split into a source and a sink by n - 1 parallel returns."""
    return ladder(n, width=1)


def square(n: int = 3) -> SlicedDiagram:
    """Four-vertex square web with boundary (u, d) below and above."""
    slices = [
        Slice("vout", 1),
        Slice("capQ", 3),
        Slice("cupQ", 0),
        Slice("vin", 1),
        Slice("vout", 1),
        Slice("capE", 0),
        Slice("cupE", 3),
        Slice("vin", 1),
    ]
    return SlicedDiagram(n, tuple(slices), (UP, DOWN))


def cap_cup(n: int) -> SlicedDiagram:
    """capQ then cupE on (u, d): the turn-back tangle."""
    return SlicedDiagram(n, (Slice("capQ", 0), Slice("cupE", 0)), (UP, DOWN))


def lambda_terms(k: int, n: int) -> List[Tuple[SlicedDiagram, LaurentPoly]]:
    """Braid tangles and coefficients of the antisymmetrizer on k strands."""
    return [(braid_tangle(word, k, n), coeff) for word, coeff in lambda_skein(k, n)]


# -- closures -----------------------------------------------------------------


def closure(tangle: SlicedDiagram) -> SlicedDiagram:
    """Close every strand of an upward tangle around the right side."""
    k = len(tangle.bottom)
    if tangle.bottom != (UP,) * k or tangle.top != (UP,) * k:
        raise InputError("closure needs an upward tangle with matching ends")
    slices = (
        [Slice("cupE", j) for j in range(k)]
        + list(tangle.slices)
        + [Slice("capQ", j) for j in reversed(range(k))]
    )
    return SlicedDiagram(tangle.n, tuple(slices))


def close_last_strand(tangle: SlicedDiagram) -> SlicedDiagram:
    """Close only the rightmost strand of an upward tangle."""
    k = len(tangle.bottom)
    if k < 1 or tangle.bottom != (UP,) * k or tangle.top != (UP,) * k:
        raise InputError("partial closure needs an upward tangle with matching ends")
    slices = [Slice("cupE", k - 1)] + list(tangle.slices) + [Slice("capQ", k - 1)]
    return SlicedDiagram(tangle.n, tuple(slices), (UP,) * (k - 1))


def braid_closure(word: Sequence[int], k: int, n: int) -> SlicedDiagram:
    return closure(braid_tangle(word, k, n))


# -- closed diagrams ----------------------------------------------------------


def unknot(n: int, *, clockwise: bool = False) -> SlicedDiagram:
    if clockwise:
        return SlicedDiagram(n, (Slice("cupQ", 0), Slice("capE", 0)))
    return SlicedDiagram(n, (Slice("cupE", 0), Slice("capQ", 0)))


def kinked_unknot(n: int, sign: int = 1) -> SlicedDiagram:
    return closure(kink_tangle(n, sign))


def theta(n: int) -> SlicedDiagram:
    """A source directly below a sink: the basic closed web."""
    return SlicedDiagram(n, (Slice("vout", 0), Slice("vin", 0)))


def hopf(n: int) -> SlicedDiagram:
    return braid_closure([1, 1], 2, n)


def trefoil(n: int) -> SlicedDiagram:
    return braid_closure([1, 1, 1], 2, n)


def figure_eight(n: int) -> SlicedDiagram:
    return braid_closure([1, -2, 1, -2], 3, n)


def two_unknots(n: int) -> SlicedDiagram:
    circle = unknot(n)
    return circle.with_slices(circle.slices + circle.slices)


def lambda_closure_terms(n: int) -> List[Tuple[SlicedDiagram, LaurentPoly]]:
    return [(closure(tangle), coeff) for tangle, coeff in lambda_terms(n, n)]


BUILTINS: Dict[str, Callable[[int], SlicedDiagram]] = {
    "unknot": unknot,
    "unknot_cw": lambda n: unknot(n, clockwise=True),
    "kink_positive": lambda n: kinked_unknot(n, 1),
    "kink_negative": lambda n: kinked_unknot(n, -1),
    "two_unknots": two_unknots,
    "hopf": hopf,
    "trefoil": trefoil,
    "figure_eight": figure_eight,
    "theta": theta,
}


def builtin(name: str, n: int) -> SlicedDiagram:
    """Look up a named closed diagram for the given n."""
    try:
        factory = BUILTINS[name]
    except KeyError as exc:
        raise InputError(f"unknown builtin diagram {name!r}", known=sorted(BUILTINS)) from exc
    return factory(n)
