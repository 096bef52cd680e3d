"""Singular-link bracket (D)_n and the Reidemeister-invariant normalization P_n.

Both are rescalings of the web bracket. (D)_n expands every 4-valent vertex
into a width-2 ladder first; P_n is normalized by writhe and sink count.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Dict, List, Tuple

from algebra.combinat import all_permutations, quantum_factorial, quantum_int
from algebra.poly import LaurentPoly, t_power
from evaluate.tensor_eval import SparseOperator, evaluate, operator_of_tangle
from webs.diagram import SINGULAR_VERTEX, UP, Slice, SlicedDiagram, vertex_count, writhe
from webs.library import braid_tangle, kink_tangle, ladder_slices, sink_source, unknot
from webs.random_webs import BraidContext
from errors import NonIntegralResult, NotDivisible
from utils import logger


def _at_n(diagram: SlicedDiagram, n: int | None) -> SlicedDiagram:
    if n is None or n == diagram.n:
        return diagram
    return SlicedDiagram(n, diagram.slices, diagram.bottom)


def psi_expand(diagram: SlicedDiagram, n: int | None = None) -> SlicedDiagram:
    """Replace every x4 vertex by a sink and a source joined by n - 2 strands."""
    diagram = _at_n(diagram, n)
    slices: List[Slice] = []
    for piece in diagram.slices:
        if piece.gen == SINGULAR_VERTEX:
            slices.extend(ladder_slices(diagram.n, piece.at, 2))
        else:
            slices.append(piece)
    return diagram.with_slices(slices)


def singular_bracket(diagram: SlicedDiagram, n: int | None = None) -> LaurentPoly:
    """(D)_n = <Psi(D)>_n / ([n-2]! q^(n(n-1)/2))^v(D) * q^(w(D)/n), in t."""
    diagram = _at_n(diagram, n)
    n = diagram.n
    singularities = sum(1 for piece in diagram.slices if piece.gen == SINGULAR_VERTEX)
    divisor = (quantum_factorial(n - 2, n) * t_power(n * n * (n - 1) // 2)) ** singularities
    raw = evaluate(psi_expand(diagram))
    try:
        value = raw.divide_exact(divisor)
    except NotDivisible as exc:
        logger.error("Singular bracket is not a Laurent polynomial", bracket=raw.render(), divisor=divisor.render())
        raise NonIntegralResult("singular bracket does not divide evenly", n=n, vertices=singularities) from exc
    return value.shift(writhe(diagram))


@dataclass(frozen=True)
class RingReport:
    """Where a value in t lives: Z[q^+-1] needs exponents divisible by n."""

    n: int
    value: LaurentPoly
    in_q_ring: bool
    q_exponent_gcd: int

    @property
    def in_qn_ring(self) -> bool:
        return self.in_q_ring and self.q_exponent_gcd % self.n == 0

    def summary(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "in_q_ring": self.in_q_ring,
            "q_exponent_gcd": self.q_exponent_gcd,
            "in_qn_ring": self.in_qn_ring,
        }


def ring_report(value: LaurentPoly, n: int) -> RingReport:
    in_q = value.rescaled(n)
    if in_q is None:
        return RingReport(n, value, False, 0)
    step = reduce(gcd, (exponent for exponent, _ in in_q.terms), 0)
    return RingReport(n, value, True, step)


def normalized_invariant(diagram: SlicedDiagram, n: int | None = None) -> LaurentPoly:
    """P_n = q^((1/n - n) w - n(n-1) v) <D>_n with v the number of sinks."""
    diagram = _at_n(diagram, n)
    n = diagram.n
    sinks = vertex_count(diagram).sinks
    return evaluate(diagram).shift((1 - n * n) * writhe(diagram) - n * n * (n - 1) * sinks)


# -- relations on closures ----------------------------------------------------------


def _local(n: int, *slices: Slice, width: int = 2) -> SlicedDiagram:
    return SlicedDiagram(n, tuple(slices), (UP,) * width)


def singular_relations(context: BraidContext, kink_context: BraidContext, n: int) -> Dict[str, Tuple[LaurentPoly, LaurentPoly]]:
    """Both sides of every (D)_n relation, evaluated on closures of local tangles."""
    q = t_power(n)
    q_inv = t_power(-n)
    smooth = singular_bracket(context.close(_local(n)))
    vertex = singular_bracket(context.close(_local(n, Slice(SINGULAR_VERTEX, 0))))
    straight = singular_bracket(kink_context.close(_local(n, width=1)))
    closed = context.close(_local(n))
    with_annulus = closed.with_slices(closed.slices + unknot(n).slices)
    return {
        "positive_crossing": (singular_bracket(context.close(_local(n, Slice("xp", 0)))), q * smooth - vertex),
        "negative_crossing": (singular_bracket(context.close(_local(n, Slice("xm", 0)))), q_inv * smooth - vertex),
        "positive_kink": (singular_bracket(kink_context.close(kink_tangle(n, 1))), t_power(n * n) * straight),
        "negative_kink": (singular_bracket(kink_context.close(kink_tangle(n, -1))), t_power(-n * n) * straight),
        "annulus_union": (singular_bracket(with_annulus), quantum_int(n, n) * smooth),
        "empty": (singular_bracket(SlicedDiagram(n, ())), LaurentPoly.constant(1)),
        "annulus": (singular_bracket(unknot(n)), quantum_int(n, n)),
    }


def pn_relations(context: BraidContext, kink_context: BraidContext, n: int) -> Dict[str, Tuple[LaurentPoly, LaurentPoly]]:
    """Both sides of the P_n skein triple, the annulus rule and Reidemeister I."""
    q = t_power(n)
    q_inv = t_power(-n)
    positive = normalized_invariant(context.close(_local(n, Slice("xp", 0))))
    negative = normalized_invariant(context.close(_local(n, Slice("xm", 0))))
    smooth_diagram = context.close(_local(n))
    smooth = normalized_invariant(smooth_diagram)
    straight = normalized_invariant(kink_context.close(_local(n, width=1)))
    with_annulus = smooth_diagram.with_slices(smooth_diagram.slices + unknot(n).slices)
    return {
        "skein": (t_power(n * n) * positive - t_power(-n * n) * negative, (q - q_inv) * smooth),
        "annulus_union": (normalized_invariant(with_annulus), quantum_int(n, n) * smooth),
        "positive_kink": (normalized_invariant(kink_context.close(kink_tangle(n, 1))), straight),
        "negative_kink": (normalized_invariant(kink_context.close(kink_tangle(n, -1))), straight),
    }


def _pn_operator(tangle: SlicedDiagram) -> SparseOperator:
    n = tangle.n
    exponent = (1 - n * n) * writhe(tangle) - n * n * (n - 1) * vertex_count(tangle).sinks
    return operator_of_tangle(tangle).scale(t_power(exponent))


def sinksource_sides(n: int) -> Tuple[SparseOperator, SparseOperator]:
    """P_n(sink over source) and sum over sigma of (-q^(n-1))^l(sigma) P_n(sigma), as operators."""
    lhs = _pn_operator(sink_source(n))
    rhs = SparseOperator((UP,) * n, (UP,) * n)
    for sigma in all_permutations(n):
        word = sigma.reduced_word()
        length = len(word)
        rhs = rhs + _pn_operator(braid_tangle(word, n, n)).scale(t_power(n * (n - 1) * length, (-1) ** length))
    return lhs, rhs


def sinksource_closed_sides(context: BraidContext, n: int) -> Tuple[LaurentPoly, LaurentPoly]:
    """The sink/source relation inside a closing context of width n."""
    lhs = normalized_invariant(context.close(sink_source(n)))
    rhs = LaurentPoly()
    for sigma in all_permutations(n):
        word = sigma.reduced_word()
        length = len(word)
        rhs = rhs + t_power(n * (n - 1) * length, (-1) ** length) * normalized_invariant(context.close(braid_tangle(word, n, n)))
    return lhs, rhs
