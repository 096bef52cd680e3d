"""Kauffman bracket by state smoothing, and its comparison with the n = 2 bracket.

The smoothing sum runs in sympy on its own code path; it shares only the
diagram encoding with the tensor evaluator.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Tuple

import networkx as nx
import sympy as sp

from algebra.poly import LaurentPoly
from evaluate.tensor_eval import evaluate
from webs.diagram import CROSSINGS, SlicedDiagram, component_count, strand_graph, writhe
from errors import HasVertices
from utils import logger


A = sp.Symbol("A")
LOOP = -(A**2) - A ** (-2)


def _crossing_levels(diagram: SlicedDiagram) -> Tuple[Tuple[int, int, str], ...]:
    return tuple((level, piece.at, piece.gen) for level, piece in enumerate(diagram.slices) if piece.gen in CROSSINGS)


def _smoothed_loops(base: nx.Graph, crossings, choices: Tuple[str, ...]) -> int:
    graph = base.copy()
    for (level, at, gen), choice in zip(crossings, choices):
        graph.remove_edge((level, at), (level + 1, at + 1))
        graph.remove_edge((level, at + 1), (level + 1, at))
        vertical = (choice == "A") == (gen == "xp")
        if vertical:
            graph.add_edge((level, at), (level + 1, at))
            graph.add_edge((level, at + 1), (level + 1, at + 1))
        else:
            graph.add_edge((level, at), (level, at + 1))
            graph.add_edge((level + 1, at), (level + 1, at + 1))
    return nx.number_connected_components(graph)


def kauffman_bracket(diagram: SlicedDiagram) -> LaurentPoly:
    """[D] with [empty] = 1, [D + loop] = (-A^2 - A^-2)[D] and the A/B smoothing rule."""
    if diagram.vertex_slices() or diagram.is_singular:
        raise HasVertices("the Kauffman bracket is defined for link diagrams only")
    crossings = _crossing_levels(diagram)
    base = strand_graph(diagram)
    tally: Counter = Counter()
    for choices in itertools.product("AB", repeat=len(crossings)):
        a_count = choices.count("A")
        tally[(2 * a_count - len(choices), _smoothed_loops(base, crossings, choices))] += 1
    expression = sp.expand(sp.Add(*[count * A**power * LOOP**loops for (power, loops), count in tally.items()]))
    logger.debug("Kauffman bracket computed", crossings=len(crossings), smoothings=2 ** len(crossings))
    return LaurentPoly.from_sympy(expression, A)


@dataclass(frozen=True)
class KauffmanReport:
    kauffman: LaurentPoly
    bracket: LaurentPoly
    writhe: int
    components: int

    @property
    def expected(self) -> LaurentPoly:
        """(-1)^(w+c) [D], read in t = A."""
        return -self.kauffman if (self.writhe + self.components) % 2 else self.kauffman

    @property
    def ok(self) -> bool:
        return self.bracket == self.expected

    def summary(self) -> Dict[str, object]:
        return {
            "kauffman": self.kauffman.render("A"),
            "bracket": self.bracket.render("t"),
            "writhe": self.writhe,
            "components": self.components,
            "ok": self.ok,
        }


def kauffman_compare(diagram: SlicedDiagram) -> KauffmanReport:
    """Compare <D>_2 with (-1)^(w(D)+c(D)) [D] at A = q^(1/2) = t."""
    if diagram.n != 2:
        diagram = SlicedDiagram(2, diagram.slices, diagram.bottom)
    report = KauffmanReport(
        kauffman=kauffman_bracket(diagram),
        bracket=evaluate(diagram),
        writhe=writhe(diagram),
        components=component_count(diagram),
    )
    if not report.ok:
        logger.error("Kauffman comparison failed", **report.summary())
    return report
