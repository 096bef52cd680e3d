"""Kuperberg's A2 spider relations checked against the n = 3 bracket.

Each relation is an identity between operators on its boundary (or a scalar
for the circle). Webs with vertices are rescaled by a normalization given per
sink/source pair before comparison; two candidates are provided.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List

from algebra.combinat import quantum_int
from algebra.poly import LaurentPoly, t_power
from evaluate.tensor_eval import SparseOperator, evaluate, operator_of_tangle
from webs.diagram import DOWN, UP, Slice, SlicedDiagram, vertex_count
from webs.library import bigon, cap_cup, kink_tangle, ladder, square, unknot
from utils import logger


N = 3

# Factor applied once per sink/source pair, in t (q = t^3).
NORMALIZATIONS: Dict[str, LaurentPoly] = {
    "signed": t_power(-9, -1),
    "unsigned": t_power(-6),
}


@dataclass(frozen=True)
class RelationResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class KuperbergReport:
    normalization: str
    results: List[RelationResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(result.ok for result in self.results)

    @property
    def failed(self) -> List[str]:
        return [result.name for result in self.results if not result.ok]

    def summary(self) -> Dict[str, object]:
        return {
            "normalization": self.normalization,
            "passed": [result.name for result in self.results if result.ok],
            "failed": self.failed,
        }


def _normalized(tangle: SlicedDiagram, per_pair: LaurentPoly) -> SparseOperator:
    sinks, sources = vertex_count(tangle)
    return operator_of_tangle(tangle).scale(per_pair ** min(sinks, sources))


def _crossing(gen: str) -> SlicedDiagram:
    return SlicedDiagram(N, (Slice(gen, 0),), (UP, UP))


def _compare(name: str, left: SparseOperator, right: SparseOperator) -> RelationResult:
    ok = left == right
    return RelationResult(name, ok, "" if ok else f"{left!r} != {right!r}")


def _relations(per_pair: LaurentPoly) -> Dict[str, Callable[[], RelationResult]]:
    identity2 = SparseOperator.identity(N, (UP, UP))
    web_h = _normalized(ladder(N), per_pair)
    positive = operator_of_tangle(_crossing("xp"))
    negative = operator_of_tangle(_crossing("xm"))
    q = t_power(N)
    q_inv = t_power(-N)
    return {
        # L+ = q^(-1/3) H + q^(2/3) L0
        "positive_crossing": lambda: _compare(
            "positive_crossing", positive, web_h.scale(t_power(-1)) + identity2.scale(t_power(2))
        ),
        # L- = q^(1/3) H + q^(-2/3) L0
        "negative_crossing": lambda: _compare(
            "negative_crossing", negative, web_h.scale(t_power(1)) + identity2.scale(t_power(-2))
        ),
        "circle": lambda: RelationResult("circle", evaluate(unknot(N)) == quantum_int(3, N)),
        "bigon": lambda: _compare(
            "bigon",
            _normalized(bigon(N), per_pair),
            SparseOperator.identity(N, (UP,)).scale(-quantum_int(2, N)),
        ),
        "square": lambda: _compare(
            "square",
            _normalized(square(N), per_pair),
            SparseOperator.identity(N, (UP, DOWN)) + operator_of_tangle(cap_cup(N)),
        ),
        # q^(1/3) L+ - q^(-1/3) L- = (q - q^-1) L0
        "skein": lambda: _compare(
            "skein",
            positive.scale(t_power(1)) - negative.scale(t_power(-1)),
            identity2.scale(q - q_inv),
        ),
        "kink": lambda: _compare(
            "kink",
            operator_of_tangle(kink_tangle(N, 1)),
            SparseOperator.identity(N, (UP,)).scale(t_power(8)),
        ),
    }


def kuperberg_suite(normalization: str = "signed") -> KuperbergReport:
    """Check every relation under the named vertex normalization."""
    per_pair = NORMALIZATIONS[normalization]
    report = KuperbergReport(normalization)
    for name, check in _relations(per_pair).items():
        report.results.append(check())
    if report.ok:
        logger.info("Kuperberg relations hold", **report.summary())
    else:
        logger.info("Kuperberg relations fail under this normalization", **report.summary())
    return report


def kuperberg_all() -> Dict[str, KuperbergReport]:
    return {name: kuperberg_suite(name) for name in NORMALIZATIONS}
