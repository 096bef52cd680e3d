"""Named property suites behind ``snweb check``.

A suite is a list of cases per n. Every case is rebuilt from
(suite, n, seed, index) alone, so any failure can be replayed in isolation
and cases can be shipped to Celery workers as four plain values.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from math import factorial
from typing import Callable, Dict, List, Sequence, Tuple

from algebra.combinat import all_permutations, quantum_factorial, quantum_int
from algebra.hecke import HeckeElement, e_element, eigenvalue, idempotent_factor
from algebra.poly import ONE, LaurentPoly, t_power
from evaluate.moy import eta, eta_over_states, moy_bracket, moy_state_sum, substitution_check
from evaluate.statesum import combination_value, crossing_count, positivity_report, resolve_crossings, state_sum
from evaluate.tensor_eval import (
    SparseOperator,
    combination_operator,
    evaluate,
    hecke_action,
    lambda_operator,
    operator_of_tangle,
    t_minus,
    t_plus,
    uq_generator_action,
)
from webs.diagram import CROSSINGS, DOWN, UP, Slice, SlicedDiagram, rotate_basepoint
from webs.library import (
    braid_tangle,
    close_last_strand,
    hopf,
    kink_slices,
    kink_tangle,
    lambda_closure_terms,
    lambda_terms,
    sink_source,
    theta,
    trefoil,
    unknot,
)
from webs.moy_graph import MOYGraph, MOYSlice
from webs.random_webs import planar_isotopy, random_context, random_link, random_planar_web
from checks.kauffman import kauffman_compare
from checks.kuperberg import kuperberg_suite
from checks.singular import pn_relations, ring_report, singular_bracket, singular_relations, sinksource_closed_sides, sinksource_sides
from errors import InputError
from utils import logger
import config


Outcome = Tuple[bool, str]


@dataclass(frozen=True)
class CaseResult:
    suite: str
    n: int
    seed: int
    index: int
    ok: bool
    detail: str = ""

    def as_dict(self) -> Dict[str, object]:
        return asdict(self)


@dataclass
class SuiteReport:
    suite: str
    seed: int
    size: int
    results: List[CaseResult] = field(default_factory=list)

    @property
    def failures(self) -> List[CaseResult]:
        return [result for result in self.results if not result.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> Dict[str, object]:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "size": self.size,
            "cases": len(self.results),
            "passed": len(self.results) - len(self.failures),
            "failures": [result.as_dict() for result in self.failures],
        }


@dataclass(frozen=True)
class Suite:
    name: str
    ns: Tuple[int, ...]
    case_names: Callable[[int, int], Sequence[str]]
    run: Callable[[str, int, random.Random], Outcome]


def _check(ok: bool, left: object = "", right: object = "") -> Outcome:
    if ok:
        return True, ""
    return False, f"{left} != {right}"


def _equal(left: LaurentPoly, right: LaurentPoly) -> Outcome:
    return _check(left == right, left.render(), right.render())


def _equal_ops(left: SparseOperator, right: SparseOperator) -> Outcome:
    return _check(left == right, repr(left), repr(right))


def _all(outcomes: Sequence[Outcome]) -> Outcome:
    failed = [detail for ok, detail in outcomes if not ok]
    return (not failed, "; ".join(failed))


def _q(n: int) -> LaurentPoly:
    return t_power(n)


def _randomized(size: int, prefix: str = "random") -> List[str]:
    return [f"{prefix}-{index}" for index in range(size)]


def _with_kink(diagram: SlicedDiagram, rng: random.Random, sign: int) -> SlicedDiagram:
    """Insert a curl on a random upward strand at a random level."""
    spots = [
        (level, position)
        for level, signature in enumerate(diagram.signatures)
        for position, orientation in enumerate(signature)
        if orientation == UP
    ]
    level, position = rng.choice(spots)
    slices = diagram.slices[:level] + tuple(kink_slices(sign, position)) + diagram.slices[level:]
    return diagram.with_slices(slices)


def _with_reidemeister_two(diagram: SlicedDiagram, rng: random.Random) -> SlicedDiagram:
    """Insert a crossing and its inverse on a random adjacent pair."""
    spots = [(level, position) for level, signature in enumerate(diagram.signatures) for position in range(len(signature) - 1)]
    level, position = rng.choice(spots)
    first = rng.choice(CROSSINGS)
    second = "xm" if first == "xp" else "xp"
    slices = diagram.slices[:level] + (Slice(first, position), Slice(second, position)) + diagram.slices[level:]
    return diagram.with_slices(slices)


# -- axioms ---------------------------------------------------------------------------


def _axiom_names(n: int, size: int) -> List[str]:
    names = ["skein_up", "skein_down", "kink", "empty_and_annulus"]
    if n <= 4:
        names.append("sinksource")
    return names + _randomized(max(1, size // 4), "annulus_union")


def _axioms(name: str, n: int, rng: random.Random) -> Outcome:
    q = _q(n)
    if name.startswith("skein"):
        pair = (UP, UP) if name == "skein_up" else (DOWN, DOWN)
        positive = operator_of_tangle(SlicedDiagram(n, (Slice("xp", 0),), pair))
        negative = operator_of_tangle(SlicedDiagram(n, (Slice("xm", 0),), pair))
        identity = SparseOperator.identity(n, pair)
        return _equal_ops(positive.scale(t_power(1)) - negative.scale(t_power(-1)), identity.scale(q - q ** -1))
    if name == "kink":
        strand = SparseOperator.identity(n, (UP,))
        return _all(
            [
                _equal_ops(operator_of_tangle(kink_tangle(n, 1)), strand.scale(t_power(n * n - 1))),
                _equal_ops(operator_of_tangle(kink_tangle(n, -1)), strand.scale(t_power(1 - n * n))),
            ]
        )
    if name == "empty_and_annulus":
        return _all([_equal(evaluate(SlicedDiagram(n, ())), ONE), _equal(evaluate(unknot(n)), quantum_int(n, n))])
    if name == "sinksource":
        right = combination_operator(lambda_terms(n, n)).scale(t_power(n * n * (n - 1)))
        return _equal_ops(operator_of_tangle(sink_source(n)), right)
    link = random_link(rng, n, max_crossings=3)
    with_circle = link.with_slices(link.slices + unknot(n).slices)
    return _equal(evaluate(with_circle), quantum_int(n, n) * evaluate(link))


# -- Kauffman ----------------------------------------------------------------------------


_KAUFFMAN_FIXED = {"unknot": unknot, "hopf": hopf, "trefoil": trefoil}


def _kauffman(name: str, n: int, rng: random.Random) -> Outcome:
    diagram = _KAUFFMAN_FIXED[name](2) if name in _KAUFFMAN_FIXED else random_link(rng, 2, max_crossings=8)
    report = kauffman_compare(diagram)
    return _check(report.ok, report.bracket.render(), report.expected.render())


# -- dual evaluators ---------------------------------------------------------------------


def _resolved_crossing_cap(n: int) -> int:
    if n <= 3:
        return config.MAX_CROSSINGS
    return min(config.MAX_CROSSINGS, config.RESOLVED_WIDE_MAX_CROSSINGS)


def _dual(name: str, n: int, rng: random.Random) -> Outcome:
    if name.startswith("web"):
        web = random_planar_web(rng, n)
        return _equal(state_sum(web), evaluate(web))
    link = random_link(rng, n, max_crossings=_resolved_crossing_cap(n))
    count = crossing_count(link)
    order = rng.sample(range(count), count)
    return _equal(combination_value(resolve_crossings(link, order)), evaluate(link))


def _dual_names(n: int, size: int) -> List[str]:
    return _randomized(size, "web") + _randomized(max(1, size // 3), "link")


# -- closed webs ---------------------------------------------------------------------------


def _closed(name: str, n: int, rng: random.Random) -> Outcome:
    basic = t_power(n * n * (n - 1) // 2) * quantum_factorial(n, n)
    if name == "theta":
        return _all([_equal(evaluate(theta(n)), basic), _equal(state_sum(theta(n)), basic)])
    expected = t_power(-n * n * (n - 1) // 2) * quantum_factorial(n, n)
    total = LaurentPoly()
    for diagram, coeff in lambda_closure_terms(n):
        total = total + coeff * evaluate(diagram)
    return _equal(total, expected)


# -- Hecke algebra ---------------------------------------------------------------------------


def _hecke_names(n: int, size: int) -> List[str]:
    names = [f"quadratic-{k}" for k in range(2, 5)]
    names += [f"braid-{k}" for k in range(3, 5)]
    names += [f"poincare-{k}" for k in range(1, 7)]
    names += [f"eigen-{sign}-{k}" for sign in "+-" for k in range(2, 5)]
    names += [f"idempotent-{sign}-{k}" for sign in "+-" for k in range(1, 5)]
    names += [f"action-{k}" for k in range(2, 5) if n**k <= 256]
    return names + _randomized(max(1, size // 4), "homomorphism")


def _hecke(name: str, n: int, rng: random.Random) -> Outcome:
    kind, _, rest = name.partition("-")
    if kind == "homomorphism":
        k = rng.randint(2, 3)
        left = _random_hecke(rng, k, n)
        right = _random_hecke(rng, k, n)
        return _equal_ops(hecke_action(left * right), hecke_action(left) @ hecke_action(right))
    if kind in ("eigen", "idempotent"):
        sign, _, raw_k = rest.rpartition("-")
        k = int(raw_k)
        element = e_element(k, n, sign)
        if kind == "idempotent":
            return _check(element * element == element.scale(idempotent_factor(k, n, sign)), kind, sign)
        checks = []
        for i in range(1, k):
            generator = HeckeElement.generator(i, k, n)
            expected = element.scale(eigenvalue(n, sign))
            checks.append(_check(generator * element == expected and element * generator == expected, f"h{i}", sign))
        return _all(checks)
    k = int(rest)
    if kind == "quadratic":
        checks = []
        for i in range(1, k):
            h = HeckeElement.generator(i, k, n)
            expected = h.scale(t_power(n - 1) - t_power(-n - 1)) + HeckeElement.identity(k, n).scale(t_power(-2))
            checks.append(_check(h * h == expected, f"h{i}^2"))
        return _all(checks)
    if kind == "braid":
        checks = []
        for i in range(1, k - 1):
            a = HeckeElement.generator(i, k, n)
            b = HeckeElement.generator(i + 1, k, n)
            checks.append(_check(a * b * a == b * a * b, f"h{i}h{i + 1}h{i}"))
        return _all(checks)
    if kind == "poincare":
        total = LaurentPoly()
        for sigma in all_permutations(k):
            total = total + t_power(2 * n * sigma.length())
        return _equal(total, t_power(n * k * (k - 1) // 2) * quantum_factorial(k, n))
    # action: h_sigma acts as the positive braid of sigma; g_i = t h_i words pick up t^l
    checks = []
    for sigma in all_permutations(k):
        word = sigma.reduced_word()
        braid = operator_of_tangle(braid_tangle(word, k, n))
        checks.append(_equal_ops(hecke_action(HeckeElement.basis(sigma, n)), braid))
        g_word = HeckeElement.identity(k, n)
        for i in word:
            g_word = g_word * HeckeElement.g(i, k, n)
        checks.append(_equal_ops(hecke_action(g_word), braid.scale(t_power(len(word)))))
    return _all(checks)


def _random_hecke(rng: random.Random, k: int, n: int) -> HeckeElement:
    perms = list(all_permutations(k))
    coeffs = {rng.choice(perms): t_power(rng.randint(-2, 2), rng.choice((1, -1, 2))) for _ in range(2)}
    return HeckeElement(k, n, coeffs)


# -- operator identities ----------------------------------------------------------------------------


def _operator_names(n: int, size: int) -> List[str]:
    names = [f"closure-{k}" for k in range(1, 4) if k < n and n ** (k + 1) <= 625]
    if n <= 4:
        names += [f"hT-{i}" for i in range(1, n)]
    return names + ["kink_eigenvalue"]


def _operators(name: str, n: int, rng: random.Random) -> Outcome:
    kind, _, rest = name.partition("-")
    if kind == "closure":
        k = int(rest)
        closed = combination_operator([(close_last_strand(tangle), coeff) for tangle, coeff in lambda_terms(k + 1, n)])
        expected = lambda_operator(k, n).scale(t_power(-n * k) * quantum_int(n - k, n))
        return _equal_ops(closed, expected)
    if kind == "hT":
        i = int(rest)
        action = hecke_action(HeckeElement.generator(i, n, n))
        vector = t_plus(n)
        return _check(action.apply(vector) == vector.scale(t_power(-n - 1, -1)), f"h{i} T+")
    kink = operator_of_tangle(kink_tangle(n, 1))
    return _check(kink.is_scalar_multiple_of_identity(n) == t_power(n * n - 1), "kink")


# -- equivariance ----------------------------------------------------------------------------------


def _equivariance_names(n: int, size: int) -> List[str]:
    return [f"{which}-{i}" for which in "KEF" for i in range(1, n)]


def _equivariance(name: str, n: int, rng: random.Random) -> Outcome:
    which, _, raw_i = name.partition("-")
    action = uq_generator_action(which, int(raw_i), n, n)
    source = t_plus(n)
    sink = t_minus(n)
    moved = action.apply(source)
    pulled = sink @ action
    if which == "K":
        return _check(moved == source and pulled == sink, "K fixes T+ and T-")
    return _check(moved.is_zero() and pulled.is_zero(), f"{which} kills T+ and T-")


# -- marked points --------------------------------------------------------------------------------


def _marked(name: str, n: int, rng: random.Random) -> Outcome:
    web = random_planar_web(rng, n, rotations=0)
    vertices = web.vertex_slices()
    if not vertices:
        web = theta(n)
        vertices = web.vertex_slices()
    rotated = rotate_basepoint(web, rng.randrange(len(vertices)), rng.randrange(1, n))
    before, after = evaluate(web), evaluate(rotated)
    if n % 2:
        return _equal(after, before)
    return _equal(after.mod2(), before.mod2())


# -- MOY ---------------------------------------------------------------------------------------------


def moy_annulus(n: int, k: int, *, orient: str = "ud") -> MOYGraph:
    return MOYGraph(n, (MOYSlice("mcup", 0, (k,), orient), MOYSlice("mcap", 0, (k,))))


def moy_theta(n: int, k: int, l: int) -> MOYGraph:
    return MOYGraph(
        n,
        (
            MOYSlice("mcup", 0, (k + l,)),
            MOYSlice("split", 0, (k, l)),
            MOYSlice("merge", 0, (k, l)),
            MOYSlice("mcap", 0, (k + l,)),
        ),
    )


def moy_square(n: int) -> MOYGraph:
    """Two label-2 strands exchanging a label-1 strand twice."""
    return MOYGraph(
        n,
        (
            MOYSlice("mcup", 0, (2,)),
            MOYSlice("mcup", 1, (2,)),
            MOYSlice("split", 0, (1, 1)),
            MOYSlice("split", 2, (1, 1)),
            MOYSlice("merge", 1, (1, 1)),
            MOYSlice("split", 1, (1, 1)),
            MOYSlice("merge", 0, (1, 1)),
            MOYSlice("merge", 1, (1, 1)),
            MOYSlice("mcap", 1, (2,)),
            MOYSlice("mcap", 0, (2,)),
        ),
    )


def moy_corpus(n: int) -> Dict[str, MOYGraph]:
    corpus: Dict[str, MOYGraph] = {}
    for k in range(1, n + 1):
        corpus[f"annulus-{k}"] = moy_annulus(n, k)
    corpus["annulus-cw"] = moy_annulus(n, 1, orient="du")
    corpus["theta-1-1"] = moy_theta(n, 1, 1)
    if n >= 3:
        corpus["theta-1-2"] = moy_theta(n, 1, 2)
    corpus["square"] = moy_square(n)
    return corpus


def _moy(name: str, n: int, rng: random.Random) -> Outcome:
    graph = moy_corpus(n)[name]
    parities = set(eta_over_states(graph))
    return _all(
        [
            _equal(moy_state_sum(graph), moy_bracket(graph)),
            _check(substitution_check(graph).ok, "substitution"),
            _check(parities == {eta(graph)}, sorted(parities), eta(graph)),
        ]
    )


# -- singular links and P_n -----------------------------------------------------------------------


def _singular(name: str, n: int, rng: random.Random) -> Outcome:
    context = random_context(rng, 2)
    kink_context = random_context(rng, 1)
    sides = singular_relations(context, kink_context, n)
    outcome = _all([_check(left == right, key, f"{left.render()} vs {right.render()}") for key, (left, right) in sides.items()])
    report = ring_report(singular_bracket(context.close(SlicedDiagram(n, (Slice("x4", 0),), (UP, UP)))), n)
    if outcome[0] and not report.in_qn_ring:
        logger.info("Singular bracket lies outside Z[q^+-n]", **report.summary())
    if not report.in_q_ring:
        return False, f"value outside Z[q^+-1]: {report.value.render()}"
    return outcome


def _pn_names(n: int, size: int) -> List[str]:
    names = ["sinksource"] if n <= 4 else []
    return names + _randomized(size)


def _pn(name: str, n: int, rng: random.Random) -> Outcome:
    if name == "sinksource":
        return _equal_ops(*sinksource_sides(n))
    context = random_context(rng, 2)
    kink_context = random_context(rng, 1)
    outcomes = [_check(left == right, key, f"{left.render()} vs {right.render()}") for key, (left, right) in pn_relations(context, kink_context, n).items()]
    if n <= 3:
        outcomes.append(_equal(*sinksource_closed_sides(random_context(rng, n, extra_strands=0, max_length=2), n)))
    return _all(outcomes)


# -- positivity, isotopy, Kuperberg, classical --------------------------------------------------------


def _positivity(name: str, n: int, rng: random.Random) -> Outcome:
    report = positivity_report(random_link(rng, n, max_crossings=_resolved_crossing_cap(n)))
    return _check(report.ok, report.summary())


def _isotopy_names(n: int, size: int) -> List[str]:
    return ["reidemeister_two", "reidemeister_three"] + _randomized(size)


def _isotopy(name: str, n: int, rng: random.Random) -> Outcome:
    pairs = [(a, b) for a in (UP, DOWN) for b in (UP, DOWN)]
    if name == "reidemeister_two":
        checks = []
        for pair in pairs:
            for first, second in (("xp", "xm"), ("xm", "xp")):
                tangle = SlicedDiagram(n, (Slice(first, 0), Slice(second, 0)), pair)
                checks.append(_equal_ops(operator_of_tangle(tangle), SparseOperator.identity(n, pair)))
        return _all(checks)
    if name == "reidemeister_three":
        checks = []
        for triple in ((a, b, c) for a in (UP, DOWN) for b in (UP, DOWN) for c in (UP, DOWN)):
            for gen in CROSSINGS:
                left = SlicedDiagram(n, (Slice(gen, 0), Slice(gen, 1), Slice(gen, 0)), triple)
                right = SlicedDiagram(n, (Slice(gen, 1), Slice(gen, 0), Slice(gen, 1)), triple)
                checks.append(_equal_ops(operator_of_tangle(left), operator_of_tangle(right)))
        return _all(checks)
    link = random_link(rng, n, max_crossings=3)
    base = evaluate(link)
    sign = rng.choice((1, -1))
    return _all(
        [
            _equal(evaluate(_with_reidemeister_two(link, rng)), base),
            _equal(evaluate(_with_kink(link, rng, sign)), t_power(sign * (n * n - 1)) * base),
            _equal(evaluate(planar_isotopy(link, rng)), base),
        ]
    )


def _kuperberg(name: str, n: int, rng: random.Random) -> Outcome:
    report = kuperberg_suite(name)
    if name == "signed":
        return _check(report.ok, report.failed)
    # The unsigned normalization is reported, not required.
    return True, f"failed relations: {', '.join(report.failed) or 'none'}"


def _classical(name: str, n: int, rng: random.Random) -> Outcome:
    if name == "theta":
        return _check(evaluate(theta(n)).at_one() == factorial(n), evaluate(theta(n)).at_one(), factorial(n))
    link = random_link(rng, n, max_crossings=3)
    flipped = link.with_slices(
        Slice({"xp": "xm", "xm": "xp"}.get(piece.gen, piece.gen), piece.at) for piece in link.slices
    )
    return _check(evaluate(link).at_one() == evaluate(flipped).at_one(), "crossing change at t = 1")


def _fixed(*names: str) -> Callable[[int, int], Sequence[str]]:
    return lambda n, size: list(names)


def _random_only(n: int, size: int) -> List[str]:
    return _randomized(size)


SUITES: Dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite("axioms", (2, 3, 4, 5), _axiom_names, _axioms),
        Suite("kauffman", (2,), lambda n, size: list(_KAUFFMAN_FIXED) + _randomized(size), _kauffman),
        Suite("dual", config.SUITE_DEFAULT_NS, _dual_names, _dual),
        Suite("closed", config.SUITE_DEFAULT_NS, _fixed("theta", "lambda_closure"), _closed),
        Suite("hecke", config.SUITE_DEFAULT_NS, _hecke_names, _hecke),
        Suite("operators", (2, 3, 4, 5), _operator_names, _operators),
        Suite("equivariance", config.SUITE_DEFAULT_NS, _equivariance_names, _equivariance),
        Suite("marked", config.SUITE_DEFAULT_NS, lambda n, size: _randomized(max(size, 10)), _marked),
        Suite("moy", config.SUITE_DEFAULT_NS, lambda n, size: list(moy_corpus(n)), _moy),
        Suite("singular", config.SUITE_DEFAULT_NS, _random_only, _singular),
        Suite("positivity", config.SUITE_DEFAULT_NS, _random_only, _positivity),
        Suite("isotopy", config.SUITE_DEFAULT_NS, _isotopy_names, _isotopy),
        Suite("kuperberg", (3,), _fixed("signed", "unsigned"), _kuperberg),
        Suite("pn", config.SUITE_DEFAULT_NS, _pn_names, _pn),
        Suite("classical", config.SUITE_DEFAULT_NS, lambda n, size: ["theta"] + _randomized(size), _classical),
    )
}


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError as exc:
        raise InputError(f"unknown suite {name!r}", known=sorted(SUITES)) from exc


def plan(name: str, size: int, ns: Sequence[int] | None = None) -> List[Tuple[int, int]]:
    """(n, index) pairs of every case the suite runs."""
    suite = get_suite(name)
    chosen = suite.ns if ns is None else tuple(n for n in ns if n in suite.ns)
    return [(n, index) for n in chosen for index in range(len(suite.case_names(n, size)))]


def run_case(name: str, n: int, seed: int, index: int, size: int | None = None) -> CaseResult:
    """Rebuild and run one case; exceptions become failed results."""
    suite = get_suite(name)
    size = config.DEFAULT_SIZE if size is None else size
    case_name = suite.case_names(n, size)[index]
    rng = random.Random(f"{name}:{n}:{seed}:{index}")
    try:
        ok, detail = suite.run(case_name, n, rng)
    except Exception as exc:
        logger.exception("Suite case crashed", suite=name, n=n, seed=seed, index=index, case=case_name)
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    result = CaseResult(name, n, seed, index, ok, f"{case_name}: {detail}" if detail else case_name)
    if ok:
        logger.debug("Suite case passed", **result.as_dict())
    else:
        logger.error("Suite case failed", **result.as_dict())
    return result


def run_suite(name: str, *, seed: int, size: int, ns: Sequence[int] | None = None) -> SuiteReport:
    report = SuiteReport(name, seed, size)
    for n, index in plan(name, size, ns):
        report.results.append(run_case(name, n, seed, index, size))
    logger.info("Suite finished", suite=name, cases=len(report.results), failures=len(report.failures))
    return report
