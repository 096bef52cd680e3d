import random

import pytest

from algebra.combinat import quantum_int
from algebra.poly import t_power
from checks.singular import (
    normalized_invariant,
    pn_relations,
    psi_expand,
    ring_report,
    singular_bracket,
    singular_relations,
    sinksource_closed_sides,
    sinksource_sides,
)
from evaluate.tensor_eval import evaluate
from webs.diagram import UP, Slice, SlicedDiagram, vertex_count
from webs.library import closure, hopf, unknot
from webs.random_webs import random_context, random_singular


def _closed_vertex(n):
    return closure(SlicedDiagram(n, (Slice("x4", 0),), (UP, UP)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_unknot(n):
    assert singular_bracket(unknot(n)) == quantum_int(n, n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_closed_vertex(n):
    assert singular_bracket(_closed_vertex(n)) == quantum_int(n, n) * quantum_int(n - 1, n)


def test_psi_expand_replaces_vertices():
    expanded = psi_expand(_closed_vertex(3))
    assert not expanded.is_singular
    assert vertex_count(expanded) == (1, 1)


def test_psi_expand_can_change_n():
    assert psi_expand(_closed_vertex(3), n=4).n == 4


@pytest.mark.parametrize("n", [2, 3])
def test_singular_relations_hold(n):
    rng = random.Random(23 + n)
    for _ in range(3):
        sides = singular_relations(random_context(rng, 2), random_context(rng, 1), n)
        for name, (left, right) in sides.items():
            assert left == right, name


@pytest.mark.parametrize("n", [2, 3])
def test_normalized_invariant_relations_hold(n):
    rng = random.Random(31 + n)
    for _ in range(3):
        sides = pn_relations(random_context(rng, 2), random_context(rng, 1), n)
        for name, (left, right) in sides.items():
            assert left == right, name


@pytest.mark.parametrize("n", [2, 3])
def test_sink_over_source(n):
    lhs, rhs = sinksource_sides(n)
    assert lhs == rhs


def test_sink_over_source_in_a_context():
    rng = random.Random(5)
    lhs, rhs = sinksource_closed_sides(random_context(rng, 2, extra_strands=0), 2)
    assert lhs == rhs


def test_normalized_invariant_of_unknot():
    assert normalized_invariant(unknot(3)) == evaluate(unknot(3))


def test_hopf_normalization_removes_writhe():
    assert normalized_invariant(hopf(2)) == evaluate(hopf(2)).shift(-3 * 2)


def test_ring_report():
    assert ring_report(t_power(18) + t_power(-9), 3).in_qn_ring
    report = ring_report(t_power(3), 3)
    assert report.in_q_ring and not report.in_qn_ring
    assert not ring_report(t_power(1), 3).in_q_ring


@pytest.mark.parametrize("n", [2, 3])
def test_random_singular_brackets_live_in_q(n):
    rng = random.Random(n)
    for _ in range(4):
        value = singular_bracket(random_singular(rng, n))
        assert ring_report(value, n).in_q_ring
