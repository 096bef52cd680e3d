import random
from math import factorial

import pytest

from algebra.combinat import all_permutations, quantum_factorial, quantum_int
from algebra.hecke import HeckeElement
from algebra.poly import ONE, LaurentPoly, t_power
from evaluate.tensor_eval import (
    SparseOperator,
    SparseVector,
    combination_operator,
    evaluate,
    generator_tensor,
    hecke_action,
    lambda_operator,
    local_table,
    operator_of_tangle,
    t_minus,
    t_plus,
    uq_generator_action,
)
from webs.diagram import CROSSINGS, DOWN, UP, Slice, SlicedDiagram, rotate_basepoint
from webs.library import (
    braid_closure,
    braid_tangle,
    close_last_strand,
    hopf,
    kink_tangle,
    kinked_unknot,
    ladder,
    lambda_closure_terms,
    lambda_terms,
    sink_source,
    theta,
    trefoil,
    two_unknots,
    unknot,
)
from errors import InvalidSignature, OpenDiagram, OutOfRange, SignatureMismatch


PAIRS = [(a, b) for a in (UP, DOWN) for b in (UP, DOWN)]


def _q(n):
    return t_power(n)


def test_r_matrix_on_equal_labels():
    for n in (2, 3, 4):
        xp = generator_tensor("xp", n, (UP, UP))
        assert xp.entries[((1, 1), (1, 1))] == t_power(n - 1)


def test_sink_weight_of_a_transposition():
    assert t_minus(2).entries[((2, 1), ())] == t_power(2, -1)
    assert ((1, 1), ()) not in t_minus(2).entries


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_unknot_is_quantum_n(n):
    assert evaluate(unknot(n)) == quantum_int(n, n)
    assert evaluate(unknot(n, clockwise=True)) == quantum_int(n, n)


def test_unknot_at_three():
    assert evaluate(unknot(3)) == LaurentPoly({6: 1, 0: 1, -6: 1})


@pytest.mark.parametrize("n", [2, 3, 4])
def test_theta_web(n):
    assert evaluate(theta(n)) == t_power(n * n * (n - 1) // 2) * quantum_factorial(n, n)
    assert evaluate(theta(n)).at_one() == factorial(n)


def test_theta_web_at_two():
    assert evaluate(theta(2)) == LaurentPoly({4: 1, 0: 1})


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("sign", [1, -1])
def test_kinked_unknot(n, sign):
    assert evaluate(kinked_unknot(n, sign)) == t_power(sign * (n * n - 1)) * quantum_int(n, n)


def test_empty_diagram_is_one():
    assert evaluate(SlicedDiagram(3, ())) == ONE


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("pair", [(UP, UP), (DOWN, DOWN)])
def test_skein_relation(n, pair):
    positive = operator_of_tangle(SlicedDiagram(n, (Slice("xp", 0),), pair))
    negative = operator_of_tangle(SlicedDiagram(n, (Slice("xm", 0),), pair))
    identity = SparseOperator.identity(n, pair)
    q = _q(n)
    assert positive.scale(t_power(1)) - negative.scale(t_power(-1)) == identity.scale(q - q ** -1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sink_over_source_is_the_antisymmetrizer(n):
    expected = combination_operator(lambda_terms(n, n)).scale(t_power(n * n * (n - 1)))
    assert operator_of_tangle(sink_source(n)) == expected
    assert lambda_operator(n, n) == combination_operator(lambda_terms(n, n))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_ladder_operator(n):
    for m in range(1, n + 1):
        exponent = m * (n - 1) + (n - m) * (n - m - 1) // 2
        expected = lambda_operator(m, n).scale(t_power(n * exponent) * quantum_factorial(n - m, n))
        assert operator_of_tangle(ladder(n, m)) == expected


@pytest.mark.parametrize("n", [2, 3, 4])
def test_full_closure_of_the_antisymmetrizer(n):
    total = LaurentPoly()
    for diagram, coeff in lambda_closure_terms(n):
        total = total + coeff * evaluate(diagram)
    assert total == t_power(-n * n * (n - 1) // 2) * quantum_factorial(n, n)


@pytest.mark.parametrize("n, k", [(n, k) for n in range(2, 6) for k in range(1, 4) if k < n and n ** (k + 1) <= 625])
def test_closing_the_last_strand(n, k):
    closed = combination_operator([(close_last_strand(tangle), coeff) for tangle, coeff in lambda_terms(k + 1, n)])
    assert closed == lambda_operator(k, n).scale(t_power(-n * k) * quantum_int(n - k, n))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_generators_scale_the_source_tensor(n):
    vector = t_plus(n)
    for i in range(1, n):
        action = hecke_action(HeckeElement.generator(i, n, n))
        assert action.apply(vector) == vector.scale(t_power(-n - 1, -1))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_kink_is_a_scalar(n):
    assert operator_of_tangle(kink_tangle(n, 1)).is_scalar_multiple_of_identity(n) == t_power(n * n - 1)
    assert operator_of_tangle(kink_tangle(n, -1)).is_scalar_multiple_of_identity(n) == t_power(1 - n * n)


@pytest.mark.parametrize("k, n", [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4)])
def test_hecke_action_matches_braids(k, n):
    for sigma in all_permutations(k):
        word = sigma.reduced_word()
        braid = operator_of_tangle(braid_tangle(word, k, n))
        assert hecke_action(HeckeElement.basis(sigma, n)) == braid
        g_word = HeckeElement.identity(k, n)
        for i in word:
            g_word = g_word * HeckeElement.g(i, k, n)
        assert hecke_action(g_word) == braid.scale(t_power(len(word)))


def test_hecke_action_is_multiplicative():
    rng = random.Random(17)
    for n in (2, 3):
        perms = list(all_permutations(3))
        for _ in range(4):
            left = HeckeElement(3, n, {rng.choice(perms): t_power(rng.randint(-2, 2)) for _ in range(2)})
            right = HeckeElement(3, n, {rng.choice(perms): t_power(rng.randint(-2, 2), -1) for _ in range(2)})
            assert hecke_action(left * right) == hecke_action(left) @ hecke_action(right)


def test_hecke_action_rejects_another_n():
    with pytest.raises(SignatureMismatch):
        hecke_action(HeckeElement.identity(2, 3), 4)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_source_and_sink_are_invariant(n):
    source, sink = t_plus(n), t_minus(n)
    for i in range(1, n):
        k_action = uq_generator_action("K", i, n, n)
        assert k_action.apply(source) == source
        assert sink @ k_action == sink
        for which in ("E", "F"):
            action = uq_generator_action(which, i, n, n)
            assert action.apply(source).is_zero()
            assert (sink @ action).is_zero()


def test_quantum_group_arguments():
    with pytest.raises(OutOfRange):
        uq_generator_action("E", 0, 2, 3)
    with pytest.raises(OutOfRange):
        uq_generator_action("X", 1, 2, 3)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("pair", PAIRS)
def test_reidemeister_two(n, pair):
    identity = SparseOperator.identity(n, pair)
    for first, second in (("xp", "xm"), ("xm", "xp")):
        tangle = SlicedDiagram(n, (Slice(first, 0), Slice(second, 0)), pair)
        assert operator_of_tangle(tangle) == identity


@pytest.mark.parametrize("n", [2, 3])
def test_reidemeister_three(n):
    for triple in ((a, b, c) for a in (UP, DOWN) for b in (UP, DOWN) for c in (UP, DOWN)):
        for gen in CROSSINGS:
            left = SlicedDiagram(n, (Slice(gen, 0), Slice(gen, 1), Slice(gen, 0)), triple)
            right = SlicedDiagram(n, (Slice(gen, 1), Slice(gen, 0), Slice(gen, 1)), triple)
            assert operator_of_tangle(left) == operator_of_tangle(right)


@pytest.mark.parametrize("n", [2, 3])
def test_zigzags_are_identities(n):
    strand = SparseOperator.identity(n, (UP,))
    right = SlicedDiagram(n, (Slice("cupQ", 1), Slice("capQ", 0)), (UP,))
    left = SlicedDiagram(n, (Slice("cupE", 0), Slice("capE", 1)), (UP,))
    assert operator_of_tangle(right) == strand
    assert operator_of_tangle(left) == strand


def test_disjoint_union_multiplies():
    n = 2
    assert evaluate(two_unknots(3)) == quantum_int(3, 3) ** 2
    assert evaluate(hopf(n).beside(trefoil(n))) == evaluate(hopf(n)) * evaluate(trefoil(n))


@pytest.mark.parametrize("n", [2, 3])
def test_crossing_changes_vanish_at_one(n):
    mirrored = braid_closure([-1, -1, -1], 2, n)
    assert evaluate(trefoil(n)).at_one() == n
    assert evaluate(mirrored).at_one() == n



def test_rotating_a_marked_point():
    odd = theta(3)
    assert evaluate(rotate_basepoint(odd, 1, 1)) == evaluate(odd)
    assert evaluate(rotate_basepoint(odd, 0, 2)) == evaluate(odd)
    even = theta(2)
    assert evaluate(rotate_basepoint(even, 1, 1)).mod2() == evaluate(even).mod2()


def test_open_diagrams_and_shapes_are_checked():
    tangle = braid_tangle([1], 2, 3)
    with pytest.raises(OpenDiagram):
        evaluate(tangle)
    with pytest.raises(SignatureMismatch):
        operator_of_tangle(tangle, source=(DOWN, UP))
    with pytest.raises(SignatureMismatch):
        operator_of_tangle(tangle) + SparseOperator.identity(3, (UP,))
    with pytest.raises(SignatureMismatch):
        SparseVector((UP,)) + SparseVector((DOWN,))


def test_generators_reject_wrong_windows():
    with pytest.raises(InvalidSignature):
        local_table("capE", 3, (UP, DOWN))
    with pytest.raises(InvalidSignature):
        local_table("x4", 3, (UP, UP))
    with pytest.raises(InvalidSignature):
        local_table("vin", 3, (UP, UP))
