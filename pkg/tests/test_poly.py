import random

import pytest
import sympy as sp

from algebra.combinat import quantum_int
from algebra.poly import (
    ONE,
    ZERO,
    LaurentPoly,
    RationalFunc,
    poly_arith,
    poly_divide_exact,
    poly_substitute,
    t_power,
)
from errors import DivisionByZero, NonIntegralExponent, NotDivisible


def _poly(*pairs):
    return LaurentPoly.from_pairs(pairs)


def _random_poly(rng: random.Random, *, terms: int = 4, spread: int = 5) -> LaurentPoly:
    return LaurentPoly({rng.randint(-spread, spread): rng.randint(-9, 9) for _ in range(terms)})


def test_canonical_form_drops_zero_coefficients():
    p = LaurentPoly({3: 0, 1: 2, -1: 0})
    assert p.terms == ((1, 2),)
    assert LaurentPoly({0: 0}) == ZERO
    assert not ZERO


def test_difference_of_squares():
    left = _poly((1, 1), (-1, 1))
    right = _poly((1, 1), (-1, -1))
    assert poly_arith(left, right, "mul") == _poly((2, 1), (-2, -1))


def test_additive_identity():
    p = _poly((3, 2), (-4, -7))
    assert poly_arith(p, ZERO, "add") == p
    assert p - p == ZERO


def test_quantum_product_at_n_two():
    product = quantum_int(2, 2) * quantum_int(3, 2)
    assert product == _poly((6, 1), (2, 2), (-2, 2), (-6, 1))


def test_unknown_operation_is_rejected():
    with pytest.raises(ValueError):
        poly_arith(ONE, ONE, "div")


@pytest.mark.parametrize(
    "dividend, divisor, quotient",
    [
        (_poly((2, 1), (-2, -1)), _poly((1, 1), (-1, -1)), _poly((1, 1), (-1, 1))),
        (_poly((5, 3), (0, 1)), ONE, _poly((5, 3), (0, 1))),
        (_poly((4, 1), (0, 2), (-4, 1)), _poly((2, 1), (-2, 1)), _poly((2, 1), (-2, 1))),
    ],
)
def test_exact_division(dividend, divisor, quotient):
    assert poly_divide_exact(dividend, divisor) == quotient


def test_division_with_remainder_raises():
    with pytest.raises(NotDivisible) as info:
        _poly((2, 1), (0, 1)).divide_exact(_poly((1, 1), (0, 1)))
    assert info.value.divisor == _poly((1, 1), (0, 1))


def test_division_by_zero_raises():
    with pytest.raises(DivisionByZero):
        ONE.divide_exact(ZERO)


@pytest.mark.parametrize(
    "p, kwargs, expected",
    [
        (_poly((2, 1), (0, 1)), {"negate": True}, _poly((2, 1), (0, 1))),
        (_poly((1, 1), (0, 1)), {"negate": True}, _poly((1, -1), (0, 1))),
        (_poly((3, 1), (-3, 1)), {"power": 2}, _poly((6, 1), (-6, 1))),
        (_poly((2, 1), (-1, 3)), {"power": -1}, _poly((-2, 1), (1, 3))),
    ],
)
def test_substitution(p, kwargs, expected):
    assert poly_substitute(p, **kwargs) == expected


def test_render_is_ascending():
    assert _poly((-2, -1), (0, 3), (4, 2)).render() == "-t^-2 + 3 + 2*t^4"
    assert _poly((1, 1), (-1, -1)).render("q") == "-q^-1 + q"
    assert ZERO.render() == "0"


def test_rescaled():
    assert _poly((4, 1), (-2, 1)).rescaled(2) == _poly((2, 1), (-1, 1))
    assert _poly((4, 1), (-2, 1)).rescaled(3) is None


def test_negative_powers_of_units_only():
    assert t_power(2, -1) ** -1 == t_power(-2, -1)
    with pytest.raises(NotDivisible):
        _poly((1, 1), (0, 1)) ** -1


def test_coefficient_views():
    p = _poly((1, 3), (0, 2), (-1, -4))
    assert p.at_one() == 1
    assert p.mod2() == t_power(1)
    assert not p.is_nonnegative()
    assert (p.valuation(), p.degree()) == (-1, 1)


def test_sympy_conversion():
    A = sp.Symbol("A")
    assert LaurentPoly.from_sympy(A**2 + 2 / A + 3, A) == _poly((2, 1), (-1, 2), (0, 3))
    with pytest.raises(NonIntegralExponent):
        LaurentPoly.from_sympy(sp.sqrt(A), A)


def test_rational_functions_reduce_exactly():
    ratio = RationalFunc(_poly((2, 1), (-2, -1))) / _poly((1, 1), (-1, -1))
    assert ratio.to_poly() == _poly((1, 1), (-1, 1))
    assert ratio + 1 == _poly((1, 1), (0, 1), (-1, 1))
    with pytest.raises(NotDivisible):
        RationalFunc(ONE, _poly((1, 1), (0, 1))).to_poly()
    with pytest.raises(DivisionByZero):
        RationalFunc(ONE, ZERO)


def test_ring_properties_on_random_triples():
    rng = random.Random(11)
    for _ in range(50):
        a, b, c = (_random_poly(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if b:
            assert (a * b).divide_exact(b) == a
        for kwargs in ({"negate": True}, {"power": 3}, {"power": -2}):
            assert (a * b).substitute(**kwargs) == a.substitute(**kwargs) * b.substitute(**kwargs)
