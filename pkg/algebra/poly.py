"""Exact Laurent polynomials in one variable, plus the quotients we need.

Every value snweb produces is an integer Laurent polynomial in the internal
variable ``t``. For an n-web the quantum parameter is ``q = t^n`` so all the
fractional powers of q (q^(1/n), q^((n-1)/n), ...) become integer powers of t.
Other variables (q itself, A = q^(1/2), the MOY variable u = q^(1/4)) are just
exponent rescalings applied at render time.

Coefficients are Python ints, so magnitudes are unbounded and nothing is ever
rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple

import sympy as sp

from errors import DivisionByZero, NonIntegralExponent, NotDivisible


class LaurentPoly:
    """Immutable element of Z[t, t^-1] stored as exponent -> coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None) -> None:
        # Canonical form: no zero coefficients, so equal values share term maps.
        self._terms: Dict[int, int] = {int(exp): int(coeff) for exp, coeff in (terms or {}).items() if coeff}
        self._hash: int | None = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        """Return ``coeff * t^exponent``."""
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        """Return the constant polynomial ``value``."""
        return cls({0: value})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]]) -> "LaurentPoly":
        """Rebuild a polynomial from ``(exponent, coeff)`` pairs, summing repeats."""
        terms: Dict[int, int] = {}
        for exp, coeff in pairs:
            terms[exp] = terms.get(exp, 0) + coeff
        return cls(terms)

    @classmethod
    def from_sympy(cls, expr: sp.Expr, symbol: sp.Symbol) -> "LaurentPoly":
        """Convert an expanded sympy Laurent polynomial in ``symbol``."""
        terms: Dict[int, int] = {}
        for term, coeff in sp.expand(expr).as_coefficients_dict().items():
            if term.free_symbols - {symbol}:
                raise NonIntegralExponent("expression has foreign symbols", term=str(term))
            exponent = term.as_powers_dict().get(symbol, 0)
            if not (sp.sympify(exponent).is_integer and sp.sympify(coeff).is_integer):
                raise NonIntegralExponent("expression is not an integer Laurent polynomial", term=str(term))
            terms[int(exponent)] = terms.get(int(exponent), 0) + int(coeff)
        return cls(terms)

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> Tuple[Tuple[int, int], ...]:
        """Terms as ``(exponent, coeff)`` pairs in ascending exponent order."""
        return tuple(sorted(self._terms.items()))

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no valuation")
        return min(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_nonnegative(self) -> bool:
        """True when every coefficient is >= 0."""
        return all(coeff >= 0 for coeff in self._terms.values())

    def at_one(self) -> int:
        """Value at t = 1 (sum of coefficients)."""
        return sum(self._terms.values())

    def mod2(self) -> "LaurentPoly":
        """Coefficient-wise reduction mod 2, as a 0/1 polynomial."""
        return LaurentPoly({exp: coeff % 2 for exp, coeff in self._terms.items()})

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for exp, coeff in other._terms.items():
            terms[exp] = terms.get(exp, 0) + coeff
        return LaurentPoly(terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({exp: -coeff for exp, coeff in self._terms.items()})

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: Dict[int, int] = {}
        for exp_a, coeff_a in self._terms.items():
            for exp_b, coeff_b in other._terms.items():
                exp = exp_a + exp_b
                terms[exp] = terms.get(exp, 0) + coeff_a * coeff_b
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "LaurentPoly":
        if power < 0:
            # Only the units of Z[t, t^-1] (signed monomials) have inverses.
            if not self.is_monomial() or abs(self._terms[self.degree()]) != 1:
                raise NotDivisible("only signed monomials are invertible", dividend=1, divisor=self)
            (exp, coeff), = self._terms.items()
            return LaurentPoly.monomial(exp * power, coeff ** (-power))
        result = ONE
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def shift(self, amount: int) -> "LaurentPoly":
        """Multiply by ``t^amount``."""
        return LaurentPoly({exp + amount: coeff for exp, coeff in self._terms.items()})

    def divide_exact(self, divisor: "LaurentPoly | int") -> "LaurentPoly":
        """Return ``c`` with ``c * divisor == self`` or raise ``NotDivisible``."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        if self.is_zero():
            return ZERO
        lead_exp = divisor.degree()
        lead = divisor._terms[lead_exp]
        floor = self.valuation() - divisor.valuation()
        remainder = dict(self._terms)
        quotient: Dict[int, int] = {}
        while remainder:
            top = max(remainder)
            shift = top - lead_exp
            coeff, rest = divmod(remainder[top], lead)
            if rest or shift < floor:
                raise NotDivisible("polynomial division leaves a remainder", dividend=self, divisor=divisor)
            quotient[shift] = coeff
            for exp, value in divisor._terms.items():
                key = exp + shift
                updated = remainder.get(key, 0) - coeff * value
                if updated:
                    remainder[key] = updated
                else:
                    remainder.pop(key, None)
        return LaurentPoly(quotient)

    def substitute(self, *, power: int = 1, negate: bool = False) -> "LaurentPoly":
        """Apply ``t -> -t^power`` when ``negate`` else ``t -> t^power``."""
        terms: Dict[int, int] = {}
        for exp, coeff in self._terms.items():
            if negate and exp % 2:
                coeff = -coeff
            terms[exp * power] = terms.get(exp * power, 0) + coeff
        return LaurentPoly(terms)

    def rescaled(self, step: int) -> "LaurentPoly | None":
        """Divide every exponent by ``step``; None if some exponent is not a multiple."""
        if step <= 0:
            raise ValueError("step must be positive")
        if any(exp % step for exp in self._terms):
            return None
        return LaurentPoly({exp // step: coeff for exp, coeff in self._terms.items()})

    # -- comparison and output ------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def render(self, var: str = "t") -> str:
        """Canonical text, ascending exponents, e.g. ``-t^-2 + 3 + 2*t^4``."""
        if not self._terms:
            return "0"
        pieces = []
        for index, (exp, coeff) in enumerate(self.terms):
            magnitude = abs(coeff)
            if exp == 0:
                body = str(magnitude)
            else:
                power = var if exp == 1 else f"{var}^{exp}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            if index == 0:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(pieces)

    def to_sympy(self, symbol: sp.Symbol) -> sp.Expr:
        return sp.Add(*[coeff * symbol**exp for exp, coeff in self.terms])

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)


def t_power(exponent: int, coeff: int = 1) -> LaurentPoly:
    """Shorthand for ``coeff * t^exponent``."""
    return LaurentPoly.monomial(exponent, coeff)


def poly_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Ring arithmetic by operation name (``add``, ``sub`` or ``mul``)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_divide_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a.divide_exact(b)


def poly_substitute(p: LaurentPoly, *, power: int = 1, negate: bool = False) -> LaurentPoly:
    return p.substitute(power=power, negate=negate)


@dataclass(frozen=True, eq=False)
class RationalFunc:
    """A quotient of Laurent polynomials, kept unreduced until ``to_poly``."""

    num: LaurentPoly
    den: LaurentPoly = ONE

    def __post_init__(self) -> None:
        if self.den.is_zero():
            raise DivisionByZero("rational function with zero denominator")

    @classmethod
    def of(cls, value: "RationalFunc | LaurentPoly | int") -> "RationalFunc":
        if isinstance(value, RationalFunc):
            return value
        if isinstance(value, int):
            value = LaurentPoly.constant(value)
        return cls(value)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _aligned(self, other: "RationalFunc") -> Tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
        """Numerators over a shared denominator, reusing one if it already divides the other."""
        if self.den == other.den:
            return self.num, other.num, self.den
        try:
            factor = other.den.divide_exact(self.den)
            return self.num * factor, other.num, other.den
        except NotDivisible:
            pass
        try:
            factor = self.den.divide_exact(other.den)
            return self.num, other.num * factor, self.den
        except NotDivisible:
            pass
        return self.num * other.den, other.num * self.den, self.den * other.den

    def __add__(self, other: "RationalFunc | LaurentPoly | int") -> "RationalFunc":
        other = RationalFunc.of(other)
        left, right, den = self._aligned(other)
        return RationalFunc(left + right, den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunc":
        return RationalFunc(-self.num, self.den)

    def __sub__(self, other: "RationalFunc | LaurentPoly | int") -> "RationalFunc":
        return self + (-RationalFunc.of(other))

    def __mul__(self, other: "RationalFunc | LaurentPoly | int") -> "RationalFunc":
        other = RationalFunc.of(other)
        return RationalFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "RationalFunc | LaurentPoly | int") -> "RationalFunc":
        other = RationalFunc.of(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFunc(self.num * other.den, self.den * other.num)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (LaurentPoly, int)):
            other = RationalFunc.of(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def to_poly(self) -> LaurentPoly:
        """Reduce to a Laurent polynomial, raising ``NotDivisible`` if impossible."""
        return self.num.divide_exact(self.den)

    def __repr__(self) -> str:
        return f"RationalFunc(({self.num.render()}) / ({self.den.render()}))"
