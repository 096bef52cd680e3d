"""The Hecke algebra H_k with the normalisation tied to q = t^n.

Basis elements h_sigma multiply by the two rules

    h_sigma h_tau = h_{sigma tau}                when lengths add,
    (h_i - t^(n-1)) (h_i + t^(-n-1)) = 0          for h_i = h_{(i, i+1)},

so right-multiplying h_sigma by h_i either lengthens sigma or expands as
(t^(n-1) - t^(-n-1)) h_sigma + t^-2 h_{sigma s_i}. The generators
g_i = t h_i satisfy the usual (g_i - q)(g_i + q^-1) = 0.
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Mapping, Tuple

from algebra.combinat import Permutation, all_permutations
from algebra.poly import ONE, ZERO, LaurentPoly, t_power
from errors import MismatchedAlgebra, OutOfRange


class HeckeElement:
    """A LaurentPoly-linear combination of basis vectors h_sigma in H_k."""

    __slots__ = ("k", "n", "_coeffs")

    def __init__(self, k: int, n: int, coeffs: Mapping[Permutation, LaurentPoly] | None = None) -> None:
        self.k = k
        self.n = n
        cleaned: Dict[Permutation, LaurentPoly] = {}
        for sigma, coeff in (coeffs or {}).items():
            if sigma.size != k:
                raise MismatchedAlgebra("basis permutation has the wrong size", expected=k, got=sigma.size)
            if coeff:
                cleaned[sigma] = coeff
        self._coeffs = cleaned

    @classmethod
    def basis(cls, sigma: Permutation, n: int) -> "HeckeElement":
        """The basis vector h_sigma."""
        return cls(sigma.size, n, {sigma: ONE})

    @classmethod
    def identity(cls, k: int, n: int) -> "HeckeElement":
        return cls.basis(Permutation.identity(k), n)

    @classmethod
    def generator(cls, i: int, k: int, n: int) -> "HeckeElement":
        """h_{(i, i+1)}."""
        if not 1 <= i < k:
            raise OutOfRange("generator index out of range", index=i, k=k)
        return cls.basis(Permutation.transposition(k, i, i + 1), n)

    @classmethod
    def g(cls, i: int, k: int, n: int) -> "HeckeElement":
        """g_i = t * h_{(i, i+1)}."""
        return cls.generator(i, k, n).scale(t_power(1))

    @property
    def coeffs(self) -> Dict[Permutation, LaurentPoly]:
        return dict(self._coeffs)

    def items(self) -> Iterator[Tuple[Permutation, LaurentPoly]]:
        return iter(sorted(self._coeffs.items(), key=lambda item: item[0].images))

    def coefficient(self, sigma: Permutation) -> LaurentPoly:
        return self._coeffs.get(sigma, ZERO)

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other: "HeckeElement") -> None:
        if (self.k, self.n) != (other.k, other.n):
            raise MismatchedAlgebra(
                "elements live in different Hecke algebras",
                left=(self.k, self.n),
                right=(other.k, other.n),
            )

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        coeffs = dict(self._coeffs)
        for sigma, coeff in other._coeffs.items():
            coeffs[sigma] = coeffs.get(sigma, ZERO) + coeff
        return HeckeElement(self.k, self.n, coeffs)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.k, self.n, {sigma: -coeff for sigma, coeff in self._coeffs.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def scale(self, factor: LaurentPoly | int) -> "HeckeElement":
        return HeckeElement(self.k, self.n, {sigma: coeff * factor for sigma, coeff in self._coeffs.items()})

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return hecke_mul(self, other)

    def times_generator(self, i: int) -> "HeckeElement":
        """Right product with h_{(i, i+1)}."""
        quadratic = t_power(self.n - 1) - t_power(-self.n - 1)
        shrink = t_power(-2)
        coeffs: Dict[Permutation, LaurentPoly] = {}

        def bump(sigma: Permutation, value: LaurentPoly) -> None:
            coeffs[sigma] = coeffs.get(sigma, ZERO) + value

        for sigma, coeff in self._coeffs.items():
            moved = sigma.times_generator(i)
            if sigma(i) < sigma(i + 1):
                bump(moved, coeff)
            else:
                bump(sigma, coeff * quadratic)
                bump(moved, coeff * shrink)
        return HeckeElement(self.k, self.n, coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return (self.k, self.n) == (other.k, other.n) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.k, self.n, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        parts = [f"({coeff.render()})*h{sigma}" for sigma, coeff in self.items()]
        return f"HeckeElement(k={self.k}, n={self.n}, " + (" + ".join(parts) or "0") + ")"


def hecke_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Bilinear product, right-recursing on the reduced words of b's support."""
    a._check(b)
    result = HeckeElement(a.k, a.n)
    for tau, coeff in b._coeffs.items():
        partial = a
        for i in tau.reduced_word():
            partial = partial.times_generator(i)
        result = result + partial.scale(coeff)
    return result


def e_element(k: int, n: int, sign: str) -> HeckeElement:
    """e_+ = sum t^((n+1) l) h_sigma, e_- = sum (-t^(1-n))^l h_sigma."""
    if k < 1:
        raise OutOfRange("e_element needs k >= 1", k=k)
    if sign == "+":
        step = t_power(n + 1)
    elif sign == "-":
        step = t_power(1 - n, -1)
    else:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return HeckeElement(k, n, {sigma: step ** sigma.length() for sigma in all_permutations(k)})


def eigenvalue(n: int, sign: str) -> LaurentPoly:
    """The scalar by which every h_i acts on e_sign: t^(n-1) or -t^(-n-1)."""
    return t_power(n - 1) if sign == "+" else t_power(-n - 1, -1)


def idempotent_factor(k: int, n: int, sign: str) -> LaurentPoly:
    """P_+/- = sum over S_k of q^(+/-2 l(sigma)), the factor in e^2 = P e."""
    direction = 1 if sign == "+" else -1
    total = ZERO
    for sigma in all_permutations(k):
        total = total + t_power(direction * 2 * n * sigma.length())
    return total


def lambda_skein(k: int, n: int) -> List[Tuple[List[int], LaurentPoly]]:
    """Terms (reduced word of sigma, (-q^((1-n)/n))^l(sigma)) of the antisymmetrizer."""
    if k < 1:
        raise OutOfRange("lambda_skein needs k >= 1", k=k)
    step = t_power(1 - n, -1)
    return [(sigma.reduced_word(), step ** sigma.length()) for sigma in all_permutations(k)]
