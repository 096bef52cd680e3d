"""Permutations and quantum integers.

Permutations are 1-indexed tuples of images, ``images[i - 1] == sigma(i)``,
and compose as functions: ``(sigma * tau)(i) == sigma(tau(i))``. The
elementary transposition ``s_i`` swaps i and i + 1, so right-multiplying by
``s_i`` swaps the entries in positions i and i + 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, List, Tuple

from algebra.poly import ONE, LaurentPoly
from errors import NegativeArgument, OutOfRange


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1, ..., k} given by its images."""

    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise OutOfRange("images must be a bijection of 1..k", images=self.images)

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def transposition(cls, k: int, i: int, j: int) -> "Permutation":
        """The permutation of {1..k} exchanging i and j."""
        images = list(range(1, k + 1))
        images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
        return cls(tuple(images))

    @classmethod
    def from_word(cls, k: int, word: Iterable[int]) -> "Permutation":
        """Product ``s_{w1} * s_{w2} * ...`` of elementary transpositions."""
        images = list(range(1, k + 1))
        for i in word:
            if not 1 <= i < k:
                raise OutOfRange("generator index out of range", index=i, k=k)
            images[i - 1], images[i] = images[i], images[i - 1]
        return cls(tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.size != self.size:
            raise OutOfRange("permutations of different sizes", left=self.size, right=other.size)
        return Permutation(tuple(self.images[other(i) - 1] for i in range(1, self.size + 1)))

    def inverse(self) -> "Permutation":
        images = [0] * self.size
        for i, image in enumerate(self.images, start=1):
            images[image - 1] = i
        return Permutation(tuple(images))

    def times_generator(self, i: int) -> "Permutation":
        """Right product ``self * s_i``."""
        images = list(self.images)
        images[i - 1], images[i] = images[i], images[i - 1]
        return Permutation(tuple(images))

    def permute_positions(self, tau: "Permutation") -> "Permutation":
        """Move the entry in position i to position tau(i), i.e. ``self * tau^-1``."""
        return self * tau.inverse()

    def length(self) -> int:
        return length(self)

    def reduced_word(self) -> List[int]:
        return reduced_word(self)

    def __str__(self) -> str:
        return "(" + ",".join(str(i) for i in self.images) + ")"


def length(sigma: Permutation) -> int:
    """Number of inversions #{(i, j): i < j, sigma(i) > sigma(j)}."""
    images = sigma.images
    return sum(1 for i, j in itertools.combinations(range(len(images)), 2) if images[i] > images[j])


def reduced_word(sigma: Permutation) -> List[int]:
    """Canonical bubble-sort word [i1, ..., il] with sigma = s_i1 * ... * s_il."""
    images = list(sigma.images)
    swaps: List[int] = []
    # Bubble the largest out-of-place value to the right, recording each swap;
    # sorting sigma this way writes sigma * s_j1 * ... * s_jl = id.
    for value in range(len(images), 0, -1):
        position = images.index(value)
        while position < value - 1:
            images[position], images[position + 1] = images[position + 1], images[position]
            swaps.append(position + 1)
            position += 1
    return list(reversed(swaps))


def all_permutations(k: int) -> Iterator[Permutation]:
    """Every permutation of {1..k} in lexicographic order."""
    for images in itertools.permutations(range(1, k + 1)):
        yield Permutation(images)


@lru_cache(maxsize=None)
def quantum_int(m: int, n: int = 1) -> LaurentPoly:
    """[m] = (q^m - q^-m)/(q - q^-1) written in t with q = t^n (n=1 gives q itself)."""
    if m < 0:
        raise NegativeArgument("quantum integer of a negative number", m=m)
    return LaurentPoly({n * (m - 1 - 2 * j): 1 for j in range(m)})


@lru_cache(maxsize=None)
def quantum_factorial(m: int, n: int = 1) -> LaurentPoly:
    """[m]! = [1][2]...[m] in t with q = t^n; [0]! = 1."""
    if m < 0:
        raise NegativeArgument("quantum factorial of a negative number", m=m)
    result = ONE
    for j in range(1, m + 1):
        result = result * quantum_int(j, n)
    return result


def pi_count(s1: Iterable[int], s2: Iterable[int]) -> int:
    """Number of pairs (a, b) in s1 x s2 with a > b."""
    second = sorted(s2)
    return sum(1 for a in s1 for b in second if a > b)


def tau(n: int, k: int) -> Permutation:
    """Block rotation sending 1..k to n-k+1..n and k+1..n to 1..n-k."""
    if not 0 <= k <= n:
        raise OutOfRange("tau needs 0 <= k <= n", n=n, k=k)
    return Permutation(tuple(n - k + i if i <= k else i - k for i in range(1, n + 1)))
