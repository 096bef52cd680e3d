"""Slice-by-slice contraction of the defining-representation tensors.

Every generator is a sparse local table ``input window -> [(output window,
coeff)]`` over basis labels 1..n, built once per (generator, n, signature).
A diagram is evaluated by pushing a sparse state through its slices from the
bottom up; only the strands a slice touches are rewritten.

Conventions (q = t^n):

    xp on (u, u)   R^ = t^-1 R with R(e_i x e_j) = e_j x e_i            (i > j)
                                                 q e_i x e_i            (i = j)
                                                 e_j x e_i + (q - q^-1) e_i x e_j   (i < j)
    xm on (u, u)   the inverse of R^
    capE  e^i x e_j -> delta_ij          capQ  e_i x e^j -> q^(2i-n-1) delta_ij
    cupE  1 -> sum e_i x e^i             cupQ  1 -> sum q^(n+1-2i) e^i x e_i
    vout  1 -> T+ = sum (-q)^l(sigma) e_sigma
    vin   e_sigma -> (-q)^l(sigma), zero off permutations

Crossings on other orientation pairs are evaluated through their bent
templates in ``webs.library``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from algebra.combinat import Permutation, length
from algebra.hecke import HeckeElement, e_element
from algebra.poly import ONE, ZERO, LaurentPoly, t_power
from webs.diagram import CAPS, CROSSINGS, CUPS, SINGULAR_VERTEX, UP, Signature, Slice, SlicedDiagram, arity
from webs.library import braid_tangle, mixed_crossing_slices
from errors import InvalidSignature, OpenDiagram, OutOfRange, SignatureMismatch
from utils import logger


Index = Tuple[int, ...]
LocalTable = Dict[Index, Tuple[Tuple[Index, LaurentPoly], ...]]


class SparseVector:
    """Vector in the tensor space of a signature, keyed by basis index."""

    __slots__ = ("signature", "entries")

    def __init__(self, signature: Signature, entries: Mapping[Index, LaurentPoly] | None = None) -> None:
        self.signature = tuple(signature)
        self.entries: Dict[Index, LaurentPoly] = {index: value for index, value in (entries or {}).items() if value}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.signature == other.signature and self.entries == other.entries

    def __add__(self, other: "SparseVector") -> "SparseVector":
        if other.signature != self.signature:
            raise SignatureMismatch("vectors live on different signatures")
        entries = dict(self.entries)
        for index, value in other.entries.items():
            entries[index] = entries.get(index, ZERO) + value
        return SparseVector(self.signature, entries)

    def scale(self, factor: LaurentPoly | int) -> "SparseVector":
        return SparseVector(self.signature, {index: value * factor for index, value in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def __repr__(self) -> str:
        return f"SparseVector({''.join(self.signature)}, {len(self.entries)} entries)"


class SparseOperator:
    """Linear map between tensor spaces, stored as (input, output) -> coeff."""

    __slots__ = ("source", "target", "entries")

    def __init__(
        self,
        source: Signature,
        target: Signature,
        entries: Mapping[Tuple[Index, Index], LaurentPoly] | None = None,
    ) -> None:
        self.source = tuple(source)
        self.target = tuple(target)
        self.entries: Dict[Tuple[Index, Index], LaurentPoly] = {
            key: value for key, value in (entries or {}).items() if value
        }

    @classmethod
    def identity(cls, n: int, signature: Signature) -> "SparseOperator":
        return cls(signature, signature, {(index, index): ONE for index in basis(n, len(signature))})

    def _check_shape(self, other: "SparseOperator") -> None:
        if (self.source, self.target) != (other.source, other.target):
            raise SignatureMismatch(
                "operators have different shapes",
                left=("".join(self.source), "".join(self.target)),
                right=("".join(other.source), "".join(other.target)),
            )

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._check_shape(other)
        entries = dict(self.entries)
        for key, value in other.entries.items():
            entries[key] = entries.get(key, ZERO) + value
        return SparseOperator(self.source, self.target, entries)

    def __neg__(self) -> "SparseOperator":
        return self.scale(-1)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return self + (-other)

    def scale(self, factor: LaurentPoly | int) -> "SparseOperator":
        return SparseOperator(self.source, self.target, {key: value * factor for key, value in self.entries.items()})

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        """Composition ``self o other`` (other applied first)."""
        if other.target != self.source:
            raise SignatureMismatch("operators do not compose", inner="".join(other.target), outer="".join(self.source))
        by_input: Dict[Index, List[Tuple[Index, LaurentPoly]]] = {}
        for (middle, output), value in self.entries.items():
            by_input.setdefault(middle, []).append((output, value))
        entries: Dict[Tuple[Index, Index], LaurentPoly] = {}
        for (source, middle), value in other.entries.items():
            for output, coeff in by_input.get(middle, ()):
                key = (source, output)
                entries[key] = entries.get(key, ZERO) + value * coeff
        return SparseOperator(other.source, self.target, entries)

    def apply(self, vector: SparseVector) -> SparseVector:
        if vector.signature != self.source:
            raise SignatureMismatch("vector does not match operator source")
        entries: Dict[Index, LaurentPoly] = {}
        for (source, output), coeff in self.entries.items():
            value = vector.entries.get(source)
            if value is not None:
                entries[output] = entries.get(output, ZERO) + value * coeff
        return SparseVector(self.target, entries)

    def as_vector(self) -> SparseVector:
        """View an operator out of the empty signature as a vector."""
        if self.source:
            raise SignatureMismatch("only operators from the empty signature are vectors")
        return SparseVector(self.target, {output: value for (_, output), value in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def is_scalar_multiple_of_identity(self, n: int) -> LaurentPoly | None:
        """The scalar c if this operator equals c * Id, else None."""
        if self.source != self.target:
            return None
        indices = list(basis(n, len(self.source)))
        scalar = self.entries.get((indices[0], indices[0]), ZERO)
        if self == SparseOperator.identity(n, self.source).scale(scalar):
            return scalar
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseOperator):
            return NotImplemented
        return (self.source, self.target) == (other.source, other.target) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"SparseOperator({''.join(self.source)} -> {''.join(self.target)}, {len(self.entries)} entries)"


def basis(n: int, width: int) -> Iterable[Index]:
    """All basis indices of a tensor space with ``width`` factors."""
    return itertools.product(range(1, n + 1), repeat=width)


# -- generator tables -------------------------------------------------------------


def _r_matrix_table(n: int) -> LocalTable:
    table: Dict[Index, Tuple[Tuple[Index, LaurentPoly], ...]] = {}
    for i, j in basis(n, 2):
        if i > j:
            table[(i, j)] = (((j, i), t_power(-1)),)
        elif i == j:
            table[(i, j)] = (((i, i), t_power(n - 1)),)
        else:
            table[(i, j)] = (((j, i), t_power(-1)), ((i, j), t_power(n - 1) - t_power(-n - 1)))
    return table


def _r_matrix_inverse_table(n: int) -> LocalTable:
    table: Dict[Index, Tuple[Tuple[Index, LaurentPoly], ...]] = {}
    for i, j in basis(n, 2):
        if i < j:
            table[(i, j)] = (((j, i), t_power(1)),)
        elif i == j:
            table[(i, j)] = (((i, i), t_power(1 - n)),)
        else:
            table[(i, j)] = (((j, i), t_power(1)), ((i, j), t_power(1 - n) - t_power(n + 1)))
    return table


def _permutation_weights(n: int) -> Dict[Index, LaurentPoly]:
    """(-q)^l(sigma) for every sigma in S_n, keyed by its images."""
    return {
        images: t_power(n * length(Permutation(images)), (-1) ** length(Permutation(images)))
        for images in itertools.permutations(range(1, n + 1))
    }


def _table_from_operator(operator: SparseOperator) -> LocalTable:
    grouped: Dict[Index, List[Tuple[Index, LaurentPoly]]] = {}
    for (source, output), value in operator.entries.items():
        grouped.setdefault(source, []).append((output, value))
    return {source: tuple(outputs) for source, outputs in grouped.items()}


@lru_cache(maxsize=None)
def local_table(gen: str, n: int, window: Signature) -> LocalTable:
    """Memoised local tensor of a generator on the strands it consumes."""
    if gen == SINGULAR_VERTEX:
        raise InvalidSignature("x4 has no tensor; expand singular vertices first")
    if gen in CROSSINGS:
        if len(window) != 2:
            raise InvalidSignature("crossings act on two strands", gen=gen)
        if window == (UP, UP):
            return _r_matrix_table(n) if gen == "xp" else _r_matrix_inverse_table(n)
        template = SlicedDiagram(n, tuple(mixed_crossing_slices(gen, window)), window)
        return _table_from_operator(operator_of_tangle(template))
    if gen in CAPS:
        if window != CAPS[gen]:
            raise InvalidSignature(f"{gen} cannot consume {''.join(window)}")
        if gen == "capE":
            return {(i, i): (((), ONE),) for i in range(1, n + 1)}
        return {(i, i): (((), t_power(n * (2 * i - n - 1))),) for i in range(1, n + 1)}
    if gen in CUPS:
        if window:
            raise InvalidSignature(f"{gen} consumes nothing")
        if gen == "cupE":
            return {(): tuple(((i, i), ONE) for i in range(1, n + 1))}
        return {(): tuple(((i, i), t_power(n * (n + 1 - 2 * i))) for i in range(1, n + 1))}
    if gen == "vout":
        if window:
            raise InvalidSignature("vout consumes nothing")
        return {(): tuple(_permutation_weights(n).items())}
    if gen == "vin":
        if window != (UP,) * n:
            raise InvalidSignature(f"vin consumes {n} upward strands")
        return {images: (((), weight),) for images, weight in _permutation_weights(n).items()}
    raise InvalidSignature(f"unknown generator {gen!r}")


def generator_tensor(gen: str, n: int, signature: Signature) -> SparseOperator:
    """The local tensor of ``gen`` as an operator on its consumed strands."""
    table = local_table(gen, n, tuple(signature))
    target: Signature
    if gen in CROSSINGS:
        target = (signature[1], signature[0])
    elif gen in CUPS:
        target = CUPS[gen]
    elif gen == "vout":
        target = (UP,) * n
    else:
        target = ()
    entries = {(source, output): value for source, outputs in table.items() for output, value in outputs}
    return SparseOperator(tuple(signature), target, entries)


# -- contraction --------------------------------------------------------------


State = Dict[Tuple[Index, Index], LaurentPoly]


def _push(state: State, table: LocalTable, at: int, consumes: int) -> State:
    pushed: State = {}
    for (source, current), value in state.items():
        outputs = table.get(current[at : at + consumes])
        if not outputs:
            continue
        head = current[:at]
        tail = current[at + consumes :]
        for produced, coeff in outputs:
            key = (source, head + produced + tail)
            pushed[key] = pushed.get(key, ZERO) + value * coeff
    return {key: value for key, value in pushed.items() if value}


def _contract(diagram: SlicedDiagram, state: State) -> State:
    peak = len(state)
    for level, piece in enumerate(diagram.slices):
        consumes, _ = arity(piece.gen, diagram.n)
        window = diagram.signatures[level][piece.at : piece.at + consumes]
        state = _push(state, local_table(piece.gen, diagram.n, window), piece.at, consumes)
        peak = max(peak, len(state))
    logger.debug("Contraction finished", n=diagram.n, slices=len(diagram.slices), peak_state=peak)
    return state


def evaluate(diagram: SlicedDiagram) -> LaurentPoly:
    """The bracket of a closed diagram as a Laurent polynomial in t."""
    if not diagram.is_closed:
        raise OpenDiagram(
            "evaluate needs a closed diagram",
            bottom="".join(diagram.bottom),
            top="".join(diagram.top),
        )
    state = _contract(diagram, {((), ()): ONE})
    return state.get(((), ()), ZERO)


def operator_of_tangle(
    diagram: SlicedDiagram,
    *,
    source: Signature | None = None,
    target: Signature | None = None,
) -> SparseOperator:
    """Composite operator of an open diagram from its bottom to its top."""
    if source is not None and tuple(source) != diagram.bottom:
        raise SignatureMismatch("declared input signature differs", declared="".join(source), actual="".join(diagram.bottom))
    if target is not None and tuple(target) != diagram.top:
        raise SignatureMismatch("declared output signature differs", declared="".join(target), actual="".join(diagram.top))
    start: State = {(index, index): ONE for index in basis(diagram.n, len(diagram.bottom))}
    return SparseOperator(diagram.bottom, diagram.top, _contract(diagram, start))


def combination_operator(terms: Sequence[Tuple[SlicedDiagram, LaurentPoly]]) -> SparseOperator:
    """Operator of a LaurentPoly-linear combination of tangles with one shape."""
    if not terms:
        raise SignatureMismatch("empty combination has no shape")
    first, _ = terms[0]
    total = SparseOperator(first.bottom, first.top)
    for tangle, coeff in terms:
        total = total + operator_of_tangle(tangle).scale(coeff)
    return total


# -- Hecke algebra and quantum group actions ---------------------------------------


@lru_cache(maxsize=None)
def _braid_operator(word: Tuple[int, ...], k: int, n: int) -> SparseOperator:
    return operator_of_tangle(braid_tangle(word, k, n))


def hecke_action(x: HeckeElement, n: int | None = None) -> SparseOperator:
    """Operator of x on V^(x k), sending h_(i,i+1) to R^ on strands i, i+1."""
    n = x.n if n is None else n
    if n != x.n:
        raise SignatureMismatch("Hecke element is normalised for another n", element_n=x.n, n=n)
    total = SparseOperator((UP,) * x.k, (UP,) * x.k)
    for sigma, coeff in x.items():
        total = total + _braid_operator(tuple(sigma.reduced_word()), x.k, n).scale(coeff)
    return total


def lambda_operator(k: int, n: int) -> SparseOperator:
    """The antisymmetrizer Lambda_k as an operator (action of e_-)."""
    return hecke_action(e_element(k, n, "-"), n)


def t_plus(n: int) -> SparseVector:
    return operator_of_tangle(SlicedDiagram(n, (Slice("vout", 0),))).as_vector()


def t_minus(n: int) -> SparseOperator:
    return operator_of_tangle(SlicedDiagram(n, (Slice("vin", 0),), (UP,) * n))


def _single_factor(which: str, i: int, n: int, j: int) -> List[Tuple[int, LaurentPoly]]:
    """Action of K_i, K_i^-1, E_i or F_i on the basis vector e_j of V."""
    if which in ("K", "Kinv"):
        sign = 1 if which == "K" else -1
        if j == i:
            return [(j, t_power(-sign * n))]
        if j == i + 1:
            return [(j, t_power(sign * n))]
        return [(j, ONE)]
    if which == "E":
        return [(i + 1, ONE)] if j == i else []
    if which == "F":
        return [(i, ONE)] if j == i + 1 else []
    raise OutOfRange(f"unknown quantum group generator {which!r}")


def uq_generator_action(which: str, i: int, k: int, n: int) -> SparseOperator:
    """Matrix of the iterated coproduct of K_i, E_i or F_i on V^(x k).

    K is group-like; E acts as sum 1 x .. x E x K x .. x K and F as
    sum K^-1 x .. x K^-1 x F x 1 x .. x 1.
    """
    if not 1 <= i <= n - 1:
        raise OutOfRange("quantum group generator index must lie in 1..n-1", i=i, n=n)
    if which not in ("K", "E", "F"):
        raise OutOfRange(f"unknown quantum group generator {which!r}")

    def factors(slot: int) -> List[str]:
        if which == "K":
            return ["K"] * k
        if which == "E":
            return ["1"] * slot + ["E"] + ["K"] * (k - slot - 1)
        return ["Kinv"] * slot + ["F"] + ["1"] * (k - slot - 1)

    slots = [0] if which == "K" else list(range(k))
    entries: Dict[Tuple[Index, Index], LaurentPoly] = {}
    for index in basis(n, k):
        for slot in slots:
            images: List[Tuple[Index, LaurentPoly]] = [((), ONE)]
            for position, factor in enumerate(factors(slot)):
                j = index[position]
                moves = [(j, ONE)] if factor == "1" else _single_factor(factor, i, n, j)
                images = [(prefix + (image,), coeff * weight) for prefix, coeff in images for image, weight in moves]
            for output, coeff in images:
                key = (index, output)
                entries[key] = entries.get(key, ZERO) + coeff
    return SparseOperator((UP,) * k, (UP,) * k, entries)
