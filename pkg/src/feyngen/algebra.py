"""Symmetric-algebra layer: label monomials, tensor terms and the coproduct family.

The time-ordered product of field operators is commutative, so a product of
labeled operators is just a multiset of labels.  Everything here is exact:
coefficients are ``fractions.Fraction`` and all values are immutable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

#: Reserved namespace for internally generated labels (glue operations).
#: User-supplied labels must never start with this prefix.
BOUND_LABEL_PREFIX = "~"


def is_bound_label(name: str) -> bool:
    """True if the label belongs to the reserved internal namespace."""
    return name.startswith(BOUND_LABEL_PREFIX)


@dataclass(frozen=True)
class Monomial:
    """Commutative product of field-operator labels, stored as a sorted multiset.

    The empty monomial is the unit of the algebra.
    """

    factors: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    @classmethod
    def of(cls, *labels: str) -> "Monomial":
        return cls(labels)

    @property
    def degree(self) -> int:
        return len(self.factors)

    @property
    def is_unit(self) -> bool:
        return not self.factors

    def has_distinct_factors(self) -> bool:
        return len(set(self.factors)) == len(self.factors)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.factors + other.factors)

    def __str__(self) -> str:
        return "*".join(self.factors) if self.factors else "1"


#: The unit monomial.
ONE = Monomial()


@dataclass(frozen=True)
class TensorTerm:
    """A basis element of the v-fold tensor power: one monomial per slot."""

    slots: tuple[Monomial, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "slots", tuple(self.slots))
        if not self.slots:
            raise ValueError("tensor term needs at least one slot")

    @classmethod
    def of(cls, *slots: Monomial) -> "TensorTerm":
        return cls(slots)

    @property
    def rank(self) -> int:
        return len(self.slots)

    def slotwise_product(self, other: "TensorTerm") -> "TensorTerm":
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} != {other.rank}")
        return TensorTerm(tuple(a * b for a, b in zip(self.slots, other.slots)))

    def __str__(self) -> str:
        return " (x) ".join(str(m) for m in self.slots)


class WeightedTensorSum:
    """Finite sum of tensor terms of a common rank with exact rational weights.

    Zero coefficients are never stored.  Instances are immutable.
    """

    __slots__ = ("rank", "_terms")

    def __init__(
        self,
        rank: int,
        terms: Mapping[TensorTerm, Fraction] | Iterable[tuple[TensorTerm, Fraction]] = (),
    ) -> None:
        if rank < 1:
            raise ValueError("rank must be positive")
        acc: dict[TensorTerm, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for term, coeff in items:
            if term.rank != rank:
                raise ValueError(f"term rank {term.rank} does not match sum rank {rank}")
            coeff = acc.get(term, Fraction(0)) + coeff
            if coeff:
                acc[term] = coeff
            else:
                acc.pop(term, None)
        self.rank = rank
        self._terms = acc

    def items(self) -> Iterator[tuple[TensorTerm, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, term: TensorTerm) -> Fraction:
        return self._terms.get(term, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedTensorSum):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self._terms.items())))

    def __add__(self, other: "WeightedTensorSum") -> "WeightedTensorSum":
        if self.rank != other.rank:
            raise ValueError("rank mismatch in sum")
        return WeightedTensorSum(
            self.rank, itertools.chain(self._terms.items(), other._terms.items())
        )

    def scaled(self, factor: Fraction) -> "WeightedTensorSum":
        if not factor:
            return WeightedTensorSum(self.rank)
        return WeightedTensorSum(
            self.rank, ((t, c * factor) for t, c in self._terms.items())
        )

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*({t})" for t, c in sorted(
            self._terms.items(), key=lambda kv: str(kv[0])))
        return body or "0"


def coproduct(m: Monomial) -> WeightedTensorSum:
    """Split a monomial into all ordered two-block partitions of its factors.

    For a monomial with n distinct factors this has exactly 2**n terms, each
    with coefficient 1; repeated factors merge into binomial coefficients.
    """
    n = m.degree
    out: dict[TensorTerm, Fraction] = {}
    for mask in range(1 << n):
        left = [m.factors[i] for i in range(n) if mask >> i & 1]
        right = [m.factors[i] for i in range(n) if not mask >> i & 1]
        term = TensorTerm.of(Monomial(tuple(left)), Monomial(tuple(right)))
        out[term] = out.get(term, Fraction(0)) + 1
    return WeightedTensorSum(2, out)


def iterated_coproduct(m: Monomial, k: int) -> WeightedTensorSum:
    """Split a monomial into all ordered (k+1)-block partitions (rank k+1).

    k = 0 is the identity.  Coassociativity means any bracketing of repeated
    two-block splits gives the same result.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = m.degree
    out: dict[TensorTerm, Fraction] = {}
    for placement in itertools.product(range(k + 1), repeat=n):
        blocks: list[list[str]] = [[] for _ in range(k + 1)]
        for factor, slot in zip(m.factors, placement):
            blocks[slot].append(factor)
        term = TensorTerm(tuple(Monomial(tuple(b)) for b in blocks))
        out[term] = out.get(term, Fraction(0)) + 1
    return WeightedTensorSum(k + 1, out)


def truncated_coproduct(m: Monomial, k: int) -> WeightedTensorSum:
    """Two-block coproduct with every term having a block of fewer than k factors removed.

    On the unit monomial (or whenever no partition has both blocks of size at
    least k) the result is the empty sum.
    """
    if k < 1:
        raise ValueError("truncation threshold must be positive")
    full = coproduct(m)
    kept = (
        (term, c)
        for term, c in full.items()
        if term.slots[0].degree >= k and term.slots[1].degree >= k
    )
    return WeightedTensorSum(2, kept)


def tensor_multiply(a: WeightedTensorSum, b: WeightedTensorSum) -> WeightedTensorSum:
    """Bilinear slot-wise product of two equal-rank weighted tensor sums."""
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} != {b.rank}")
    out: dict[TensorTerm, Fraction] = {}
    for ta, ca in a.items():
        for tb, cb in b.items():
            term = ta.slotwise_product(tb)
            coeff = out.get(term, Fraction(0)) + ca * cb
            if coeff:
                out[term] = coeff
            else:
                out.pop(term, None)
    return WeightedTensorSum(a.rank, out)
