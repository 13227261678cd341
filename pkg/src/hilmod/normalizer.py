"""Normalizer / commensurator structure of infinite cyclic subgroups in
PSL_2(O_k), its lift to SL_2(O_k), and census slot assignment.

The free-abelian rank of the normalizer is certain and determined by the
element class alone.  Whether a Z/2 factor is present is decided by a
bounded exhaustive search for an involution conjugating the element to its
inverse; when the search exhausts, the outcome is reported as inconclusive
rather than guessed (whether normalizers without the Z/2 factor exist at
all is an open question)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .classify import ClassKind, ElementClass, classify
from .modgrp import Mat2, PslElem, check_sl, psl_normalize
from .numfield import FieldElement, NumberField


class FiniteOrderClass(ValueError):
    pass


class ParabolicInput(ValueError):
    pass


class RankMismatch(ValueError):
    pass


FREE_ABELIAN = "free_abelian"
SEMIDIRECT_Z2 = "semidirect_z2"
DIRECT_SUM_Z2 = "direct_sum_z2"
SEMIDIRECT_Z4 = "semidirect_z4"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class NormalizerType:
    """Z^r (free_abelian), Z^r x| Z/2 (semidirect_z2), or rank-certain but
    Z/2-factor undecided (inconclusive)."""

    kind: str
    rank: int


@dataclass(frozen=True)
class SlNormalizerType:
    """Z^r + Z/2 (direct_sum_z2) or Z^r x| Z/4 (semidirect_z4)."""

    kind: str
    rank: int


@dataclass(frozen=True)
class CensusSlot:
    kind: str  # "P" | "H1" | "H2" | "HP1" | "HP2" | "M1" | "M2" |
               # "finite_maximal" | "undetermined"
    j: Optional[int] = None      # mixed slots: hyperbolic component count
    order: Optional[int] = None  # finite_maximal slots


def normalizer_rank(cls: ElementClass, n: int) -> int:
    """Certain free-abelian rank of N_G[H] for the class of the generator."""
    if not cls.is_infinite_order:
        raise FiniteOrderClass("normalizer rank is defined for infinite-order classes")
    if cls.kind is ClassKind.TOTALLY_PARABOLIC:
        return n
    if cls.kind is ClassKind.TOTALLY_HYPERBOLIC:
        return n - 1 if cls.hyperbolic_parabolic else n
    return cls.hyperbolic_components  # mixed


def _coord_tuples(n: int, height: int) -> Iterator[tuple[int, ...]]:
    """Integer coordinate tuples with max |coord| <= height, in a canonical
    order: by height, then coordinatewise by (|c|, sign)."""
    tuples = itertools.product(range(-height, height + 1), repeat=n)

    def key(t):
        return (max((abs(x) for x in t), default=0),
                tuple((abs(x), 0 if x >= 0 else 1) for x in t))

    return iter(sorted(tuples, key=key))


def involution_search(a: PslElem, height_bound: int) -> Optional[PslElem]:
    """Order-two beta with beta a beta^-1 = a^-1, by exhaustive search over
    trace-zero integral matrices of bounded coordinate height.

    With beta = [[x, y], [z, -x]], det 1 forces y*z = -1 - x^2, so only x
    and y are enumerated and z is solved for and checked exactly.
    """
    cls = classify(a)
    if cls.kind is ClassKind.TOTALLY_PARABOLIC:
        raise ParabolicInput("totally parabolic normalizers contain no involution")
    if not cls.is_infinite_order:
        raise FiniteOrderClass("involution search needs an infinite-order element")
    field = a.field
    n = field.degree
    a_inv = a.inv()
    if height_bound < 0:
        return None
    for xc in _coord_tuples(n, height_bound):
        x = field.element([Fraction(v) for v in xc])
        need = -field.one() - x * x  # = y*z
        for yc in _coord_tuples(n, height_bound):
            y = field.element([Fraction(v) for v in yc])
            if y.is_zero:
                continue
            z = need / y
            if not z.is_integral() or z.height() > height_bound:
                continue
            beta = Mat2(x, y, z, -x)
            if not check_sl(beta):
                continue
            b = psl_normalize(beta)
            if (b * a * b.inv()).rep == a_inv.rep:
                return b
    return None


def normalizer_type_psl(a: PslElem, height_bound: int = 5) -> NormalizerType:
    cls = classify(a)
    if not cls.is_infinite_order:
        raise FiniteOrderClass("normalizer type is defined for infinite-order elements")
    n = a.field.degree
    rank = normalizer_rank(cls, n)
    if cls.kind is ClassKind.TOTALLY_PARABOLIC:
        # all normalizer elements are translations; no Z/2 factor, certain
        return NormalizerType(FREE_ABELIAN, rank)
    if involution_search(a, height_bound) is not None:
        return NormalizerType(SEMIDIRECT_Z2, rank)
    return NormalizerType(INCONCLUSIVE, rank)


def lift_to_sl(nt: NormalizerType) -> SlNormalizerType:
    """Normalizer in SL_2(O_k) of a lift of the cyclic subgroup: the center
    {+-I} contributes Z/2 directly in the free-abelian case and promotes
    the Z/2 on top to a Z/4."""
    if nt.kind == FREE_ABELIAN:
        return SlNormalizerType(DIRECT_SUM_Z2, nt.rank)
    if nt.kind == SEMIDIRECT_Z2:
        return SlNormalizerType(SEMIDIRECT_Z4, nt.rank)
    return SlNormalizerType(INCONCLUSIVE, nt.rank)


def census_slot(cls: ElementClass, nt: Optional[NormalizerType], n: int) -> CensusSlot:
    """Which census set the commensuration class of the generator lands in."""
    if cls.kind in (ClassKind.IDENTITY, ClassKind.TOTALLY_ELLIPTIC):
        return CensusSlot("finite_maximal",
                          order=1 if cls.kind is ClassKind.IDENTITY else cls.order)
    if nt is None:
        raise RankMismatch("infinite-order classes need a normalizer type")
    if nt.rank != normalizer_rank(cls, n):
        raise RankMismatch(
            f"normalizer rank {nt.rank} does not match the class rank "
            f"{normalizer_rank(cls, n)}")
    if nt.kind == INCONCLUSIVE:
        return CensusSlot("undetermined")
    free = nt.kind == FREE_ABELIAN
    if cls.kind is ClassKind.TOTALLY_PARABOLIC:
        return CensusSlot("P")
    if cls.kind is ClassKind.TOTALLY_HYPERBOLIC:
        if cls.hyperbolic_parabolic:
            return CensusSlot("HP1" if free else "HP2")
        return CensusSlot("H1" if free else "H2")
    return CensusSlot("M1" if free else "M2", j=cls.hyperbolic_components)


def is_proper_power(a: PslElem, max_exponent: int = 4,
                    height_bound: int = 1) -> Optional[bool]:
    """Bounded check whether a = b^e for some e >= 2 in PSL_2(O_k).

    Census hygiene helper only: normalizer type and census slot depend on
    the commensuration class, not on the generator being primitive.
    Returns None when the bounded search is exhausted without a witness.
    """
    field = a.field
    n = field.degree
    for coords in itertools.product(range(-height_bound, height_bound + 1),
                                    repeat=4 * n):
        es = [field.element([Fraction(v) for v in coords[i * n:(i + 1) * n]])
              for i in range(4)]
        b = Mat2(*es)
        if not check_sl(b):
            continue
        pb = psl_normalize(b)
        if pb.rep == a.rep:
            continue
        acc = pb
        for _ in range(2, max_exponent + 1):
            acc = acc * pb
            if acc.rep == a.rep:
                return True
    return None


def normalizer_json(a: PslElem, height_bound: int = 5) -> dict:
    cls = classify(a)
    nt = normalizer_type_psl(a, height_bound)
    slot = census_slot(cls, nt, a.field.degree)
    wit = None
    if nt.kind == SEMIDIRECT_Z2:
        w = involution_search(a, height_bound)
        wit = w.to_json() if w is not None else None
    slot_name = slot.kind if slot.j is None else f"{slot.kind}{{{slot.j}}}"
    return {
        "rank": nt.rank,
        "psl_type": nt.kind,
        "sl_type": lift_to_sl(nt).kind,
        "witness_involution": wit,
        "census_slot": slot_name,
    }
