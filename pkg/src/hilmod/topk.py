"""Rational ranks of the topological K-theory of the reduced group
C*-algebra of PSL_2(O_k): closed-form Betti numbers of the quotient,
parity folding via the Chern character, and the correction from
conjugacy classes of maximal finite subgroups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


class BadProfile(ValueError):
    pass


@dataclass(frozen=True)
class BettiProfile:
    """Numeric inputs: field degree n, class number h (an input, never
    computed), and cusp-form Hodge dimensions as (p, r, dim) triples with
    p + r = n.  Cusp dimensions default to empty, which makes the rank at
    the middle degree a lower bound only (flagged in output)."""

    n: int
    h: int
    cusp_dims: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise BadProfile("degree must be >= 1")
        if self.h < 1:
            raise BadProfile("class number must be >= 1")
        object.__setattr__(self, "cusp_dims", tuple(tuple(t) for t in self.cusp_dims))
        for p, r, dim in self.cusp_dims:
            if p < 0 or r < 0 or dim < 0:
                raise BadProfile("cusp entries must be nonnegative")
            if p + r != self.n:
                raise BadProfile(f"cusp split {p}+{r} != {self.n}")

    @property
    def cusp_total(self) -> int:
        return sum(dim for _, _, dim in self.cusp_dims)

    @property
    def cusp_defaulted(self) -> bool:
        return not self.cusp_dims

    def to_json(self) -> dict:
        return {"degree": self.n, "class_number": self.h,
                "cusp_dims": [{"p": p, "r": r, "dim": d} for p, r, d in self.cusp_dims]}

    @staticmethod
    def from_json(data: dict) -> "BettiProfile":
        return BettiProfile(data["degree"], data["class_number"],
                            tuple((e["p"], e["r"], e["dim"])
                                  for e in data.get("cusp_dims", [])))


@dataclass(frozen=True)
class FiniteCensus:
    """Conjugacy classes of maximal finite subgroups as (order, count)
    pairs; a class of order o contributes a free summand of rank o - 1 in
    even degree."""

    classes: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(tuple(t) for t in self.classes))
        for order, count in self.classes:
            if order < 2 or count < 0:
                raise BadProfile("census needs orders >= 2 and counts >= 0")

    def correction(self) -> int:
        return sum(count * (order - 1) for order, count in self.classes)

    def to_json(self) -> list[dict]:
        return [{"order": o, "count": c} for o, c in self.classes]

    @staticmethod
    def from_json(data: Sequence[dict]) -> "FiniteCensus":
        return FiniteCensus(tuple((e["order"], e["count"]) for e in data))


def betti_breakdown(q: int, prof: BettiProfile) -> dict:
    """The three pieces of rk H_q(X): universal classes (even degrees),
    Eisenstein classes (degrees n .. 2n-1), cusp forms (degree n only)."""
    n, h = prof.n, prof.h
    if q < 0 or q >= 2 * n:
        return {"b_univ": 0, "b_eis": 0, "b_cusp": 0}
    univ = math.comb(n, q // 2) if q % 2 == 0 else 0
    if q < n:
        eis = 0
    elif q < 2 * n - 1:
        eis = h * math.comb(n - 1, q - n)
    elif q == 2 * n - 1:
        eis = h - 1
    else:
        eis = 0
    cusp = prof.cusp_total if q == n else 0
    return {"b_univ": univ, "b_eis": eis, "b_cusp": cusp}


def betti_rank(q: int, prof: BettiProfile) -> int:
    b = betti_breakdown(q, prof)
    return b["b_univ"] + b["b_eis"] + b["b_cusp"]


def k_homology_rank(q: int, prof: BettiProfile) -> int:
    """Chern-character folding: sum of Betti ranks over the parity class
    of q (finite sum; ranks vanish outside [0, 2n))."""
    return sum(betti_rank(j, prof) for j in range(q % 2, 2 * prof.n, 2))


def ktop_rank(q: int, prof: BettiProfile, fc: FiniteCensus = FiniteCensus()) -> int:
    """rk K_q^top(C*_r(PSL_2(O_k))): the folded homology rank, plus in
    even degree one rank-(o-1) summand per finite class of order o."""
    rank = k_homology_rank(q, prof)
    if q % 2 == 0:
        rank += fc.correction()
    return rank


def ktop_json(q: int, prof: BettiProfile, fc: FiniteCensus = FiniteCensus()) -> dict:
    parity = q % 2
    breakdown = {"b_univ": 0, "b_eis": 0, "b_cusp": 0}
    for j in range(parity, 2 * prof.n, 2):
        b = betti_breakdown(j, prof)
        for key in breakdown:
            breakdown[key] += b[key]
    # rk H_0 = 1 is the constant universal class; report it separately
    breakdown["h0"] = 1 if parity == 0 else 0
    breakdown["b_univ"] -= breakdown["h0"]
    breakdown["finite"] = fc.correction() if parity == 0 else 0
    defaulted = prof.cusp_defaulted and prof.n % 2 == parity
    return {
        "q_mod_2": parity,
        "rank": ktop_rank(q, prof, fc),
        "breakdown": breakdown,
        "cusp_defaulted": defaulted,
    }
