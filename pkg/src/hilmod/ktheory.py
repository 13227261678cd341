"""Symbolic K-theory term calculus.

Expressions are multisets of terms (Whitehead groups of finite subgroups,
Bass Nil-groups of the coefficient ring or of its Z/2 group ring, K-groups
of the base ring, one opaque homology leading term) with cardinal
multiplicities.  The binomial Nil blocks come in a two-copy flavour for
normalizers with a free abelian quotient and a one-copy flavour for the
semidirect ones, where the order-four element flips each pair of
Nil-groups and only the diagonal survives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

BASE = "base"
BASE_C2 = "base_c2"  # the group ring R[Z/2]

_RING_NAMES = {BASE: "R", BASE_C2: "R[Z/2]"}


@dataclass(frozen=True)
class Cardinal:
    """A multiplicity: a finite count, countably infinite, or unknown."""

    kind: str  # "finite" | "infinite" | "unknown"
    count: int = 0

    @staticmethod
    def finite(k: int) -> "Cardinal":
        if k < 0:
            raise ValueError("negative multiplicity")
        return Cardinal("finite", k)

    @staticmethod
    def infinite() -> "Cardinal":
        return Cardinal("infinite")

    @staticmethod
    def unknown() -> "Cardinal":
        return Cardinal("unknown")

    @property
    def is_zero(self) -> bool:
        return self.kind == "finite" and self.count == 0

    def __add__(self, other: "Cardinal") -> "Cardinal":
        if self.kind == "finite" and other.kind == "finite":
            return Cardinal.finite(self.count + other.count)
        if "infinite" in (self.kind, other.kind):
            return Cardinal.infinite()
        # unknown absorbs, except against a hard zero
        return other if self.is_zero else (self if other.is_zero else Cardinal.unknown())

    def __mul__(self, other: "Cardinal") -> "Cardinal":
        if self.is_zero or other.is_zero:
            return Cardinal.finite(0)
        if self.kind == "finite" and other.kind == "finite":
            return Cardinal.finite(self.count * other.count)
        if "unknown" in (self.kind, other.kind):
            return Cardinal.unknown()
        return Cardinal.infinite()

    def to_json(self):
        return {"finite": self.count} if self.kind == "finite" else self.kind

    @staticmethod
    def from_json(data) -> "Cardinal":
        if isinstance(data, dict):
            return Cardinal.finite(data["finite"])
        if data == "infinite":
            return Cardinal.infinite()
        if data == "unknown":
            return Cardinal.unknown()
        if isinstance(data, int):
            return Cardinal.finite(data)
        raise ValueError(f"bad cardinal: {data!r}")


@dataclass(frozen=True)
class KTerm:
    """One symbolic summand.  Exactly one kind:

    - wh: Wh_degree of a finite maximal subgroup (order + census id kept)
    - nk: NK_degree of a ring; ``level`` > 0 tags the opaque Nil-groups of
      intermediate group rings R[Z^level] picked up by iterated BHS
    - k: K_degree of the base ring
    - opaque: an unevaluated homology term, by label
    """

    kind: str  # "wh" | "nk" | "k" | "opaque"
    degree: Optional[int] = None
    ring: Optional[str] = None
    group_order: Optional[int] = None
    group_id: Optional[str] = None
    label: Optional[str] = None
    level: int = 0

    @staticmethod
    def wh(degree: int, group_order: int, group_id: str) -> "KTerm":
        return KTerm("wh", degree=degree, group_order=group_order, group_id=group_id)

    @staticmethod
    def nk(degree: int, ring: str = BASE, level: int = 0) -> "KTerm":
        return KTerm("nk", degree=degree, ring=ring, level=level)

    @staticmethod
    def k(degree: int) -> "KTerm":
        return KTerm("k", degree=degree)

    @staticmethod
    def opaque(label: str) -> "KTerm":
        return KTerm("opaque", label=label)

    def sort_key(self):
        order = {"opaque": 0, "wh": 1, "nk": 2, "k": 3}
        return (order[self.kind], self.label or "", self.group_id or "",
                self.group_order or 0, self.ring or "", self.level,
                -(self.degree if self.degree is not None else 0))

    def describe(self) -> str:
        if self.kind == "wh":
            return f"Wh_{self.degree}({self.group_id})"
        if self.kind == "nk":
            ring = _RING_NAMES[self.ring]
            if self.level:
                ring += f"[Z^{self.level}]"
            return f"NK_{self.degree}({ring})"
        if self.kind == "k":
            return f"K_{self.degree}(R)"
        return self.label

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        for key in ("degree", "ring", "group_order", "group_id", "label"):
            v = getattr(self, key)
            if v is not None:
                out[key] = v
        if self.level:
            out["level"] = self.level
        return out

    @staticmethod
    def from_json(data: dict) -> "KTerm":
        return KTerm(data["kind"], degree=data.get("degree"), ring=data.get("ring"),
                     group_order=data.get("group_order"), group_id=data.get("group_id"),
                     label=data.get("label"), level=data.get("level", 0))


class KExpression:
    """A canonically sorted multiset of (KTerm, Cardinal) pairs.

    Zero-multiplicity entries are dropped and duplicate terms merged, so
    the merge is associative and commutative with a unique normal form.
    ``notes`` carries non-structural annotations (long exact sequences,
    collapse remarks) and is ignored by equality."""

    __slots__ = ("terms", "notes")

    def __init__(self, pairs: Sequence[tuple[KTerm, Cardinal]] = (),
                 notes: Optional[list] = None):
        merged: dict[KTerm, Cardinal] = {}
        for term, mult in pairs:
            merged[term] = merged.get(term, Cardinal.finite(0)) + mult
        items = [(t, m) for t, m in merged.items() if not m.is_zero]
        items.sort(key=lambda tm: tm[0].sort_key())
        self.terms = tuple(items)
        self.notes = list(notes or [])

    @staticmethod
    def empty() -> "KExpression":
        return KExpression()

    @staticmethod
    def single(term: KTerm, mult: Cardinal = Cardinal.finite(1)) -> "KExpression":
        return KExpression([(term, mult)])

    def __add__(self, other: "KExpression") -> "KExpression":
        return KExpression(self.terms + other.terms, self.notes + other.notes)

    def scale(self, c: Cardinal) -> "KExpression":
        return KExpression([(t, m * c) for t, m in self.terms], self.notes)

    def shift_degree(self, delta: int) -> "KExpression":
        out = []
        for t, m in self.terms:
            if t.degree is not None:
                t = replace(t, degree=t.degree + delta)
            out.append((t, m))
        return KExpression(out, self.notes)

    def multiplicity(self, term: KTerm) -> Cardinal:
        for t, m in self.terms:
            if t == term:
                return m
        return Cardinal.finite(0)

    def filter(self, kind: str) -> "KExpression":
        return KExpression([(t, m) for t, m in self.terms if t.kind == kind])

    @property
    def is_empty(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, KExpression) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "KExpression(0)"
        parts = []
        for t, m in self.terms:
            if m == Cardinal.finite(1):
                parts.append(t.describe())
            elif m.kind == "finite":
                parts.append(f"{t.describe()}^{m.count}")
            else:
                parts.append(f"{t.describe()}^({m.kind})")
        return "KExpression(" + " + ".join(parts) + ")"

    def to_json(self) -> list[dict]:
        return [{"term": t.to_json(), "multiplicity": m.to_json()}
                for t, m in self.terms]

    @staticmethod
    def from_json(data: Sequence[dict]) -> "KExpression":
        return KExpression([(KTerm.from_json(e["term"]),
                             Cardinal.from_json(e["multiplicity"])) for e in data])


@dataclass(frozen=True)
class RingProps:
    regular: bool = False            # all NK groups vanish
    nk_finite_exponent: bool = False  # NK blocks collapse (up to iso) to one copy each


@dataclass(frozen=True)
class Census:
    """Conjugacy-class counts feeding the decomposition theorems.

    ``finite``: (group order, count) for maximal finite subgroup classes.
    ``m1``/``m2`` are indexed by the hyperbolic component count j = 1..n-1.
    """

    n: int
    finite: tuple[tuple[int, Cardinal], ...] = ()
    p: Cardinal = Cardinal.finite(0)
    h1: Cardinal = Cardinal.finite(0)
    h2: Cardinal = Cardinal.finite(0)
    hp1: Cardinal = Cardinal.finite(0)
    hp2: Cardinal = Cardinal.finite(0)
    m1: tuple[Cardinal, ...] = ()
    m2: tuple[Cardinal, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("degree must be >= 1")
        want = self.n - 1
        object.__setattr__(self, "m1", _pad(self.m1, want))
        object.__setattr__(self, "m2", _pad(self.m2, want))
        object.__setattr__(self, "finite", tuple(self.finite))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "finite": [{"order": o, "count": c.to_json()} for o, c in self.finite],
            "p": self.p.to_json(), "h1": self.h1.to_json(), "h2": self.h2.to_json(),
            "hp1": self.hp1.to_json(), "hp2": self.hp2.to_json(),
            "m1": [c.to_json() for c in self.m1],
            "m2": [c.to_json() for c in self.m2],
        }

    @staticmethod
    def from_json(data: dict) -> "Census":
        card = Cardinal.from_json
        zero = Cardinal.finite(0)
        return Census(
            n=data["n"],
            finite=tuple((e["order"], card(e["count"])) for e in data.get("finite", [])),
            p=card(data.get("p", zero.to_json())),
            h1=card(data.get("h1", zero.to_json())),
            h2=card(data.get("h2", zero.to_json())),
            hp1=card(data.get("hp1", zero.to_json())),
            hp2=card(data.get("hp2", zero.to_json())),
            m1=tuple(card(c) for c in data.get("m1", [])),
            m2=tuple(card(c) for c in data.get("m2", [])),
        )


def _pad(cs: Sequence[Cardinal], want: int) -> tuple[Cardinal, ...]:
    cs = tuple(cs)
    if len(cs) > want:
        raise ValueError(f"expected at most {want} mixed slots, got {len(cs)}")
    return cs + (Cardinal.finite(0),) * (want - len(cs))


# -- Nil block generators ------------------------------------------------


def dos_nil(s: int, q: int, ring: str = BASE) -> KExpression:
    """Two-copy Nil block: sum over i of NK_{q-i}(ring) with multiplicity
    2*binom(s, i).  s = -1 yields the empty expression."""
    if s < 0:
        return KExpression.empty()
    return KExpression([(KTerm.nk(q - i, ring), Cardinal.finite(2 * math.comb(s, i)))
                        for i in range(s + 1)])


def nil_single(s: int, q: int, ring: str = BASE) -> KExpression:
    """One-copy Nil block (Z/4 coinvariants of the flipped pairs):
    multiplicities binom(s, i)."""
    if s < 0:
        return KExpression.empty()
    return KExpression([(KTerm.nk(q - i, ring), Cardinal.finite(math.comb(s, i)))
                        for i in range(s + 1)])


def bhs_iterate(d: int, q: int) -> KExpression:
    """Symbolic K_q(R[Z^d]) by applying the Bass-Heller-Swan rewrite
    K_j(R'[Z]) = K_j(R') + K_{j-1}(R') + 2 NK_j(R') a total of d times.

    Only K-terms are rewritten; the NK terms of intermediate group rings
    are kept opaque (tagged with their level) since BHS says nothing about
    decomposing them further."""
    if d < 0:
        raise ValueError("d must be >= 0")
    expr = KExpression.single(KTerm.k(q))
    for step in range(d):
        out = []
        for t, m in expr.terms:
            if t.kind == "k":
                out.append((t, m))
                out.append((KTerm.k(t.degree - 1), m))
                out.append((KTerm.nk(t.degree, BASE, level=step),
                            m * Cardinal.finite(2)))
            else:
                out.append((t, m))
        expr = KExpression(out)
    return expr


# -- assembled decompositions -------------------------------------------


def _nil_blocks(census: Census, q: int, ring: str) -> KExpression:
    """The shared block pattern: a slot whose normalizer has rank r gets a
    Nil block with s = r - 1; two-copy for the type-1 slots, one-copy for
    the type-2 slots."""
    n = census.n
    expr = KExpression.empty()
    expr = expr + dos_nil(n - 1, q, ring).scale(census.p)
    expr = expr + dos_nil(n - 1, q, ring).scale(census.h1)
    expr = expr + nil_single(n - 1, q, ring).scale(census.h2)
    expr = expr + dos_nil(n - 2, q, ring).scale(census.hp1)
    expr = expr + nil_single(n - 2, q, ring).scale(census.hp2)
    for j in range(1, n):
        expr = expr + dos_nil(j - 1, q, ring).scale(census.m1[j - 1])
        expr = expr + nil_single(j - 1, q, ring).scale(census.m2[j - 1])
    return expr


def wh_decomposition_psl(census: Census, q: int,
                         props: RingProps = RingProps()) -> KExpression:
    """Whitehead group of PSL_2(O_k) in degree q: Wh_q of the finite
    maximal subgroups plus the Nil blocks of the infinite cyclic census."""
    wh = KExpression([(KTerm.wh(q, order, f"C{order}"), count)
                      for order, count in census.finite])
    return simplify(wh + _nil_blocks(census, q, BASE), props)


OPAQUE_LABEL = "H_q^G(EbarG;K_R)"


def wh_decomposition_sl(census: Census, q: int,
                        props: RingProps = RingProps()) -> KExpression:
    """Whitehead group of SL_2(O_k) in degree q: an opaque equivariant
    homology leading term plus the same Nil block pattern with R[Z/2]
    coefficients.  The long exact sequence constraining the opaque term is
    attached as a note."""
    expr = KExpression.single(KTerm.opaque(OPAQUE_LABEL))
    expr = expr + _nil_blocks(census, q, BASE_C2)
    expr = simplify(expr, props)
    expr.notes.append({
        "long_exact_sequence": [
            "... -> (+)_{M in F} H_q^M(EM;K_R)",
            "-> H_q^G(EG;K_R) (+) (+)_{M in F} K_q(R(M))",
            f"-> {OPAQUE_LABEL} -> ...",
        ],
        "finite_census": [{"order": o, "count": c.to_json()} for o, c in census.finite],
    })
    return expr


def simplify(e: KExpression, props: RingProps) -> KExpression:
    """Apply coefficient-ring knowledge: a regular ring kills every NK
    term; finite-exponent Nil groups collapse each NK block to a single
    copy up to isomorphism (annotated, since for infinite direct sums the
    multiplicities become moot)."""
    if props.regular:
        return KExpression([(t, m) for t, m in e.terms if t.kind != "nk"], e.notes)
    if props.nk_finite_exponent:
        out = [(t, Cardinal.finite(1) if t.kind == "nk" else m) for t, m in e.terms]
        notes = e.notes + [{"nk_finite_exponent_collapse":
                            "NK multiplicities flattened to one copy each "
                            "(finite-exponent Nil groups, up to isomorphism)"}]
        return KExpression(out, notes)
    return e
