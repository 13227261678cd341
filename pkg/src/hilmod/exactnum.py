"""Exact rational arithmetic, univariate polynomials and certified real
root isolation.

Everything here is computed over ``fractions.Fraction``; there is no
floating point anywhere, so every sign decision is exact.  Root isolation
uses Sturm sequences with bisection, which is more than fast enough for
the small degrees (<= 8 or so) this library deals with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class NotSquarefree(ValueError):
    """Raised when an operation requires a squarefree polynomial."""


def rational_from_string(s: str) -> Fraction:
    return Fraction(s.strip())


def rational_to_string(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def _sign(x: Fraction) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


class Poly:
    """Univariate polynomial with Fraction coefficients, ascending degree.

    Immutable; trailing zero coefficients are never stored, so the zero
    polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int | str]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # immutability guard
        raise AttributeError("Poly is immutable")

    # -- basics ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.leading == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    @staticmethod
    def zero() -> "Poly":
        return Poly([])

    @staticmethod
    def constant(c) -> "Poly":
        return Poly([c])

    @staticmethod
    def x() -> "Poly":
        return Poly([0, 1])

    # -- ring operations ------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial power")
        acc, base = Poly.constant(1), self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly([a * c for a in self.coeffs])

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d = other.degree
        lc = other.leading
        while len(rem) - 1 >= d and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lc
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
        return Poly(q), Poly(rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        if a.is_zero:
            return a
        return a.monic()

    # -- evaluation -----------------------------------------------------

    def __call__(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_interval(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Enclosure of the image of [lo, hi] under Horner interval arithmetic."""
        alo, ahi = Fraction(0), Fraction(0)
        for c in reversed(self.coeffs):
            prods = (alo * lo, alo * hi, ahi * lo, ahi * hi)
            alo, ahi = min(prods) + c, max(prods) + c
        return alo, ahi

    # -- squarefree / Sturm ---------------------------------------------

    def is_squarefree(self) -> bool:
        if self.is_zero:
            return False
        return self.gcd(self.derivative()).degree <= 0

    def squarefree_part(self) -> "Poly":
        if self.is_zero:
            raise ValueError("zero polynomial")
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self
        return self.divmod(g)[0]

    def sturm_chain(self) -> list["Poly"]:
        chain = [self, self.derivative()]
        while not chain[-1].is_zero and chain[-1].degree > 0:
            chain.append(-(chain[-2] % chain[-1]))
        if chain[-1].is_zero:
            chain.pop()
        return chain

    def cauchy_bound(self) -> Fraction:
        """1 + max |a_i / a_n|; every real root lies strictly inside (-B, B)."""
        lc = self.leading
        m = max((abs(c / lc) for c in self.coeffs[:-1]), default=Fraction(0))
        return 1 + m

    def resultant(self, other: "Poly") -> Fraction:
        """Resultant via the Euclidean algorithm."""
        a, b = self, other
        if a.is_zero or b.is_zero:
            return Fraction(0)
        res = Fraction(1)
        while b.degree > 0:
            r = a % b
            if r.is_zero:
                return Fraction(0)
            res *= Fraction(-1) ** (a.degree * b.degree) * b.leading ** (a.degree - r.degree)
            a, b = b, r
        return res * b.coeffs[0] ** a.degree

    def discriminant(self) -> Fraction:
        n = self.degree
        if n < 1:
            raise ValueError("discriminant needs degree >= 1")
        sgn = Fraction(-1) ** (n * (n - 1) // 2)
        return sgn * self.resultant(self.derivative()) / self.leading

    # -- serialization --------------------------------------------------

    def to_json(self) -> list[str]:
        return [rational_to_string(c) for c in self.coeffs]

    @staticmethod
    def from_json(data: Sequence[str]) -> "Poly":
        return Poly([rational_from_string(c) for c in data])


def sign_variations(chain: Sequence[Poly], x: Fraction) -> int:
    signs = [s for s in (_sign(p(x)) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class RootInterval:
    """An isolating interval [low, high] for one real root of a squarefree
    polynomial; ``index`` is the ordinal of the root in ascending order."""

    polynomial: Poly
    low: Fraction
    high: Fraction
    index: int

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    @property
    def midpoint(self) -> Fraction:
        return (self.low + self.high) / 2

    @property
    def is_exact(self) -> bool:
        return self.low == self.high


def _nonroot_point(p: Poly, a: Fraction, b: Fraction) -> Fraction:
    """Point in (a, b) that is not a root of p; tries the midpoint first."""
    for num, den in ((1, 2), (1, 3), (2, 3), (1, 5), (2, 5), (3, 5), (4, 5),
                     (1, 7), (2, 7), (3, 7), (4, 7), (5, 7), (6, 7)):
        m = a + (b - a) * Fraction(num, den)
        if p(m) != 0:
            return m
    raise RuntimeError("could not find a non-root sample point")  # p has finitely many roots


def isolate_real_roots(p: Poly, reduce_squarefree: bool = False) -> list[RootInterval]:
    """All real roots of p, ascending, in pairwise disjoint isolating
    intervals with rational endpoints.

    Raises NotSquarefree when p has a repeated root and reduction was not
    requested.
    """
    if p.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if not p.is_squarefree():
        if not reduce_squarefree:
            raise NotSquarefree("polynomial has a repeated root")
        p = p.squarefree_part()
    if p.degree == 0:
        return []

    chain = p.sturm_chain()
    bound = p.cauchy_bound()
    lo, hi = -bound, bound
    # Cauchy bound is strict, but be safe about endpoint roots anyway.
    while p(lo) == 0:
        lo -= 1
    while p(hi) == 0:
        hi += 1

    intervals: list[tuple[Fraction, Fraction]] = []

    def split(a: Fraction, b: Fraction, va: int, vb: int) -> None:
        count = va - vb
        if count == 0:
            return
        if count == 1:
            intervals.append((a, b))
            return
        m = _nonroot_point(p, a, b)
        vm = sign_variations(chain, m)
        split(a, m, va, vm)
        split(m, b, vm, vb)

    split(lo, hi, sign_variations(chain, lo), sign_variations(chain, hi))
    intervals.sort(key=lambda ab: ab[0])
    return [RootInterval(p, a, b, i) for i, (a, b) in enumerate(intervals)]


def count_real_roots(p: Poly) -> int:
    """Sturm sign-variation count over (-B, B); p must be squarefree."""
    if not p.is_squarefree():
        raise NotSquarefree("polynomial has a repeated root")
    if p.degree == 0:
        return 0
    chain = p.sturm_chain()
    b = p.cauchy_bound()
    lo, hi = -b, b
    while p(lo) == 0:
        lo -= 1
    while p(hi) == 0:
        hi += 1
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def refine_root(r: RootInterval, width: Fraction) -> RootInterval:
    """Shrink the isolating interval to width <= ``width`` by bisection.

    The contained root and its index never change.  An exact hit at a
    midpoint yields the degenerate interval [m, m].
    """
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if r.width <= width or r.is_exact:
        return r
    p = r.polynomial
    lo, hi = r.low, r.high
    slo = _sign(p(lo))
    if slo == 0:
        return RootInterval(p, lo, lo, r.index)
    if _sign(p(hi)) == 0:
        return RootInterval(p, hi, hi, r.index)
    while hi - lo > width:
        m = (lo + hi) / 2
        sm = _sign(p(m))
        if sm == 0:
            return RootInterval(p, m, m, r.index)
        if sm == slo:
            lo = m
        else:
            hi = m
    return RootInterval(p, lo, hi, r.index)
