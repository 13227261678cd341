"""Totally real number fields with certified real embeddings.

A field is presented by a monic integer minimal polynomial (irreducibility
is verified only up to degree 3, above that it is a caller contract) plus
an integral basis given in the power basis of the defining root.  Elements
are exact coordinate vectors in the integral basis; all arithmetic happens
in Q[x]/(min_poly) and is exact.

Sign decisions at an embedding combine an exact zero test with interval
refinement of the isolated root, so they are certified.  Square roots and
roots of rational polynomials inside the field use a candidate-and-verify
scheme (high precision numerics, rational rounding, exact verification)
with an exact factorization fallback for certifying absence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

import mpmath

from .exactnum import (
    NotSquarefree,
    Poly,
    RootInterval,
    isolate_real_roots,
    rational_from_string,
    rational_to_string,
    refine_root,
)

Sign = int  # -1, 0 or +1


class NotTotallyReal(ValueError):
    pass


class NotMonic(ValueError):
    pass


class ReducibleDetected(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


# -- small exact linear algebra ----------------------------------------


def mat_inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        f = aug[col][col]
        aug[col] = [x / f for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                g = aug[r][col]
                aug[r] = [x - g * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def mat_det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def _vec_mat(v: Sequence[Fraction], m: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    n = len(m[0])
    return [sum((v[i] * m[i][j] for i in range(len(v))), Fraction(0)) for j in range(n)]


def _is_rational_square(r: Fraction) -> Optional[Fraction]:
    """Exact square root of a rational, or None."""
    if r < 0:
        return None
    p, q = r.numerator, r.denominator
    sp, sq = isqrt(p), isqrt(q)
    if sp * sp == p and sq * sq == q:
        return Fraction(sp, sq)
    return None


# -- the field ----------------------------------------------------------


class NumberField:
    """A totally real field Q(theta) with theta a root of ``min_poly``.

    ``integral_basis`` rows are the basis elements of O_k written in the
    power basis {1, theta, ..., theta^(n-1)}; row 0 must be the constant 1.
    Embeddings are stored as isolating intervals in ascending root order,
    so embedding 0 corresponds to the smallest real root.
    """

    def __init__(self, min_poly: Poly,
                 integral_basis: Optional[Sequence[Sequence[Fraction]]] = None):
        if min_poly.is_zero or not min_poly.is_monic:
            raise NotMonic("minimal polynomial must be monic and nonzero")
        if any(c.denominator != 1 for c in min_poly.coeffs):
            raise NotMonic("minimal polynomial must have integer coefficients")
        if not min_poly.is_squarefree():
            raise NotSquarefree("minimal polynomial has a repeated root")
        n = min_poly.degree
        if n < 1:
            raise ValueError("minimal polynomial must have positive degree")
        _check_irreducible(min_poly)
        roots = isolate_real_roots(min_poly)
        if len(roots) != n:
            raise NotTotallyReal(
                f"only {len(roots)} of {n} roots are real")

        self.min_poly = min_poly
        self.degree = n
        if integral_basis is None:
            basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        else:
            basis = [[Fraction(x) for x in row] for row in integral_basis]
            if len(basis) != n or any(len(row) != n for row in basis):
                raise ValueError("integral basis must be an n x n matrix")
        if basis[0] != [Fraction(1)] + [Fraction(0)] * (n - 1):
            raise ValueError("basis element 0 must be the constant 1")
        self.integral_basis = tuple(tuple(row) for row in basis)
        self._basis_inv = mat_inverse(basis)
        self._embeddings: list[RootInterval] = list(roots)
        self._mp_roots: dict[tuple[int, int], mpmath.mpf] = {}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def rationals() -> "NumberField":
        return NumberField(Poly([0, 1]))

    @staticmethod
    def quadratic(d: int) -> "NumberField":
        """Q(sqrt(d)) for squarefree d > 1, with the standard maximal-order
        basis: {1, (1+theta)/2} when d = 1 mod 4, the power basis otherwise."""
        if d <= 1:
            raise ValueError("need a squarefree integer d > 1")
        p = Poly([-d, 0, 1])
        if d % 4 == 1:
            basis = [[Fraction(1), Fraction(0)], [Fraction(1, 2), Fraction(1, 2)]]
        else:
            basis = None
        return NumberField(p, basis)

    # -- elements -------------------------------------------------------

    def element(self, coords: Sequence) -> "FieldElement":
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(cs)}")
        return FieldElement(self, cs)

    def from_power(self, power: Sequence) -> "FieldElement":
        """Element from power-basis coordinates (reduced mod min_poly)."""
        q = Poly(power) % self.min_poly
        v = list(q.coeffs) + [Fraction(0)] * (self.degree - len(q.coeffs))
        return self.element(_vec_mat(v, self._basis_inv))

    def zero(self) -> "FieldElement":
        return self.element([0] * self.degree)

    def one(self) -> "FieldElement":
        return self.element([1] + [0] * (self.degree - 1))

    def generator(self) -> "FieldElement":
        return self.from_power([0, 1])

    # -- embeddings -----------------------------------------------------

    def embedding(self, i: int, width: Optional[Fraction] = None) -> RootInterval:
        r = self._embeddings[i]
        if width is not None and r.width > width:
            r = refine_root(r, width)
            self._embeddings[i] = r
        return r

    def embedding_mp(self, i: int, dps: int) -> mpmath.mpf:
        """The i-th real root of min_poly to ``dps`` decimal digits."""
        key = (i, dps)
        if key not in self._mp_roots:
            r = self.embedding(i, Fraction(1, 10 ** (dps + 5)))
            with mpmath.workdps(dps + 10):
                self._mp_roots[key] = mpmath.mpf(r.midpoint.numerator) / r.midpoint.denominator
        return self._mp_roots[key]

    def discriminant(self) -> Fraction:
        return self.min_poly.discriminant()

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        out = {"min_poly": self.min_poly.to_json()}
        out["integral_basis"] = [[rational_to_string(x) for x in row]
                                 for row in self.integral_basis]
        return out

    @staticmethod
    def from_json(data: dict) -> "NumberField":
        p = Poly.from_json(data["min_poly"])
        basis = data.get("integral_basis")
        if basis is not None:
            basis = [[rational_from_string(x) for x in row] for row in basis]
        return NumberField(p, basis)

    def __repr__(self) -> str:
        return f"NumberField({self.min_poly!r})"


def _check_irreducible(p: Poly) -> None:
    """Reject degree <= 3 polynomials with a rational root.  For monic
    integer polynomials the rational roots are integer divisors of the
    constant term, so the test is exact.  Degree >= 4 is caller-asserted."""
    n = p.degree
    if n == 1:
        return
    c0 = p.coeffs[0].numerator
    if c0 == 0:
        raise ReducibleDetected("x divides the minimal polynomial")
    if n > 3:
        return
    for d in range(1, abs(c0) + 1):
        if abs(c0) % d == 0:
            for cand in (d, -d):
                if p(Fraction(cand)) == 0:
                    raise ReducibleDetected(f"rational root {cand} detected")


@dataclass(frozen=True)
class FieldElement:
    """An element of a NumberField; coords are in the integral basis."""

    field: NumberField
    coords: tuple[Fraction, ...]

    def _same_field(self, other: "FieldElement") -> None:
        if self.field is not other.field:
            raise ValueError("elements belong to different fields")

    # -- representation conversions ------------------------------------

    def power_coords(self) -> list[Fraction]:
        return _vec_mat(self.coords, self.field.integral_basis)

    def power_poly(self) -> Poly:
        return Poly(self.power_coords())

    # -- ring / field structure ----------------------------------------

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return self.field.element([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return self.field.element([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "FieldElement":
        return self.field.element([-a for a in self.coords])

    def __mul__(self, other) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            return self.field.element([a * other for a in self.coords])
        self._same_field(other)
        prod = self.power_poly() * other.power_poly()
        return self.field.from_power((prod % self.field.min_poly).coeffs)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise DivisionByZero("cannot invert zero")
        # extended gcd of the power representative with min_poly
        a, b = self.field.min_poly, self.power_poly()
        s0, s1 = Poly.zero(), Poly.constant(1)
        while not b.is_zero:
            q, r = a.divmod(b)
            a, b = b, r
            s0, s1 = s1, s0 - q * s1
        # a = gcd = constant (min_poly irreducible)
        inv = s0.scale(1 / a.coeffs[0])
        return self.field.from_power((inv % self.field.min_poly).coeffs)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        acc, base = self.field.one(), self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldElement) and self.field is other.field
                and self.coords == other.coords)

    def __hash__(self) -> int:
        return hash((id(self.field), self.coords))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> Optional[Fraction]:
        pc = self.power_coords()
        if all(c == 0 for c in pc[1:]):
            return pc[0]
        return None

    def is_integral(self) -> bool:
        """True iff all integral-basis coordinates are integers."""
        return all(c.denominator == 1 for c in self.coords)

    def height(self) -> int:
        """Max absolute numerator over the integral-basis coordinates."""
        return max(abs(c.numerator) for c in self.coords)

    # -- embeddings -----------------------------------------------------

    def embed_sign(self, i: int) -> Sign:
        """Exact sign of the i-th real embedding."""
        if self.is_zero:
            return 0
        q = self.power_poly()
        r = self.field.embedding(i)
        while True:
            lo, hi = q.eval_interval(r.low, r.high)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            if r.is_exact:
                # the embedding value is sigma_i(x) != 0 for x != 0, so the
                # enclosure can only straddle 0 while the interval is inexact
                v = q(r.low)
                return 1 if v > 0 else -1
            r = self.field.embedding(i, r.width / 4)

    def embed_interval(self, i: int, width: Fraction) -> tuple[Fraction, Fraction]:
        """Rational enclosure of sigma_i(x) of width <= ``width``."""
        q = self.power_poly()
        r = self.field.embedding(i)
        while True:
            lo, hi = q.eval_interval(r.low, r.high)
            if hi - lo <= width:
                return lo, hi
            r = self.field.embedding(i, r.width / 4)

    def embed_mp(self, i: int, dps: int) -> mpmath.mpf:
        with mpmath.workdps(dps + 10):
            x = self.field.embedding_mp(i, dps)
            return mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator
                                   for c in reversed(self.power_coords())], x)

    # -- trace and norm -------------------------------------------------

    def _mult_matrix(self) -> list[list[Fraction]]:
        """Matrix of multiplication by self on the power basis (columns)."""
        n = self.field.degree
        q = self.power_poly()
        cols = []
        for j in range(n):
            col = (q * Poly([0] * j + [1])) % self.field.min_poly
            cs = list(col.coeffs) + [Fraction(0)] * (n - len(col.coeffs))
            cols.append(cs)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def trace(self) -> Fraction:
        m = self._mult_matrix()
        return sum((m[i][i] for i in range(len(m))), Fraction(0))

    def norm(self) -> Fraction:
        return mat_det(self._mult_matrix())

    # -- serialization --------------------------------------------------

    def to_json(self) -> list[str]:
        return [rational_to_string(c) for c in self.coords]

    def __repr__(self) -> str:
        return f"FieldElement({[str(c) for c in self.coords]})"


def element_from_json(field: NumberField, data: Sequence[str]) -> FieldElement:
    return field.element([rational_from_string(c) for c in data])


# -- square roots and rational-polynomial roots inside k ----------------


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a candidate-and-verify root search.

    ``value`` is an exactly verified root, or None.  When None,
    ``exhausted`` distinguishes a certified absence (False) from a search
    that hit its precision/denominator limits (True)."""

    value: Optional[FieldElement]
    exhausted: bool = False

    @property
    def certified_absent(self) -> bool:
        return self.value is None and not self.exhausted


_PRECISION_ROUNDS = 3
_PRECISION_STEP = 4  # extra digits multiplier per escalation round


def _mpf_to_fraction(x: mpmath.mpf) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    f = Fraction(man) * Fraction(2) ** exp
    return -f if sign else f


def _denominator_candidates(x: mpmath.mpf, den_bound: int) -> list[Fraction]:
    out = []
    f = _mpf_to_fraction(x)
    for d in (1, den_bound):
        out.append(Fraction(round(f * d), d))
    out.append(f.limit_denominator(10 ** 6))
    return out


def _embedding_matrix(field: NumberField, dps: int) -> mpmath.matrix:
    n = field.degree
    m = mpmath.matrix(n, n)
    for i in range(n):
        x = field.embedding_mp(i, dps)
        for j in range(n):
            row = field.integral_basis[j]
            m[i, j] = mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator
                                      for c in reversed(row)], x)
    return m


def _round_and_verify(field: NumberField, target: Sequence[mpmath.mpf],
                      den_bound: int, check) -> Optional[FieldElement]:
    """Solve for integral-basis coordinates matching the embedding values
    in ``target``, round, and verify exactly with ``check``."""
    try:
        sol = mpmath.lu_solve(_embedding_matrix(field, mpmath.mp.dps),
                              mpmath.matrix(list(target)))
    except ZeroDivisionError:
        return None
    coord_opts = [_denominator_candidates(sol[i], den_bound)
                  for i in range(field.degree)]
    # try the direct per-coordinate roundings, cheapest first
    for pick in zip(*coord_opts):
        cand = field.element(list(pick))
        if check(cand):
            return cand
    return None


def _default_den_bound(field: NumberField) -> int:
    d = abs(field.discriminant())
    return max(2, int(d.numerator // d.denominator))


def _sympy_theta(field: NumberField):
    import sympy

    if not hasattr(field, "_sympy_theta"):
        t = sympy.Dummy("theta")
        expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** i
                   for i, c in enumerate(field.min_poly.coeffs))
        if field.degree == 1:
            root = sympy.Rational(-field.min_poly.coeffs[0])
        else:
            root = sympy.CRootOf(sympy.Poly(expr, t), field.degree - 1)
        field._sympy_theta = root
    return field._sympy_theta


def _roots_in_field_exact(field: NumberField, p: Poly) -> list[FieldElement]:
    """Exact fallback: factor p over k with sympy and return its roots in k."""
    import sympy

    x = sympy.Symbol("x")
    theta = _sympy_theta(field)
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i
               for i, c in enumerate(p.coeffs))
    if field.degree == 1:
        factors = sympy.factor_list(expr, x)[1]
        roots = [sympy.Rational(sympy.nsimplify(-f.coeff(x, 0) / f.coeff(x, 1)))
                 for f, _ in factors if sympy.degree(f, x) == 1]
        out = []
        for r in roots:
            cand = field.element([Fraction(int(r.p), int(r.q))])
            if p(cand.power_coords()[0]) == 0:
                out.append(cand)
        return out
    factors = sympy.factor_list(expr, x, extension=theta)[1]
    out = []
    for f, _ in factors:
        if sympy.degree(f, x) != 1:
            continue
        root = sympy.simplify(-f.coeff(x, 0) / f.coeff(x, 1))
        poly_in_theta = sympy.Poly(sympy.expand(root), theta)
        power = [Fraction(0)] * field.degree
        for mono, coeff in zip(poly_in_theta.monoms(), poly_in_theta.coeffs()):
            q = sympy.Rational(coeff)
            power[mono[0]] += Fraction(int(q.p), int(q.q))
        cand = field.from_power(power)
        # exact verification in our own arithmetic
        acc = field.zero()
        for i, c in enumerate(p.coeffs):
            acc = acc + (cand ** i) * c
        if acc.is_zero:
            out.append(cand)
    return out


def has_square_root(c: FieldElement,
                    den_bound: Optional[int] = None,
                    precision_rounds: Optional[int] = None) -> SearchOutcome:
    """A y in k with y*y = c (verified exactly), if one exists.

    Absence is certified by an embedding-sign or norm obstruction, or by an
    exact factorization fallback; only if all of those are unavailable does
    the outcome carry the exhausted flag.
    """
    if precision_rounds is None:
        precision_rounds = _PRECISION_ROUNDS
    field = c.field
    if c.is_zero:
        return SearchOutcome(field.zero())
    n = field.degree
    for i in range(n):
        if c.embed_sign(i) < 0:
            return SearchOutcome(None)
    r = c.is_rational()
    if r is not None:
        s = _is_rational_square(r)
        if s is not None:
            y = field.element([s] + [0] * (n - 1))
            return SearchOutcome(y)
        if n == 1:
            return SearchOutcome(None)
    if _is_rational_square(c.norm()) is None:
        return SearchOutcome(None)  # N(y)^2 = N(c) forces a square norm

    den = den_bound if den_bound is not None else _default_den_bound(field)
    dps = 30
    for _ in range(max(1, precision_rounds)):
        with mpmath.workdps(dps):
            sqrts = [mpmath.sqrt(c.embed_mp(i, dps)) for i in range(n)]
            for pattern in itertools.product((1, -1), repeat=n - 1):
                target = [sqrts[0]] + [s * v for s, v in zip(pattern, sqrts[1:])]
                y = _round_and_verify(field, target, den,
                                      lambda cand: cand * cand == c)
                if y is not None:
                    return SearchOutcome(y)
        dps *= _PRECISION_STEP
    # exact fallback: factor x^2 - c over k
    try:
        roots = _roots_in_field_exact_ksqrt(field, c)
    except Exception:
        return SearchOutcome(None, exhausted=True)
    if roots:
        return SearchOutcome(roots[0])
    return SearchOutcome(None)


def _roots_in_field_exact_ksqrt(field: NumberField, c: FieldElement) -> list[FieldElement]:
    """Roots in k of x^2 - c, with c in k, via sympy factorization."""
    import sympy

    x = sympy.Symbol("x")
    theta = _sympy_theta(field)
    pc = c.power_coords()
    c_expr = sum(sympy.Rational(q.numerator, q.denominator) * theta ** i
                 for i, q in enumerate(pc))
    expr = x ** 2 - c_expr
    if field.degree == 1:
        factors = sympy.factor_list(expr, x)[1]
    else:
        factors = sympy.factor_list(expr, x, extension=theta)[1]
    out = []
    for f, _ in factors:
        if sympy.degree(f, x) != 1:
            continue
        root = sympy.expand(-f.coeff(x, 0) / f.coeff(x, 1))
        poly_in_theta = sympy.Poly(root, theta)
        power = [Fraction(0)] * field.degree
        for mono, coeff in zip(poly_in_theta.monoms(), poly_in_theta.coeffs()):
            q = sympy.Rational(coeff)
            power[mono[0]] += Fraction(int(q.p), int(q.q))
        cand = field.from_power(power)
        if cand * cand == c:
            out.append(cand)
    return out


def contains_root_of(field: NumberField, p: Poly,
                     den_bound: Optional[int] = None,
                     precision_rounds: Optional[int] = None) -> SearchOutcome:
    """An exact root of the rational polynomial p lying in k, if any.

    Same candidate-and-verify scheme as has_square_root: every embedding of
    a root y in k is itself a real root of p, so candidates are built from
    tuples of high-precision root values, one per embedding.
    """
    if precision_rounds is None:
        precision_rounds = _PRECISION_ROUNDS
    if p.is_zero or not p.is_monic:
        raise ValueError("expected a monic polynomial")
    if not p.is_squarefree():
        raise NotSquarefree("polynomial has a repeated root")
    n = field.degree

    def eval_in_field(y: FieldElement) -> FieldElement:
        acc = field.zero()
        for i, c in enumerate(p.coeffs):
            acc = acc + (y ** i) * c
        return acc

    real_roots = isolate_real_roots(p)
    if not real_roots:
        return SearchOutcome(None)  # k is totally real

    # exact rational roots first
    for r in real_roots:
        rr = refine_root(r, Fraction(1, 10 ** 8))
        cand = rr.midpoint.limit_denominator(10 ** 6)
        if p(cand) == 0:
            return SearchOutcome(field.element([cand] + [0] * (n - 1)))
    if n == 1:
        return SearchOutcome(None)

    den = den_bound if den_bound is not None else _default_den_bound(field)
    dps = 30
    for _ in range(max(1, precision_rounds)):
        with mpmath.workdps(dps):
            vals = []
            for r in real_roots:
                rr = refine_root(r, Fraction(1, 10 ** (dps + 5)))
                vals.append(mpmath.mpf(rr.midpoint.numerator) / rr.midpoint.denominator)
            for assign in itertools.product(range(len(vals)), repeat=n):
                target = [vals[j] for j in assign]
                y = _round_and_verify(field, target, den,
                                      lambda cand: eval_in_field(cand).is_zero)
                if y is not None:
                    return SearchOutcome(y)
        dps *= _PRECISION_STEP
    try:
        roots = _roots_in_field_exact(field, p)
    except Exception:
        return SearchOutcome(None, exhausted=True)
    if roots:
        return SearchOutcome(roots[0])
    return SearchOutcome(None)
