import random
from fractions import Fraction

import pytest

from hilmod.exactnum import NotSquarefree, Poly
from hilmod.numfield import (
    NotMonic,
    NotTotallyReal,
    NumberField,
    ReducibleDetected,
    contains_root_of,
    element_from_json,
    has_square_root,
)


def test_field_construction(sqrt2):
    assert sqrt2.degree == 2
    assert sqrt2.integral_basis == ((Fraction(1), Fraction(0)),
                                    (Fraction(0), Fraction(1)))
    r0, r1 = sqrt2.embedding(0), sqrt2.embedding(1)
    assert r0.high < 0 < r1.low  # ascending order, sigma_1 smallest


def test_field_construction_errors():
    with pytest.raises(NotTotallyReal):
        NumberField(Poly([1, 0, 1]))
    with pytest.raises(NotMonic):
        NumberField(Poly([1, 0, 2]))
    with pytest.raises(NotMonic):
        NumberField(Poly([Fraction(1, 2), 0, 1]))
    with pytest.raises(NotSquarefree):
        NumberField(Poly([1, -2, 1]))
    with pytest.raises(ReducibleDetected):
        NumberField(Poly([-4, 0, 1]))  # (x-2)(x+2)
    with pytest.raises(ReducibleDetected):
        NumberField(Poly([0, 1, 0, 1]))  # x^3 + x, divisible by x


def test_quadratic_convenience_basis(sqrt5):
    # d = 1 mod 4 ships the maximal-order basis {1, (1+theta)/2}
    b = sqrt5.element([0, 1])
    assert b.power_coords() == [Fraction(1, 2), Fraction(1, 2)]
    assert b.is_integral()
    assert (b * b - b - sqrt5.one()).is_zero  # satisfies x^2 - x - 1


def test_arith_examples(sqrt2):
    th = sqrt2.generator()
    one = sqrt2.one()
    assert (one + th) * (th - one) == one
    assert (one + th).inverse() == th - one
    assert (one + th) ** 2 == sqrt2.element([3, 2])


def test_division_and_powers(sqrt2):
    th = sqrt2.generator()
    x = sqrt2.element([2, -3])
    assert (x / x) == sqrt2.one()
    assert x ** -2 == (x * x).inverse()
    with pytest.raises(ZeroDivisionError):
        sqrt2.zero().inverse()


def test_inverse_property_random(sqrt2, sqrt5, cubic7):
    rng = random.Random(5)
    for field in (sqrt2, sqrt5, cubic7):
        for _ in range(50):
            x = field.element([Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                               for _ in range(field.degree)])
            if x.is_zero:
                continue
            assert x * x.inverse() == field.one()


def test_embed_sign_examples(sqrt2):
    th = sqrt2.generator()
    one = sqrt2.one()
    x = one - th
    assert x.embed_sign(0) == 1   # 1 + sqrt(2)
    assert x.embed_sign(1) == -1  # 1 - sqrt(2)
    assert sqrt2.zero().embed_sign(0) == 0
    y = sqrt2.element([3, 2])
    assert y.embed_sign(0) == 1 and y.embed_sign(1) == 1


def test_embed_sign_against_mp(sqrt2, cubic7):
    rng = random.Random(6)
    for field in (sqrt2, cubic7):
        for _ in range(200):
            x = field.element([Fraction(rng.randint(-20, 20), rng.randint(1, 5))
                               for _ in range(field.degree)])
            for i in range(field.degree):
                v = x.embed_mp(i, 50)
                s = x.embed_sign(i)
                if x.is_zero:
                    assert s == 0
                else:
                    assert (s > 0) == (v > 0)


def test_is_integral(sqrt2, sqrt5):
    th = sqrt2.generator()
    assert (sqrt2.one() + th).is_integral()
    assert not sqrt2.element([0, Fraction(1, 2)]).is_integral()
    assert sqrt5.element([0, 1]).is_integral()


def test_trace_norm(sqrt2):
    th = sqrt2.generator()
    assert th.trace() == 0
    assert th.norm() == -2
    x = sqrt2.element([3, 2])
    assert x.trace() == 6
    assert x.norm() == 9 - 2 * 4


def test_trace_brackets_embedding_sum(sqrt2, cubic7):
    rng = random.Random(7)
    for field in (sqrt2, cubic7):
        for _ in range(20):
            x = field.element([rng.randint(-5, 5) for _ in range(field.degree)])
            w = Fraction(1, 10 ** 8)
            lo = sum(x.embed_interval(i, w)[0] for i in range(field.degree))
            hi = sum(x.embed_interval(i, w)[1] for i in range(field.degree))
            assert lo <= x.trace() <= hi


def test_has_square_root_examples(sqrt2):
    th = sqrt2.generator()
    four = sqrt2.element([4, 0])
    assert has_square_root(four).value == sqrt2.element([2, 0])
    got = has_square_root(sqrt2.element([3, 2])).value
    assert got is not None and got * got == sqrt2.element([3, 2])
    out = has_square_root(th)
    assert out.value is None and out.certified_absent


def test_has_square_root_negative_embedding(sqrt2):
    x = sqrt2.element([1, -1])  # 1 - theta, negative at the larger root
    out = has_square_root(x)
    assert out.value is None and out.certified_absent


def test_has_square_root_roundtrip(sqrt2, sqrt5):
    rng = random.Random(8)
    for field in (sqrt2, sqrt5):
        for _ in range(60):
            x = field.element([rng.randint(-3, 3) for _ in range(field.degree)])
            got = has_square_root(x * x).value
            assert got is not None and got in (x, -x)


def test_contains_root_of(sqrt2, sqrt5):
    assert contains_root_of(sqrt2, Poly([-2, 1])).value == sqrt2.element([2, 0])
    r = contains_root_of(sqrt5, Poly([-1, 1, 1]))
    assert r.value == sqrt5.element([-1, 1])  # 2cos(2*pi/5) = (-1+theta)/2
    out = contains_root_of(sqrt2, Poly([-3, 0, 1]))
    assert out.value is None and out.certified_absent


def test_contains_root_of_input_checks(sqrt2):
    with pytest.raises(ValueError):
        contains_root_of(sqrt2, Poly([1, 0, 2]))
    with pytest.raises(NotSquarefree):
        contains_root_of(sqrt2, Poly([1, -2, 1]))


def test_json_roundtrips(sqrt5):
    data = sqrt5.to_json()
    back = NumberField.from_json(data)
    assert back.min_poly == sqrt5.min_poly
    assert back.integral_basis == sqrt5.integral_basis
    x = sqrt5.element([Fraction(1, 2), -3])
    assert element_from_json(sqrt5, x.to_json()).coords == x.coords
