import pytest

from hilmod.classify import ClassKind, ElementClass, classify
from hilmod.modgrp import Mat2, psl_normalize
from hilmod.normalizer import (
    DIRECT_SUM_Z2,
    FREE_ABELIAN,
    FiniteOrderClass,
    INCONCLUSIVE,
    NormalizerType,
    ParabolicInput,
    RankMismatch,
    SEMIDIRECT_Z2,
    SEMIDIRECT_Z4,
    census_slot,
    involution_search,
    lift_to_sl,
    normalizer_json,
    normalizer_rank,
    normalizer_type_psl,
)


def _psl(field, rows):
    return psl_normalize(Mat2(*(field.element(r) for r in rows)))


@pytest.fixture
def hp_example(sqrt2):
    return _psl(sqrt2, [[1, 1], [0, 0], [0, 0], [-1, 1]])


@pytest.fixture
def parabolic(sqrt2):
    return _psl(sqrt2, [[1, 0], [1, 0], [0, 0], [1, 0]])


def test_normalizer_rank_table():
    par = ElementClass(ClassKind.TOTALLY_PARABOLIC)
    hyp = ElementClass(ClassKind.TOTALLY_HYPERBOLIC, hyperbolic_parabolic=False)
    hp = ElementClass(ClassKind.TOTALLY_HYPERBOLIC, hyperbolic_parabolic=True)
    mixed = ElementClass(ClassKind.MIXED, hyperbolic_components=1)
    assert normalizer_rank(par, 2) == 2
    assert normalizer_rank(hyp, 2) == 2
    assert normalizer_rank(hp, 2) == 1
    assert normalizer_rank(mixed, 3) == 1
    with pytest.raises(FiniteOrderClass):
        normalizer_rank(ElementClass(ClassKind.TOTALLY_ELLIPTIC, order=2), 2)


def test_involution_search_hp(sqrt2, hp_example):
    beta = involution_search(hp_example, 2)
    assert beta is not None
    # the canonical witness, as a PSL class: [[0,-1],[1,0]] up to sign
    want = Mat2(sqrt2.zero(), -sqrt2.one(), sqrt2.one(), sqrt2.zero())
    assert beta.same_class(want)
    assert (beta * beta).is_identity()
    assert (beta * hp_example * beta.inv()).rep == hp_example.inv().rep


def test_involution_search_fuchsian(rationals):
    a = _psl(rationals, [[2], [1], [1], [1]])
    beta = involution_search(a, 1)
    assert beta is not None
    assert (beta * a * beta.inv()).rep == a.inv().rep


def test_involution_search_empty_space(hp_example):
    assert involution_search(hp_example, -1) is None


def test_involution_search_rejects_parabolic(parabolic):
    with pytest.raises(ParabolicInput):
        involution_search(parabolic, 2)


def test_normalizer_type_parabolic(parabolic):
    nt = normalizer_type_psl(parabolic)
    assert nt == NormalizerType(FREE_ABELIAN, 2)


def test_normalizer_type_hp(hp_example):
    nt = normalizer_type_psl(hp_example, 2)
    assert nt == NormalizerType(SEMIDIRECT_Z2, 1)


def test_normalizer_type_inconclusive(sqrt2):
    mixed = _psl(sqrt2, [[1, 1], [1, 1], [2, 0], [1, 1]])
    nt = normalizer_type_psl(mixed, 0)  # height 0 exhausts immediately
    assert nt.kind == INCONCLUSIVE and nt.rank == 1


def test_normalizer_type_rejects_elliptic(rationals):
    s = _psl(rationals, [[0], [-1], [1], [0]])
    with pytest.raises(FiniteOrderClass):
        normalizer_type_psl(s)


def test_lift_to_sl():
    assert lift_to_sl(NormalizerType(FREE_ABELIAN, 2)).kind == DIRECT_SUM_Z2
    assert lift_to_sl(NormalizerType(SEMIDIRECT_Z2, 1)).kind == SEMIDIRECT_Z4
    assert lift_to_sl(NormalizerType(INCONCLUSIVE, 3)).kind == INCONCLUSIVE
    assert lift_to_sl(NormalizerType(FREE_ABELIAN, 2)).rank == 2


def test_census_slot_table():
    par = ElementClass(ClassKind.TOTALLY_PARABOLIC)
    hyp = ElementClass(ClassKind.TOTALLY_HYPERBOLIC, hyperbolic_parabolic=False)
    hp = ElementClass(ClassKind.TOTALLY_HYPERBOLIC, hyperbolic_parabolic=True)
    mixed = ElementClass(ClassKind.MIXED, hyperbolic_components=1)
    ell = ElementClass(ClassKind.TOTALLY_ELLIPTIC, order=4)
    free = lambda r: NormalizerType(FREE_ABELIAN, r)
    semi = lambda r: NormalizerType(SEMIDIRECT_Z2, r)
    assert census_slot(par, free(2), 2).kind == "P"
    assert census_slot(hyp, free(2), 2).kind == "H1"
    assert census_slot(hyp, semi(2), 2).kind == "H2"
    assert census_slot(hp, free(1), 2).kind == "HP1"
    assert census_slot(hp, semi(1), 2).kind == "HP2"
    assert census_slot(mixed, free(1), 2) .kind == "M1"
    assert census_slot(mixed, semi(1), 3).j == 1
    assert census_slot(ell, None, 2).kind == "finite_maximal"
    assert census_slot(ell, None, 2).order == 4
    assert census_slot(mixed, NormalizerType(INCONCLUSIVE, 1), 2).kind == "undetermined"
    with pytest.raises(RankMismatch):
        census_slot(hp, free(2), 2)
    with pytest.raises(RankMismatch):
        census_slot(par, None, 2)


def test_normalizer_json(hp_example):
    out = normalizer_json(hp_example, height_bound=2)
    assert out["rank"] == 1
    assert out["psl_type"] == "semidirect_z2"
    assert out["sl_type"] == "semidirect_z4"
    assert out["census_slot"] == "HP2"
    assert out["witness_involution"] is not None


def test_normalizer_json_mixed_slot(sqrt2):
    mixed = _psl(sqrt2, [[1, 1], [1, 1], [2, 0], [1, 1]])
    out = normalizer_json(mixed, height_bound=2)
    assert out["rank"] == 1
    if out["psl_type"] == "semidirect_z2":
        assert out["census_slot"] == "M2{1}"
    else:
        assert out["census_slot"] == "undetermined"
