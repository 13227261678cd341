import random
from fractions import Fraction
from pathlib import Path

import pytest

from hilmod import cli
from hilmod.cli import ParseError, main, parse_element, parse_matrix, render_element

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

SQRT2 = str(DATA / "sqrt2.json")
SQRT5 = str(DATA / "sqrt5.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_element_basic(sqrt2):
    th = sqrt2.generator()
    one = sqrt2.one()
    assert parse_element("1+1g", sqrt2) == one + th
    assert parse_element("1 + 1*g", sqrt2) == one + th
    assert parse_element("g", sqrt2) == th
    assert parse_element("-g+2", sqrt2) == sqrt2.element([2, -1])
    assert parse_element("0", sqrt2) == sqrt2.zero()
    assert parse_element("3/2", sqrt2) == sqrt2.element([Fraction(3, 2), 0])


def test_parse_element_power_reduction(sqrt2):
    # theta^3 = 2*theta for x^2 - 2
    assert parse_element("g^3", sqrt2) == sqrt2.element([0, 2])
    assert parse_element("g^2", sqrt2) == sqrt2.element([2, 0])


def test_parse_element_basis_change(sqrt5):
    # (1 + theta)/2 is the second basis element of Q(sqrt5)
    assert parse_element("1/2+1/2g", sqrt5) == sqrt5.element([0, 1])


def test_parse_element_errors(sqrt2):
    for bad in ("", "1+", "1**g", "*g", "1 2", "g^", "q", "1//2"):
        with pytest.raises(ParseError):
            parse_element(bad, sqrt2)
    try:
        parse_element("1+?", sqrt2)
    except ParseError as exc:
        assert exc.position == 2


def test_render_parse_roundtrip(sqrt2, sqrt5, cubic7):
    rng = random.Random(13)
    for field in (sqrt2, sqrt5, cubic7):
        for _ in range(300):
            x = field.element([Fraction(rng.randint(-30, 30), rng.randint(1, 9))
                               for _ in range(field.degree)])
            assert parse_element(render_element(x), field) == x


def test_parse_matrix(sqrt2):
    m = parse_matrix("1+1g;1+1g;2;1+1g", sqrt2)
    assert m.a == sqrt2.element([1, 1]) and m.c == sqrt2.element([2, 0])
    with pytest.raises(ParseError):
        parse_matrix("1;2;3", sqrt2)


def _check_golden(name: str, payload: str):
    want = (GOLDEN / name).read_text()
    assert payload == want


def test_classify_golden(capsys):
    code, out, _ = run(capsys, "classify", "--field", SQRT2,
                       "--matrix", "1+1g;1+1g;2;1+1g")
    assert code == 0
    _check_golden("classify_mixed.json", out)
    code2, out2, _ = run(capsys, "classify", "--field", SQRT2,
                         "--matrix", "1+1g;1+1g;2;1+1g")
    assert out2 == out  # byte-identical across runs


def test_normalizer_golden(capsys):
    code, out, _ = run(capsys, "normalizer", "--field", SQRT2,
                       "--matrix", "1+1g;0;0;-1+1g", "--height", "2")
    assert code == 0
    _check_golden("normalizer_hp.json", out)


def test_whdecomp_golden(capsys):
    code, out, _ = run(capsys, "wh-decomp", "--census", str(DATA / "census_p.json"),
                       "--q", "1")
    assert code == 0
    _check_golden("whdecomp_p.json", out)


def test_ktop_golden(capsys):
    code, out, err = run(capsys, "ktop", "--field", SQRT2, "--class-number", "1",
                         "--finite-census", str(DATA / "fc.json"), "--degree", "0")
    assert code == 0
    assert "lower bound only" in err  # cusp dims defaulted
    _check_golden("ktop_even.json", out)


def test_field_info_golden(capsys):
    code, out, _ = run(capsys, "field-info", "--field", SQRT5)
    assert code == 0
    _check_golden("field_info_sqrt5.json", out)


def test_exit_code_invalid_input(capsys):
    code, out, err = run(capsys, "classify", "--field", SQRT2, "--matrix", "1+;2;3;4")
    assert code == 2 and out == "" and "bad matrix literal" in err
    code2, _, _ = run(capsys, "classify", "--field", "/nonexistent.json",
                      "--matrix", "1;0;0;1")
    assert code2 == 2


def test_exit_code_not_sl2(capsys):
    code, out, err = run(capsys, "classify", "--field", SQRT2, "--matrix", "1;0;0;2")
    assert code == 3 and out == ""


def test_exit_code_inconclusive(capsys):
    # height 0 exhausts the involution search on the mixed example
    code, out, _ = run(capsys, "normalizer", "--field", SQRT2,
                       "--matrix", "1+1g;1+1g;2;1+1g", "--height", "0")
    assert code == 4
    assert '"psl_type": "inconclusive"' in out
    assert '"census_slot": "undetermined"' in out


def test_torsion_search(capsys):
    code, out, _ = run(capsys, "torsion-search", "--field", SQRT2,
                       "--max-order", "8")
    assert code == 0
    assert '"orders": [\n    1,\n    2,\n    3,\n    4,\n    6,\n    8\n  ]' in out


def test_human_format(capsys):
    code, out, _ = run(capsys, "classify", "--field", SQRT2,
                       "--matrix", "1+1g;1+1g;2;1+1g", "--format", "human")
    assert code == 0
    assert out.startswith("class: ")


def test_stdin_field(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(Path(SQRT2).read_text()))
    code, out, _ = run(capsys, "field-info", "--field", "-")
    assert code == 0 and '"degree": 2' in out


def test_precision_rounds_env(capsys, monkeypatch):
    monkeypatch.setenv("HILMOD_PRECISION_ROUNDS", "2")
    from hilmod import numfield
    monkeypatch.setattr(numfield, "_PRECISION_ROUNDS", numfield._PRECISION_ROUNDS)
    code, _, _ = run(capsys, "field-info", "--field", SQRT2)
    assert code == 0
    assert numfield._PRECISION_ROUNDS == 2
