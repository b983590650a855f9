"""Sequence generators: worked examples, invariants, persistence."""
from fractions import Fraction

import pytest

from pairlab.errors import GenerationError, ValidationError
from pairlab.seqgen import (ArithmeticProgression, Convex, Explicit, FromFile,
                            Lacunary, Monomial, PiatetskiShapiro, Polynomial,
                            PowersOfTwo, floor_power, generate, iroot,
                            load_sequence, parse_spec, save_sequence,
                            spec_label, validate_convex)


def test_monomial_example():
    assert generate(Monomial(2), 4).values == (1, 4, 9, 16)


def test_pow2_example():
    assert generate(PowersOfTwo(), 4).values == (2, 4, 8, 16)


def test_floor_power_example():
    seq = generate(PiatetskiShapiro(Fraction(1), Fraction(13, 10)), 5)
    assert seq.values == (1, 2, 4, 6, 8)


def test_monomial_matches_integer_powering():
    for d in range(1, 6):
        seq = generate(Monomial(d), 100)
        assert seq.values == tuple(x ** d for x in range(1, 101))


def test_lacunary_ratio_exact():
    for c in (Fraction(3, 2), Fraction(2), Fraction(11, 10)):
        vals = generate(Lacunary(c), 40).values
        for a, b in zip(vals, vals[1:]):
            # b/a >= c by integer cross-multiplication
            assert b * c.denominator >= a * c.numerator


def test_lacunary_takes_plus_one_branch_when_ratio_small():
    assert generate(Lacunary(Fraction(11, 10)), 6).values == (1, 2, 3, 4, 5, 6)


def test_polynomial_duplicate_error_names_indices():
    # 4x^2 - 20x + 26 hits the value 2 at x = 2 and x = 3
    with pytest.raises(GenerationError, match="indices 2 and 3"):
        generate(Polynomial((26, -20, 4)), 3)


def test_polynomial_leading_coefficient_validation():
    with pytest.raises(ValidationError):
        generate(Polynomial((1, -1)), 4)
    with pytest.raises(ValidationError):
        generate(Polynomial((5,)), 4)


def test_value_cap_enforced():
    with pytest.raises(ValidationError):
        generate(PowersOfTwo(), 126)


def test_floor_power_parameter_validation():
    with pytest.raises(ValidationError):
        generate(PiatetskiShapiro(Fraction(1), Fraction(1)), 5)
    with pytest.raises(ValidationError):
        generate(PiatetskiShapiro(Fraction(1), Fraction(3, 2)), 5)
    with pytest.raises(ValidationError):
        generate(PiatetskiShapiro(Fraction(1, 2), Fraction(13, 10)), 5)


def test_floor_power_against_mpmath():
    import mpmath
    with mpmath.workprec(300):
        for x in range(1, 60):
            want = int(mpmath.floor(mpmath.mpf(x) ** (mpmath.mpf(13) / 10)))
            assert floor_power(x, Fraction(1), Fraction(13, 10)) == want


def test_iroot_exact():
    for t in range(200):
        for q in (1, 2, 3, 5):
            y = iroot(t, q)
            assert y ** q <= t < (y + 1) ** q


def test_validate_convex_examples():
    assert validate_convex(generate(Monomial(2), 4)) == (True, None)
    ok, where = validate_convex(generate(ArithmeticProgression(1, 1), 4))
    assert not ok and where == 2
    assert validate_convex(generate(PowersOfTwo(), 5)) == (True, None)


def test_bochkarev_rule_generates_convex_sequences():
    # at the default start the floors tie, so the convexity gate trips
    with pytest.raises(GenerationError, match="convex rule violated"):
        generate(Convex("bochkarev", (Fraction(3, 2),)), 12)
    seq = generate(Convex("bochkarev", (Fraction(3, 2), 16)), 12)
    assert seq.n == 12
    assert list(seq.values)[:3] == [101, 117, 136]
    assert validate_convex(seq) == (True, None)


def test_file_round_trip(tmp_path):
    seq = generate(Monomial(3), 20)
    path = str(tmp_path / "seq.txt")
    save_sequence(seq, path)
    back = load_sequence(path)
    assert back.values == seq.values
    prefix = generate(FromFile(path), 10)
    assert prefix.values == seq.values[:10]


def test_load_rejects_bad_files(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("3\n2\n")
    with pytest.raises(ValidationError):
        load_sequence(str(p))
    p2 = tmp_path / "nonint.txt"
    p2.write_text("1\ntwo\n")
    with pytest.raises(ValidationError, match="not an integer"):
        load_sequence(str(p2))
    with pytest.raises(ValidationError):
        load_sequence(str(tmp_path / "missing.txt"))


def test_spec_label_parse_round_trip():
    specs = [Monomial(2), Polynomial((1, 2, 3)), Lacunary(Fraction(3, 2), 4),
             PowersOfTwo(), PiatetskiShapiro(Fraction(1), Fraction(13, 10)),
             ArithmeticProgression(5, 3), Explicit((4, 1, 9)),
             Convex("bochkarev", (Fraction(3, 2), 3))]
    for spec in specs:
        assert parse_spec(spec_label(spec)) == spec


def test_parse_spec_rejects_malformed():
    for text in ("nope:1", "mono:x", "ps:1", ""):
        with pytest.raises(ValidationError):
            parse_spec(text)


def test_generated_invariants():
    specs = [Monomial(3), Polynomial((2, 0, 1)), Lacunary(Fraction(2)),
             PowersOfTwo(), PiatetskiShapiro(Fraction(1), Fraction(13, 10)),
             ArithmeticProgression(2, 5)]
    for spec in specs:
        vals = generate(spec, 30).values
        assert len(set(vals)) == 30
        assert all(v >= 1 for v in vals)
        assert all(b > a for a, b in zip(vals, vals[1:]))


def test_minimum_length():
    with pytest.raises(ValidationError):
        generate(Monomial(1), 1)
