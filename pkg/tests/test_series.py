import json
import math
import random
from fractions import Fraction

import pytest

from chromaplex import (
    Q,
    QPolynomial,
    shifted_binomial_poly,
    TruncatedSeries,
    binomial_poly,
    exponents_below,
    falling_factorial_poly,
    fraction_from_str,
    fraction_to_str,
    qpoly_eval,
    qpoly_from_json,
    qpoly_interpolate,
    qpoly_pretty,
    qpoly_to_json,
    series_add,
    series_from_json,
    series_int_pow,
    series_inverse,
    series_mul,
    series_one,
    series_scale,
    series_to_json,
    series_zero,
)

F = Fraction


def s(n, trunc, terms):
    return TruncatedSeries(n, tuple(trunc), {tuple(e): F(c) for e, c in terms.items()})


def test_normalization():
    a = s(2, (2, 2), {(0, 0): 1, (1, 0): 0, (3, 0): 5})
    assert a.terms == {(0, 0): F(1)}
    assert a.trunc == (2, 2)
    with pytest.raises(ValueError):
        TruncatedSeries(2, (2, 2), {(0, 0): 0.5})
    with pytest.raises(ValueError):
        TruncatedSeries(2, (2, 2), {(0,): F(1)})
    with pytest.raises(ValueError):
        TruncatedSeries(1, (2,), {(-1,): F(1)})


def test_exponents_below_graded_lex():
    got = list(exponents_below((1, 2)))
    assert got[0] == (0, 0)
    assert len(got) == 6
    assert set(got) == {(a, b) for a in range(2) for b in range(3)}
    degrees = [sum(e) for e in got]
    assert degrees == sorted(degrees)


def test_add_scale_mul():
    a = s(1, (3,), {(0,): 1, (1,): -1})
    b = s(1, (3,), {(1,): 1, (2,): 4})
    assert series_add(a, b).terms == {(0,): F(1), (2,): F(4)}
    assert series_scale(a, F(1, 2)).terms == {(0,): F(1, 2), (1,): F(-1, 2)}
    prod = series_mul(a, b)
    assert prod.terms == {(1,): F(1), (2,): F(3), (3,): F(-4)}
    assert series_mul(a, series_one(1, (3,))) == a
    assert series_mul(a, series_zero(1, (3,))) == series_zero(1, (3,))


def test_mul_truncates_to_window():
    a = s(1, (2,), {(1,): 1})
    assert series_mul(a, a).terms == {(2,): F(1)}
    assert series_mul(series_mul(a, a), a) == series_zero(1, (2,))


def test_inverse_geometric():
    a = s(1, (5,), {(0,): 1, (1,): -1})
    inv = series_inverse(a)
    assert inv.terms == {(k,): F(1) for k in range(6)}


def test_inverse_known_coefficients():
    two = s(2, (1, 1), {(0, 0): 1, (1, 0): 1, (0, 1): 1})
    assert series_inverse(two).terms[(1, 1)] == F(2)
    one = s(1, (2,), {(0,): 1, (1,): 1})
    assert series_int_pow(one, -2).terms[(2,)] == F(3)
    with pytest.raises(ValueError):
        series_inverse(s(1, (2,), {(1,): 1}))


def test_int_pow():
    f = s(2, (2, 2), {(0, 0): 1, (1, 0): 1, (0, 1): 1})
    cube = series_int_pow(f, 3)
    assert cube.terms[(1, 1)] == F(6)
    assert series_int_pow(f, 0) == series_one(2, (2, 2))
    assert series_int_pow(f, 1) == f
    sq = series_mul(f, f)
    assert series_int_pow(f, 2) == sq
    assert series_mul(series_int_pow(f, -3), cube) == series_one(2, (2, 2))


def test_int_pow_matches_repeated_mul_random():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 3)
        trunc = tuple(rng.randint(0, 2) for _ in range(n))
        terms = {}
        for e in exponents_below(trunc):
            if rng.random() < 0.5:
                terms[e] = F(rng.randint(-3, 3))
        terms[(0,) * n] = F(rng.choice([1, -1, 2]))
        f = TruncatedSeries(n, trunc, terms)
        inv = series_inverse(f)
        assert series_mul(f, inv) == series_one(n, trunc)
        p = rng.randint(2, 4)
        acc = f
        for _ in range(p - 1):
            acc = series_mul(acc, f)
        assert series_int_pow(f, p) == acc


def test_series_json_round_trip():
    f = s(2, (2, 1), {(0, 0): 1, (2, 1): F(-7, 3)})
    obj = series_to_json(f)
    assert obj["terms"][0] == {"e": [0, 0], "c": "1"}
    assert series_from_json(obj) == f
    assert json.dumps(series_to_json(f)) == json.dumps(series_to_json(f))
    dup = {"n": 1, "trunc": [2], "terms": [{"e": [1], "c": "1"}, {"e": [1], "c": "2"}]}
    with pytest.raises(ValueError):
        series_from_json(dup)


def test_fraction_strings():
    assert fraction_to_str(F(-7, 3)) == "-7/3"
    assert fraction_to_str(F(5)) == "5"
    assert fraction_from_str("-7/3") == F(-7, 3)
    assert fraction_from_str("5") == F(5)
    with pytest.raises(ValueError):
        fraction_from_str("0.5")


def test_qpolynomial_arithmetic():
    p = Q * Q - Q + 1
    assert p.coeffs == (F(1), F(-1), F(1))
    assert p.degree == 2
    assert p.eval(3) == F(7)
    assert qpoly_eval(p, F(1, 2)) == F(3, 4)
    assert (p - p).coeffs == ()
    assert (p * 0).degree == -1
    assert (Q * 2 / 2) == Q
    assert QPolynomial((F(1), F(0))).coeffs == (F(1),)


def test_binomial_and_falling():
    assert binomial_poly(0) == QPolynomial((F(1),))
    assert binomial_poly(2) == Q * (Q - 1) / 2
    assert falling_factorial_poly(3) == Q * (Q - 1) * (Q - 2)
    shifted = shifted_binomial_poly(3, 2)
    assert shifted.eval(5) == F(1)
    assert shifted.eval(7) == F(6)
    for q in range(8):
        assert binomial_poly(3).eval(q) == F(math.comb(q, 3))


def test_interpolation():
    p = Q * Q * Q - 7 * Q + 2
    pts = [(q, p.eval(q)) for q in range(4)]
    assert qpoly_interpolate(pts) == p
    target = (Q * Q * Q * Q - 2 * Q * Q * Q + 11 * Q * Q + 14 * Q + 24) / 24
    pts = [(q, target.eval(q)) for q in (0, 1, 2, 3, 4)]
    assert qpoly_interpolate(pts) == target
    with pytest.raises(ValueError):
        qpoly_interpolate([(1, F(1)), (1, F(2))])


def test_qpoly_json_and_pretty():
    p = Q * Q * (Q - 1) * (Q - 1) * (Q * Q - 4) / 4
    assert qpoly_pretty(p) == "1/4*q^6 - 1/2*q^5 - 3/4*q^4 + 2*q^3 - q^2"
    assert qpoly_from_json(qpoly_to_json(p)) == p
    assert qpoly_pretty(QPolynomial()) == "0"
    assert qpoly_pretty(QPolynomial((F(1),))) == "1"
    assert qpoly_pretty(Q * Q - 2 * Q + 1) == "q^2 - 2*q + 1"
