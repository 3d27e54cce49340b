"""Exact truncated multivariate power series and univariate q-polynomials.

Representation
--------------
A truncated series in variables x_1..x_n is a sparse dict mapping exponent
tuples (e_1, ..., e_n) to nonzero ``Fraction`` coefficients, together with a
componentwise truncation vector ``trunc``: every exponent satisfies
e_i <= trunc[i], and all arithmetic silently drops terms that leave the
truncation window.  Coefficients are exact rationals throughout; there is no
floating point anywhere in this package.

A ``QPolynomial`` is a dense univariate polynomial over ``Fraction`` in a
single variable q, used for counting polynomials.  Coefficients are stored
ascending with trailing zeros stripped, so equality of values is equality of
representations.
"""

from __future__ import annotations

import itertools
import math
import re
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_fraction(value: int | str | Fraction) -> Fraction:
    if isinstance(value, float):
        raise ValueError("floating point coefficients are not accepted")
    return Fraction(value)


# ---------------------------------------------------------------------------
# truncated multivariate series
# ---------------------------------------------------------------------------


@dataclass
class TruncatedSeries:
    """Sparse exact series modulo (x_1^(t_1+1), ..., x_n^(t_n+1)).

    Instances are treated as immutable after construction; all operations
    return new series.
    """

    n: int
    trunc: tuple[int, ...]
    terms: dict[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("need n >= 0")
        self.trunc = tuple(int(t) for t in self.trunc)
        if len(self.trunc) != self.n:
            raise ValueError("truncation vector length must equal n")
        if any(t < 0 for t in self.trunc):
            raise ValueError("truncation bounds must be >= 0")
        clean: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            e = tuple(int(v) for v in e)
            if len(e) != self.n or any(v < 0 for v in e):
                raise ValueError(f"bad exponent {e!r} for n={self.n}")
            if any(v > t for v, t in zip(e, self.trunc)):
                continue
            c = _as_fraction(c)
            if c != 0:
                clean[e] = c
        self.terms = clean

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(e), ZERO)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.n, self.trunc, self.terms) == (other.n, other.trunc, other.terms)


def series_zero(n: int, trunc: Sequence[int]) -> TruncatedSeries:
    return TruncatedSeries(n, tuple(trunc), {})


def series_one(n: int, trunc: Sequence[int]) -> TruncatedSeries:
    return TruncatedSeries(n, tuple(trunc), {(0,) * n: ONE})


def exponents_below(trunc: Sequence[int]) -> Iterator[Exponent]:
    """All exponent tuples e with 0 <= e_i <= trunc[i], graded lex order."""
    every = itertools.product(*(range(t + 1) for t in trunc))
    return iter(sorted(every, key=lambda e: (sum(e), e)))


def _check_compatible(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.n != b.n or a.trunc != b.trunc:
        raise ValueError(
            f"incompatible series: n/trunc ({a.n}, {a.trunc}) vs ({b.n}, {b.trunc})"
        )


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_compatible(a, b)
    terms = dict(a.terms)
    for e, c in b.terms.items():
        s = terms.get(e, ZERO) + c
        if s:
            terms[e] = s
        else:
            terms.pop(e, None)
    return TruncatedSeries(a.n, a.trunc, terms)


def series_scale(a: TruncatedSeries, c: int | Fraction) -> TruncatedSeries:
    c = _as_fraction(c)
    if c == 0:
        return series_zero(a.n, a.trunc)
    return TruncatedSeries(a.n, a.trunc, {e: v * c for e, v in a.terms.items()})


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product, discarding exponents outside the truncation window."""
    _check_compatible(a, b)
    trunc = a.trunc
    terms: dict[Exponent, Fraction] = {}
    for e1, c1 in a.terms.items():
        for e2, c2 in b.terms.items():
            e = tuple(v1 + v2 for v1, v2 in zip(e1, e2))
            if any(v > t for v, t in zip(e, trunc)):
                continue
            s = terms.get(e, ZERO) + c1 * c2
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
    return TruncatedSeries(a.n, trunc, terms)


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; requires a nonzero constant term.

    Coefficients are found degreewise: once every coefficient of the inverse
    at exponents of smaller total degree is known, the coefficient at e is
    determined by (a * g)[x^e] = [e == 0].
    """
    zero = (0,) * a.n
    f0 = a.terms.get(zero, ZERO)
    if f0 == 0:
        raise ValueError("series has zero constant term, not invertible")
    inv0 = 1 / f0
    g: dict[Exponent, Fraction] = {}
    nonconst = [(e, c) for e, c in a.terms.items() if e != zero]
    for e in exponents_below(a.trunc):
        if e == zero:
            g[zero] = inv0
            continue
        acc = ZERO
        for d, c in nonconst:
            if all(dv <= ev for dv, ev in zip(d, e)):
                rest = tuple(ev - dv for ev, dv in zip(e, d))
                gc = g.get(rest)
                if gc is not None:
                    acc += c * gc
        if acc:
            g[e] = -acc * inv0
    return TruncatedSeries(a.n, a.trunc, g)


def series_int_pow(a: TruncatedSeries, q: int) -> TruncatedSeries:
    """a**q for any integer q (negative powers invert first)."""
    if not isinstance(q, int):
        raise ValueError("exponent must be an integer")
    if q < 0:
        return series_int_pow(series_inverse(a), -q)
    result = series_one(a.n, a.trunc)
    base = a
    k = q
    while k:
        if k & 1:
            result = series_mul(result, base)
        base = series_mul(base, base) if k > 1 else base
        k >>= 1
    return result


# ---------------------------------------------------------------------------
# JSON round-trip
# ---------------------------------------------------------------------------


def fraction_to_str(c: Fraction) -> str:
    return str(c)


def fraction_from_str(s: str) -> Fraction:
    if not isinstance(s, str) or not re.fullmatch(r"-?\d+(/[1-9]\d*)?", s):
        raise ValueError(f"expected an integer-ratio string, got {s!r}")
    return Fraction(s)


def series_to_json(a: TruncatedSeries) -> dict:
    items = sorted(a.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    return {
        "n": a.n,
        "trunc": list(a.trunc),
        "terms": [{"e": list(e), "c": fraction_to_str(c)} for e, c in items],
    }


def series_from_json(obj: Mapping) -> TruncatedSeries:
    try:
        n = int(obj["n"])
        trunc = tuple(int(t) for t in obj["trunc"])
        raw = obj["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed series object: {exc}") from exc
    terms: dict[Exponent, Fraction] = {}
    for item in raw:
        e = tuple(int(v) for v in item["e"])
        if e in terms:
            raise ValueError(f"duplicate exponent {e} in series terms")
        if len(e) != n or any(v < 0 for v in e) or any(v > t for v, t in zip(e, trunc)):
            raise ValueError(f"exponent {e} outside truncation window {trunc}")
        terms[e] = fraction_from_str(item["c"])
    return TruncatedSeries(n, trunc, terms)


# ---------------------------------------------------------------------------
# polynomials in the color-count variable q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QPolynomial:
    """Univariate polynomial over Fraction, ascending coefficients."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        cs = [_as_fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def eval(self, v: int | Fraction) -> Fraction:
        v = _as_fraction(v)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def __add__(self, other: QPolynomial | int | Fraction) -> QPolynomial:
        if not isinstance(other, QPolynomial):
            other = qpoly_const(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(
            tuple(
                (self.coeffs[i] if i < len(self.coeffs) else ZERO)
                + (other.coeffs[i] if i < len(other.coeffs) else ZERO)
                for i in range(m)
            )
        )

    def __neg__(self) -> QPolynomial:
        return QPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: QPolynomial | int | Fraction) -> QPolynomial:
        if not isinstance(other, QPolynomial):
            other = qpoly_const(other)
        return self + (-other)

    def __mul__(self, other: QPolynomial | int | Fraction) -> QPolynomial:
        if not isinstance(other, QPolynomial):
            c = _as_fraction(other)
            return QPolynomial(tuple(v * c for v in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPolynomial(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, c: int | Fraction) -> QPolynomial:
        c = _as_fraction(c)
        if c == 0:
            raise ZeroDivisionError("division of polynomial by zero")
        return QPolynomial(tuple(v / c for v in self.coeffs))


Q = QPolynomial((ZERO, ONE))


def qpoly_const(c: int | Fraction) -> QPolynomial:
    return QPolynomial((_as_fraction(c),))


def qpoly_eval(p: QPolynomial, v: int | Fraction) -> Fraction:
    return p.eval(v)


@lru_cache(maxsize=None)
def binomial_poly(k: int) -> QPolynomial:
    """binomial(q, k) as a polynomial of degree k (k >= 0)."""
    if k < 0:
        raise ValueError("need k >= 0")
    p = qpoly_const(1)
    for j in range(k):
        p = p * (Q - j)
    return p / math.factorial(k)


def falling_factorial_poly(k: int) -> QPolynomial:
    """q(q-1)...(q-k+1), the falling factorial of length k."""
    if k < 0:
        raise ValueError("need k >= 0")
    p = qpoly_const(1)
    for j in range(k):
        p = p * (Q - j)
    return p


def shifted_binomial_poly(shift: int | Fraction, k: int) -> QPolynomial:
    """binomial(q - shift, k) as a polynomial in q."""
    if k < 0:
        raise ValueError("need k >= 0")
    p = qpoly_const(1)
    for j in range(k):
        p = p * (Q - (_as_fraction(shift) + j))
    return p / math.factorial(k)


def qpoly_interpolate(
    points: Iterable[tuple[int | Fraction, int | Fraction]],
) -> QPolynomial:
    """Exact Lagrange interpolation through the given (x, y) points."""
    pts = [(_as_fraction(x), _as_fraction(y)) for x, y in points]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation points must have distinct abscissae")
    total = QPolynomial()
    for i, (xi, yi) in enumerate(pts):
        if yi == 0:
            continue
        basis = qpoly_const(yi)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            basis = basis * (Q - xj) / (xi - xj)
        total = total + basis
    return total


def qpoly_to_json(p: QPolynomial) -> dict:
    return {"coeffs": [fraction_to_str(c) for c in p.coeffs]}


def qpoly_from_json(obj: Mapping) -> QPolynomial:
    try:
        raw = obj["coeffs"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed polynomial object: {exc}") from exc
    return QPolynomial(tuple(fraction_from_str(c) for c in raw))


def qpoly_pretty(p: QPolynomial) -> str:
    """Human-readable form, descending powers: 'q^3 - 3/2*q + 1'."""
    if not p.coeffs:
        return "0"
    parts: list[tuple[str, str]] = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "q" if k == 1 else f"q^{k}"
            body = var if mag == 1 else f"{mag}*{var}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = (first_sign if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
