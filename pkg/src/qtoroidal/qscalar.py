"""Exact scalars: Laurent polynomials and rational functions in v = q^(1/2).

Every coefficient that shows up in the toroidal computations is an element of
Q(v).  ``LaurentQ`` is the ring Z[v, 1/v]; ``QScalar`` is its fraction field,
kept in a canonical reduced form so that equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
import re

from flint import fmpq, fmpq_poly, fmpz_poly

__all__ = [
    "LaurentQ",
    "QScalar",
    "ZERO",
    "ONE",
    "V",
    "Q",
    "q_pow",
    "v_pow",
    "quantum_integer",
    "g_series",
    "series_mul",
    "series_inv",
    "parse_monomial",
]


def _content(coeffs) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    return g


class LaurentQ:
    """Integer Laurent polynomial in v.  Immutable; zero is the empty map."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            self._c = {}
        else:
            self._c = {int(k): int(c) for k, c in dict(coeffs).items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, d):
        obj = cls.__new__(cls)
        obj._c = d
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentQ":
        return cls._raw({exp: coeff} if coeff else {})

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def low(self) -> int:
        return min(self._c)

    def high(self) -> int:
        return max(self._c)

    def content(self) -> int:
        return _content(self._c.values())

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentQ.monomial(other, 0)
        if not isinstance(other, LaurentQ):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __neg__(self):
        return LaurentQ._raw({k: -c for k, c in self._c.items()})

    def __add__(self, other):
        d = dict(self._c)
        for k, c in other._c.items():
            s = d.get(k, 0) + c
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return LaurentQ._raw(d)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentQ()
            return LaurentQ._raw({k: c * other for k, c in self._c.items()})
        a, b = self._c, other._c
        if len(a) == 1:
            (ka, ca), = a.items()
            return LaurentQ._raw({ka + k: ca * c for k, c in b.items()})
        if len(b) == 1:
            (kb, cb), = b.items()
            return LaurentQ._raw({kb + k: cb * c for k, c in a.items()})
        d: dict = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                d[k] = d.get(k, 0) + ca * cb
        return LaurentQ._raw({k: c for k, c in d.items() if c})

    __rmul__ = __mul__

    def shift(self, s: int) -> "LaurentQ":
        return LaurentQ._raw({k + s: c for k, c in self._c.items()})

    def bar(self) -> "LaurentQ":
        """Substitute v -> 1/v."""
        return LaurentQ._raw({-k: c for k, c in self._c.items()})

    def int_div(self, d: int) -> "LaurentQ":
        return LaurentQ._raw({k: c // d for k, c in self._c.items()})

    def at_one(self) -> int:
        return sum(self._c.values())

    def dense(self) -> list:
        """Coefficient list from the lowest exponent upwards."""
        lo, hi = self.low(), self.high()
        out = [0] * (hi - lo + 1)
        for k, c in self._c.items():
            out[k - lo] = c
        return out

    def __repr__(self):
        return f"LaurentQ({self._c!r})"


class QScalar:
    """Element of Q(v), stored as v^s * n / d.

    n is a rational polynomial with n(0) != 0; d is None (meaning 1) or a
    primitive integer polynomial of positive degree with d(0) > 0 and
    gcd(n, d) = 1.  The triple is unique, so equality is structural.
    Polynomial arithmetic runs in FLINT.
    """

    __slots__ = ("_s", "_n", "_d", "_hash")

    def __init__(self, num=0, den=1):
        if isinstance(num, QScalar) and den == 1:
            self._s, self._n, self._d, self._hash = num._s, num._n, num._d, None
            return
        if isinstance(num, Fraction) and not isinstance(den, int):
            raise TypeError("Fraction numerator needs an integer denominator")
        val = QScalar.coerce(num) / QScalar.coerce(den)
        self._s, self._n, self._d, self._hash = val._s, val._n, val._d, None

    @classmethod
    def _raw(cls, s: int, n, d=None) -> "QScalar":
        obj = cls.__new__(cls)
        obj._s, obj._n, obj._d, obj._hash = s, n, d, None
        return obj

    @classmethod
    def coerce(cls, x) -> "QScalar":
        if isinstance(x, QScalar):
            return x
        if isinstance(x, int):
            return cls._raw(0, fmpq_poly([x])) if x else ZERO
        if isinstance(x, Fraction):
            return cls._raw(0, fmpq_poly([fmpq(x.numerator, x.denominator)])) if x else ZERO
        if isinstance(x, LaurentQ):
            if x.is_zero():
                return ZERO
            return cls._raw(x.low(), fmpq_poly(x.dense()))
        raise TypeError(f"cannot coerce {type(x).__name__} to QScalar")

    @classmethod
    def from_parts(cls, s: int, n, d=None) -> "QScalar":
        """v^s * n / d for FLINT rational polynomials n and d."""
        return _make(s, n, _ONE_P if d is None else fmpq_poly(d))

    def parts(self) -> tuple:
        """(s, n, d) with self = v^s n / d; d is None or an integer polynomial."""
        return self._s, self._n, self._d

    # -- views ------------------------------------------------------------------

    @property
    def num(self) -> LaurentQ:
        """Integer numerator as a Laurent polynomial (denominator has low exponent 0)."""
        return _laurent_from(self._n.numer(), self._s)

    @property
    def den(self) -> LaurentQ:
        d = self._n.denom()
        if self._d is None:
            return LaurentQ.monomial(int(d), 0)
        return _laurent_from(self._d * int(d), 0)

    # -- predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def __bool__(self):
        return not self._n.is_zero()

    def is_laurent(self) -> bool:
        return self._d is None and self._n.denom() == 1

    def as_monomial(self):
        """Return (sign, k) if self == sign * v^k, else None."""
        n = self._n
        if self._d is None and n.degree() == 0:
            c = n[0]
            if c == 1:
                return 1, self._s
            if c == -1:
                return -1, self._s
        return None

    # -- arithmetic -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QScalar):
            try:
                other = QScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self._s == other._s and self._n == other._n and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._s, str(self._n), None if self._d is None else str(self._d)))
        return self._hash

    def __neg__(self):
        return QScalar._raw(self._s, -self._n, self._d)

    def __add__(self, other):
        if not isinstance(other, QScalar):
            other = QScalar.coerce(other)
        if self._d is None and other._d is None:
            n1, n2 = self._n, other._n
            if n1.is_zero():
                return other
            if n2.is_zero():
                return self
            s1, s2 = self._s, other._s
            if s1 < s2:
                return QScalar._raw(s1, n1 + n2.left_shift(s2 - s1))
            if s2 < s1:
                return QScalar._raw(s2, n2 + n1.left_shift(s1 - s2))
            return _strip(s1, n1 + n2)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        # common shift, then n1/d1 + n2/d2
        s = min(self._s, other._s)
        n1 = self._n.left_shift(self._s - s)
        n2 = other._n.left_shift(other._s - s)
        d1 = fmpq_poly(self._d) if self._d is not None else _ONE_P
        d2 = fmpq_poly(other._d) if other._d is not None else _ONE_P
        if d1 == d2:
            return _make(s, n1 + n2, d1)
        return _make(s, n1 * d2 + n2 * d1, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-QScalar.coerce(other))

    def __rsub__(self, other):
        return QScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 1:
                return self
            if other == 0:
                return ZERO
            return QScalar._raw(self._s, self._n * other, self._d)
        if not isinstance(other, QScalar):
            other = QScalar.coerce(other)
        if self._d is None and other._d is None:
            if self._n.is_zero() or other._n.is_zero():
                return ZERO
            return QScalar._raw(self._s + other._s, self._n * other._n)
        if self.is_zero() or other.is_zero():
            return ZERO
        d1 = fmpq_poly(self._d) if self._d is not None else _ONE_P
        d2 = fmpq_poly(other._d) if other._d is not None else _ONE_P
        return _make(self._s + other._s, self._n * other._n, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if self.is_zero():
            raise ZeroDivisionError("QScalar division by zero")
        d = fmpq_poly(self._d) if self._d is not None else _ONE_P
        return _make(-self._s, d, self._n)

    def __truediv__(self, other):
        other = QScalar.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("QScalar division by zero")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QScalar.coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        mono = self.as_monomial()
        if mono is not None:
            sgn, k = mono
            return QScalar._raw(k * e, fmpq_poly([sgn**e]))
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def bar(self) -> "QScalar":
        """Substitute v -> 1/v."""
        if self.is_zero():
            return ZERO
        n = fmpq_poly(self._n.coeffs()[::-1])
        shift = -self._s - self._n.degree()
        if self._d is None:
            return _strip(shift, n)
        d = fmpq_poly(self._d.coeffs()[::-1])
        return _make(shift + self._d.degree(), n, d)

    def at_q_one(self) -> Fraction:
        """Evaluate at v = 1."""
        n = self._n(1)
        d = 1 if self._d is None else int(self._d(1))
        if d == 0:
            raise ZeroDivisionError("pole at q = 1")
        return Fraction(int(n.p), int(n.q)) / d

    # -- printing ---------------------------------------------------------------

    def __str__(self):
        num, den = self.num, self.den
        n = _fmt_laurent(num)
        if den == _ONE_L:
            return n
        d = _fmt_laurent(den)
        if len(num._c) > 1:
            n = f"({n})"
        if len(den._c) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"QScalar({str(self)!r})"


_ONE_L = LaurentQ.monomial(1, 0)
_ONE_P = fmpq_poly([1])


def _laurent_from(p, shift: int) -> LaurentQ:
    return LaurentQ({shift + i: int(c) for i, c in enumerate(p.coeffs()) if c})


def _strip(s: int, n) -> "QScalar":
    """Move low-order zero coefficients of n into the shift."""
    if n.is_zero():
        return ZERO
    if n[0] != 0:
        return QScalar._raw(s, n)
    k = 1
    while n[k] == 0:
        k += 1
    return QScalar._raw(s + k, n.right_shift(k))


def _make(s: int, n, d) -> "QScalar":
    """Canonical v^s n/d for rational polynomials n, d."""
    if d.is_zero():
        raise ZeroDivisionError("QScalar with zero denominator")
    if n.is_zero():
        return ZERO
    k = 0
    while d[k] == 0:
        k += 1
    if k:
        d = d.right_shift(k)
        s -= k
    if d.degree() > 0:
        g = n.gcd(d)
        if g.degree() > 0:
            n = n // g
            d = d // g
    if d.degree() == 0:
        return _strip(s, n / d[0])
    # primitive integer denominator with positive constant term
    dz = d.numer()
    c = int(dz.content())
    if dz[0] < 0:
        c = -c
    scale = fmpq(int(d.denom()), c)
    return _strip_den(s, n * scale, fmpz_poly([int(x) // c for x in dz.coeffs()]))


def _strip_den(s: int, n, d) -> "QScalar":
    q = _strip(s, n)
    return QScalar._raw(q._s, q._n, d)


def _fmt_exp(k: int) -> str:
    if k % 2 == 0:
        e = k // 2
        return "q" if e == 1 else f"q^{e}"
    return f"q^{k}/2"


def _fmt_laurent(p: LaurentQ) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in sorted(p._c, reverse=True):
        c = p._c[k]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            body = ("" if a == 1 else str(a)) + _fmt_exp(k)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


ZERO = QScalar._raw(0, fmpq_poly())
ONE = QScalar._raw(0, fmpq_poly([1]))
V = QScalar._raw(1, fmpq_poly([1]))
Q = QScalar._raw(2, fmpq_poly([1]))


def v_pow(k: int, coeff: int = 1) -> QScalar:
    return QScalar._raw(k, fmpq_poly([coeff])) if coeff else ZERO


def q_pow(e, coeff: int = 1) -> QScalar:
    """coeff * q^e where e may be a half-integer (Fraction or float like 1.5)."""
    k = Fraction(e) * 2
    if k.denominator != 1:
        raise ValueError(f"q exponent {e} is not a half-integer")
    return v_pow(int(k), coeff)


@lru_cache(maxsize=None)
def quantum_integer(m: int) -> QScalar:
    """[m] = (q^m - q^-m)/(q - q^-1), returned as a Laurent polynomial."""
    if m < 0:
        return -quantum_integer(-m)
    # q^{m-1} + q^{m-3} + ... + q^{1-m}, in v-exponents
    return QScalar.coerce(LaurentQ({2 * (m - 1 - 2 * k): 1 for k in range(m)}))


def series_mul(a: list, b: list, order: int) -> list:
    out = [ZERO] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x.is_zero():
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def series_inv(a: list, order: int) -> list:
    """Reciprocal of a power series with invertible constant term."""
    a = list(a) + [ZERO] * (order + 1 - len(a))
    inv0 = a[0].inverse()
    out = [inv0]
    for n in range(1, order + 1):
        s = ZERO
        for k in range(1, n + 1):
            if not a[k].is_zero():
                s = s + a[k] * out[n - k]
        out.append(-s * inv0)
    return out


def _linear(c0, c1, order):
    return [QScalar.coerce(c0), QScalar.coerce(c1)] + [ZERO] * max(0, order - 1)


def _ratio(num_c, den_c, order):
    """Series of (1 + num_c x)/(1 + den_c x)."""
    return series_mul(_linear(1, num_c, order), series_inv(_linear(1, den_c, order), order), order)


@lru_cache(maxsize=None)
def _g_series_cached(i: int, order: int) -> tuple:
    q2, qm2 = v_pow(4), v_pow(-4)
    s = _ratio(-q2, q2, order)
    if i == 0:
        s = series_mul(s, _ratio(qm2, -qm2, order), order)
    else:
        s = series_mul(s, _ratio(-qm2, qm2, order), order)
        r = _ratio(ONE, -ONE, order)
        s = series_mul(s, series_mul(r, r, order), order)
    return tuple(s[: order + 1])


def g_series(i: int, order: int) -> list:
    """Taylor coefficients g_i0 ... g_iN of G_0 or G_1 at x = 0."""
    if i not in (0, 1):
        raise ValueError("G-series index must be 0 or 1")
    if order < 0:
        raise ValueError("order must be non-negative")
    return list(_g_series_cached(i, order))


_MONO_RE = re.compile(r"^\s*([+-]?)\s*(\d*)\s*(?:\*?\s*q(?:\^\(?([+-]?\d+)(?:/(\d+))?\)?)?)?\s*$")


def parse_monomial(text: str) -> QScalar:
    """Parse literals such as ``q^-2``, ``-q^1/2``, ``3``, ``-2q``."""
    m = _MONO_RE.match(text)
    if not m or (not m.group(2) and "q" not in text):
        raise ValueError(f"not a monomial literal: {text!r}")
    sign = -1 if m.group(1) == "-" else 1
    coeff = int(m.group(2)) if m.group(2) else 1
    if "q" not in text:
        return QScalar(sign * coeff)
    num = int(m.group(3)) if m.group(3) is not None else 1
    den = int(m.group(4)) if m.group(4) is not None else 1
    if den not in (1, 2):
        raise ValueError(f"q exponent must be a half-integer: {text!r}")
    return v_pow(num * (2 // den), sign * coeff)
