"""Exact arithmetic for bids, thresholds and payments.

Every rule in the engine is comparison-based, so no floating point is ever
needed.  Unit-demand auctions stay inside ``fractions.Fraction``.  The ranked
single-minded rules order agents by v/sqrt(|bundle|), which drags square roots
of small integers into critical bids and payments; ``RootSum`` closes the
rationals under those roots (finite sums of c*sqrt(m) with m squarefree) and
decides comparisons exactly.

Sign decision: a nonempty sum of rational multiples of sqrt(m) over distinct
squarefree m is never zero (linear independence over Q), so bracketing each
sqrt(m) between isqrt-derived rational bounds at increasing precision always
terminates with a strict sign.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Rational = Union[int, Fraction]
Value = Union[int, Fraction, "RootSum"]


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, m) with n = s*s*m and m squarefree.  n must be positive."""
    s, m, d = 1, 1, 2
    while d * d <= n:
        exp = 0
        while n % d == 0:
            n //= d
            exp += 1
        if exp:
            s *= d ** (exp // 2)
            if exp % 2:
                m *= d
        d += 1 if d == 2 else 2
    return s, m * n


class RootSum:
    """Exact value of the form sum_i c_i * sqrt(m_i), c_i rational, m_i squarefree."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, Fraction]):
        self._terms = {m: c for m, c in terms.items() if c != 0}

    @classmethod
    def of(cls, q: Rational) -> "RootSum":
        q = Fraction(q)
        return cls({1: q})

    @classmethod
    def sqrt(cls, q: Rational) -> "RootSum":
        """Exact square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of negative value")
        if q == 0:
            return cls({})
        # sqrt(p/q) = sqrt(p*q)/q
        s, m = _squarefree_split(q.numerator * q.denominator)
        return cls({m: Fraction(s, q.denominator)})

    @property
    def is_rational(self) -> bool:
        return all(m == 1 for m in self._terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    def _sign(self) -> int:
        terms = self._terms
        if not terms:
            return 0
        signs = {1 if c > 0 else -1 for c in terms.values()}
        if len(signs) == 1:
            return signs.pop()
        # Mixed signs: nonzero by linear independence; bracket until decided.
        prec = 16
        while True:
            lo = hi = Fraction(0)
            scale = 1 << prec
            for m, c in terms.items():
                r_lo = isqrt(m * scale * scale)
                b_lo, b_hi = Fraction(r_lo, scale), Fraction(r_lo + 1, scale)
                if c > 0:
                    lo += c * b_lo
                    hi += c * b_hi
                else:
                    lo += c * b_hi
                    hi += c * b_lo
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "RootSum | None":
        if isinstance(other, RootSum):
            return other
        if isinstance(other, (int, Fraction)):
            return RootSum({1: Fraction(other)})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in o._terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return RootSum(terms)

    __radd__ = __add__

    def __neg__(self):
        return RootSum({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                s, m = _squarefree_split(m1 * m2)
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2 * s
        return RootSum(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, other)
        return NotImplemented

    # -- comparisons --------------------------------------------------------

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare RootSum with {type(other)!r}")
        return (self - o)._sign()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        if self.is_rational:
            return hash(self.as_fraction())
        return hash(tuple(sorted(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def __float__(self):
        return sum(float(c) * m ** 0.5 for m, c in self._terms.items())

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in sorted(self._terms.items()):
            if m == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"sqrt({m})")
            else:
                parts.append(f"{c}*sqrt({m})")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"RootSum({self})"


def value_str(v: Value) -> str:
    """Canonical string form used by serialization and traces."""
    if isinstance(v, RootSum):
        if v.is_rational:
            return str(v.as_fraction())
        return str(v)
    return str(Fraction(v))


def simplify(v: Value) -> Value:
    """Collapse a rational-valued RootSum back to Fraction."""
    if isinstance(v, RootSum) and v.is_rational:
        return v.as_fraction()
    return v


def parse_value(text: str) -> Fraction:
    """Parse a decimal or fraction string to an exact rational.

    Accepts "7", "3.14", "7/2".  No floating intermediate.
    """
    return Fraction(text.strip())
