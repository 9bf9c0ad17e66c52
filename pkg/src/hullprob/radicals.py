"""Exact sums of square roots with certified sign decisions.

Perimeters are sums of Euclidean lengths, i.e. values of the form

    rational + sum_i  c_i * sqrt(s_i)      (c_i rational, s_i natural)

Equality cannot be decided by floating point, so this module keeps such
values symbolically and decides signs by escalating-precision interval
arithmetic built on integer square roots (no floating point, no rounding
assumptions).  Radicands are canonicalized by pulling out square factors
(small-prime trial division plus a perfect-square check), after which terms
with equal radicands merge exactly; for geometric inputs in general position
this makes value equality structural.  A sign query that is *not* settled
structurally terminates because the value is then nonzero, with a generous
precision cap guarding against the remaining (never observed) case.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import AmbiguousComparison

_PRIME_LIMIT = 1000


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(flags[p * p :: p])
    return [i for i in range(limit + 1) if flags[i]]

_SMALL_PRIMES = _sieve(_PRIME_LIMIT)


def square_decompose(n: int) -> tuple[int, int]:
    """n = k*k * s with s free of square factors below the prime limit and
    not itself a perfect square.  Exact for every n; canonical for the sizes
    geometry produces."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 1
    k = 1
    for p in _SMALL_PRIMES:
        pp = p * p
        if pp > n:
            break
        while n % pp == 0:
            n //= pp
            k *= p
    r = isqrt(n)
    if r * r == n:
        return k * r, 1
    return k, n


Rationalish = Union[int, Fraction]


class SqrtSum:
    """Immutable exact value ``rational + sum c_i * sqrt(s_i)``.

    Supports addition, subtraction, scaling by rationals, certified sign /
    comparisons / floor, and float rendering.  Mathematical comparison
    operators go through the certified sign; structural identity (used for
    exact merging in distribution tables) is exposed via :meth:`key`.
    """

    __slots__ = ("_rat", "_terms")

    def __init__(self, rat: Fraction, terms: tuple[tuple[int, Fraction], ...]):
        self._rat = rat
        self._terms = terms

    @classmethod
    def from_rational(cls, q: Rationalish) -> "SqrtSum":
        return cls(Fraction(q), ())

    @classmethod
    def sqrt(cls, q: Rationalish) -> "SqrtSum":
        """sqrt(q) for rational q >= 0, canonicalized."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("sqrt of a negative rational")
        if q == 0:
            return cls.from_rational(0)
        # sqrt(a/b) = sqrt(a*b) / b
        k, s = square_decompose(q.numerator * q.denominator)
        coeff = Fraction(k, q.denominator)
        if s == 1:
            return cls(coeff, ())
        return cls(Fraction(0), ((s, coeff),))

    @classmethod
    def _build(cls, rat: Fraction, term_map: dict[int, Fraction]) -> "SqrtSum":
        terms = tuple(sorted((s, c) for s, c in term_map.items() if c != 0))
        return cls(rat, terms)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other) -> "SqrtSum":
        other = _coerce(other)
        merged = dict(self._terms)
        for s, c in other._terms:
            merged[s] = merged.get(s, Fraction(0)) + c
        return SqrtSum._build(self._rat + other._rat, merged)

    __radd__ = __add__

    def __sub__(self, other) -> "SqrtSum":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "SqrtSum":
        return _coerce(other) + (-self)

    def __neg__(self) -> "SqrtSum":
        return SqrtSum(-self._rat, tuple((s, -c) for s, c in self._terms))

    def __mul__(self, scalar: Rationalish) -> "SqrtSum":
        scalar = Fraction(scalar)
        if scalar == 0:
            return SqrtSum.from_rational(0)
        return SqrtSum(
            self._rat * scalar, tuple((s, c * scalar) for s, c in self._terms)
        )

    __rmul__ = __mul__

    # -- certified decisions ----------------------------------------------

    def bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        """Exact enclosure [lo, hi] with each sqrt term bracketed to 2**-bits."""
        lo = hi = self._rat
        unit = 1 << bits
        for s, c in self._terms:
            f = isqrt(s << (2 * bits))  # f/2**bits <= sqrt(s) < (f+1)/2**bits
            slo = Fraction(f, unit)
            shi = Fraction(f + 1, unit)
            if c >= 0:
                lo += c * slo
                hi += c * shi
            else:
                lo += c * shi
                hi += c * slo
        return lo, hi

    def sign(self) -> int:
        """Certified sign in {-1, 0, +1}."""
        if not self._terms:
            q = self._rat
            return (q > 0) - (q < 0)
        if self._rat == 0 and len(self._terms) == 1:
            c = self._terms[0][1]
            return (c > 0) - (c < 0)
        bits = 64
        while bits <= 1 << 14:
            lo, hi = self.bounds(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2
        raise AmbiguousComparison(f"sign of {self!r} not separated at the precision cap")

    def is_rational(self) -> bool:
        return not self._terms

    def rational_value(self) -> Fraction:
        if self._terms:
            raise ValueError("value has irrational part")
        return self._rat

    def floor(self) -> int:
        """Certified floor."""
        if not self._terms:
            return self._rat.numerator // self._rat.denominator
        bits = 64
        while bits <= 1 << 14:
            lo, hi = self.bounds(bits)
            flo = lo.numerator // lo.denominator
            fhi = hi.numerator // hi.denominator
            if flo == fhi:
                return flo
            bits *= 2
        raise AmbiguousComparison(f"floor of {self!r} not separated at the precision cap")

    # -- comparisons and rendering ----------------------------------------

    def key(self):
        """Structural identity key (canonical form)."""
        return (self._rat, self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (SqrtSum, int, Fraction)):
            return NotImplemented
        return (self - other).sign() == 0

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None  # mathematical equality is not hash-compatible

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        lo, hi = self.bounds(80)
        return float((lo + hi) / 2)

    def __repr__(self) -> str:
        parts = []
        if self._rat != 0 or not self._terms:
            parts.append(str(self._rat))
        for s, c in self._terms:
            parts.append(f"{c}*sqrt({s})")
        return " + ".join(parts)


def _coerce(value) -> SqrtSum:
    if isinstance(value, SqrtSum):
        return value
    if isinstance(value, (int, Fraction)):
        return SqrtSum.from_rational(value)
    raise TypeError(f"cannot mix SqrtSum with {type(value).__name__}")


def compare(a, b) -> int:
    """Certified three-way comparison of SqrtSum/rational operands."""
    return (_coerce(a) - _coerce(b)).sign()
