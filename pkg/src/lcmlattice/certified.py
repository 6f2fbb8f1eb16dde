"""Outward-rounded enclosures of sums ``sum(c * b**(-alpha))``.

Evaluation runs in a private :mod:`mpmath` interval context per call (no
shared global precision).  Bounds are returned as exact Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from mpmath.ctx_iv import MPIntervalContext

AlphaLike = Union[int, float, str, Fraction, "CertifiedReal", tuple]


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    man = int(man)
    if man == 0:
        if exp:
            raise ArithmeticError("interval endpoint is not finite")
        return Fraction(0)
    if sign:
        man = -man
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)


def _enclosure(x, precision: int) -> "CertifiedReal":
    lo, hi = x._mpi_
    return CertifiedReal(_raw_to_fraction(lo), _raw_to_fraction(hi), precision)


@dataclass(frozen=True)
class CertifiedReal:
    """Closed interval ``[lo, hi]`` known to contain a real quantity."""

    lo: Fraction
    hi: Fraction
    precision: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value) -> "CertifiedReal":
        v = Fraction(value)
        return cls(v, v, 0)

    @property
    def sign(self) -> int:
        """+1 or -1 when certified, 0 when the interval touches zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    @property
    def certified(self) -> bool:
        return self.sign != 0

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"CertifiedReal([{float(self.lo)!r}, {float(self.hi)!r}], prec={self.precision})"


def as_alpha_interval(alpha: AlphaLike) -> tuple[Fraction, Fraction]:
    """Exact rational bounds for an exponent given as a number or interval."""
    if isinstance(alpha, CertifiedReal):
        return alpha.lo, alpha.hi
    if isinstance(alpha, tuple):
        lo, hi = (Fraction(a) for a in alpha)
        return lo, hi
    a = Fraction(alpha)
    return a, a


def _context(precision: int) -> MPIntervalContext:
    ctx = MPIntervalContext()
    ctx.prec = precision
    return ctx


def _iv_fraction(ctx, q: Fraction):
    return ctx.mpf(q.numerator) / ctx.mpf(q.denominator)


def power_sum(terms: Iterable[tuple[int, int]], alpha: AlphaLike, precision: int = 256) -> CertifiedReal:
    """Enclose ``sum(coeff * base**(-alpha) for coeff, base in terms)``.

    ``alpha`` may be a point or an interval; with an interval the result
    encloses the sum over every exponent in it.
    """
    ctx = _context(precision)
    lo, hi = as_alpha_interval(alpha)
    a_lo, a_hi = _iv_fraction(ctx, lo), _iv_fraction(ctx, hi)
    a = ctx.mpf([a_lo.a, a_hi.b])
    total = ctx.mpf(0)
    for coeff, base in terms:
        if coeff == 0:
            continue
        if base == 1:
            total += coeff
        else:
            total += coeff * ctx.exp(-a * ctx.log(base))
    return _enclosure(total, precision)


def log_sum(terms: Iterable[tuple[int, int, int]], precision: int = 256) -> CertifiedReal:
    """Enclose ``sum(coeff * log(num / den))``."""
    ctx = _context(precision)
    total = ctx.mpf(0)
    for coeff, num, den in terms:
        if coeff == 0 or num == den:
            continue
        total += coeff * (ctx.log(num) - ctx.log(den))
    return _enclosure(total, precision)
