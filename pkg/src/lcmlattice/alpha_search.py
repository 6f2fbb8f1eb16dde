"""Locating real exponents at which a power LCM matrix becomes singular.

``h(alpha) = Psi(x_i)`` for the power-GCD kernel ``1/N^alpha`` is evaluated
with certified interval arithmetic.  A root is bracketed by a grid scan and
narrowed by bisection on the certified sign, never on a float comparison.

For a meet semilattice that is not a wedge tree, ``construct_singular_instance``
builds a concrete GCD-closed set and an exponent interval on which
``Psi(x_i)`` changes sign: realize the structure with squarefree integers,
inflate one element by a power ``p_i**r`` until ``x_k**alpha * h(alpha)``
starts out decreasing at 0 (it tends to ``mu(x_k, x_i) > 0`` at infinity),
then bracket and bisect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .certified import CertifiedReal, log_sum, power_sum
from .errors import (
    IsWedgeTree,
    NoPositiveMobius,
    NotSemilattice,
    PrecisionExhausted,
    RMaxExceeded,
)
from .integer_sets import (
    GcdClosedSet,
    Realization,
    as_gcd_closed,
    divisibility_poset,
    inflate,
    realize_squarefree,
)
from .matrices import is_singular_power_lcm, psi_terms
from .poset import Poset

DEFAULT_RANGE = (Fraction(1, 1024), Fraction(64))
MAX_PRECISION = 4096


def h_eval(S, i: int, alpha, precision: int = 256) -> CertifiedReal:
    """Enclosure of ``sum(mu(x_j, x_i) / x_j**alpha)`` (``i`` is 0-based).

    ``alpha`` may be a number or an ``(lo, hi)`` interval.
    """
    return power_sum(psi_terms(as_gcd_closed(S), i), alpha, precision)


def _sign(S, i: int, alpha, precision: int, max_precision: int) -> tuple[int, int]:
    prec = precision
    while True:
        v = h_eval(S, i, alpha, prec)
        if v.certified or prec >= max_precision:
            return v.sign, prec
        prec = min(2 * prec, max_precision)


# ----------------------------------------------------------------------
# bracketing and bisection


@dataclass(frozen=True)
class AlphaBracket:
    """Exponents with certified opposite signs of ``h`` for the element ``x_i``.

    ``k`` is the element with ``mu(x_k, x_i) > 0`` driving the construction,
    when known.
    """

    a_lo: Fraction
    a_hi: Fraction
    i: int
    k: int | None = None
    signs: tuple[int, int] = (0, 0)

    @property
    def width(self) -> Fraction:
        return self.a_hi - self.a_lo


def _grid(lo: Fraction, hi: Fraction, count: int, spacing: str) -> list[Fraction]:
    if spacing == "linear":
        return [lo + (hi - lo) * t / (count - 1) for t in range(count)]
    if spacing != "log":
        raise ValueError(f"unknown spacing {spacing!r}")
    llo, lhi = math.log(lo), math.log(hi)
    inner = [
        Fraction(math.exp(llo + (lhi - llo) * t / (count - 1))).limit_denominator(1 << 40)
        for t in range(1, count - 1)
    ]
    return [lo, *sorted(set(inner)), hi]


def find_sign_change(
    S,
    i: int,
    alpha_range=DEFAULT_RANGE,
    grid: int = 64,
    precision: int = 256,
    max_precision: int = MAX_PRECISION,
    spacing: str = "log",
    k: int | None = None,
) -> AlphaBracket | None:
    """First pair of neighbouring grid points where ``h`` has certified opposite signs.

    Grid points whose sign stays undecided at ``max_precision`` are skipped;
    if no bracket is found and some point was undecided, PrecisionExhausted
    is raised instead of returning None.
    """
    S = as_gcd_closed(S)
    lo, hi = (Fraction(a) for a in alpha_range)
    if not 0 < lo < hi:
        raise ValueError("alpha range must satisfy 0 < lo < hi")
    if grid < 2:
        raise ValueError("grid needs at least two points")
    undecided = False
    prev: tuple[Fraction, int] | None = None
    for a in _grid(lo, hi, grid, spacing):
        s, _ = _sign(S, i, a, precision, max_precision)
        if s == 0:
            undecided = True
            continue
        if prev is not None and prev[1] != s:
            return AlphaBracket(prev[0], a, i, k, (prev[1], s))
        prev = (a, s)
    if undecided:
        raise PrecisionExhausted("some grid signs could not be certified")
    return None


def bisect_root(
    S,
    i: int,
    bracket: AlphaBracket,
    tol=Fraction(1, 10**9),
    precision: int = 256,
    max_precision: int = MAX_PRECISION,
) -> tuple[CertifiedReal, int]:
    """Shrink ``bracket`` to width at most ``tol``.

    Returns the root enclosure and the number of bisection steps.  The
    endpoints of the returned interval keep certified opposite signs.
    """
    S = as_gcd_closed(S)
    tol = Fraction(tol)
    lo, hi = Fraction(bracket.a_lo), Fraction(bracket.a_hi)
    s_lo, s_hi = bracket.signs
    if s_lo == 0 or s_hi == 0:
        s_lo, _ = _sign(S, i, lo, precision, max_precision)
        s_hi, _ = _sign(S, i, hi, precision, max_precision)
    if s_lo * s_hi >= 0:
        raise ValueError("bracket endpoints do not have certified opposite signs")
    steps = 0
    used = precision
    while hi - lo > tol:
        for t in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)):
            mid = lo + (hi - lo) * t
            s, prec = _sign(S, i, mid, precision, max_precision)
            if s:
                used = max(used, prec)
                break
        else:
            raise PrecisionExhausted(f"sign undecided near alpha={float(lo)} at {max_precision} bits")
        if s == s_lo:
            lo = mid
        else:
            hi = mid
        steps += 1
    return CertifiedReal(lo, hi, used), steps


# ----------------------------------------------------------------------
# construction


def _inflated(real: Realization, i: int, r: int) -> tuple[GcdClosedSet, int]:
    """``S(r)`` and the position of the inflated ``x_i`` in it."""
    if r == 0:
        return real.base, i
    S = inflate(real, i, r)
    return S, S.index(real.base[i] * real.primes[i] ** r)


def h_derivative_at_zero(real: Realization, i: int, k: int, r: int, precision: int = 256) -> CertifiedReal:
    """Derivative at 0 of ``x_k**alpha * h(alpha)`` on ``S(r)``.

    Equals ``-sum(mu(x_j, x_i) * log(x_j / x_k))`` over ``x_j | x_i``; when
    ``x_k`` is the meet of the elements covered by ``x_i`` every nonzero term
    has ``x_k | x_j``.  Only the top term ``-log(x_i / x_k) = -(r log p_i + log(x_i' / x_k))``
    depends on ``r``.  ``i`` and ``k`` index ``real.base``.
    """
    base = real.base
    mu = divisibility_poset(base).mobius()
    if k == i or mu[k, i] <= 0:
        raise NoPositiveMobius(f"mu(x_{k}, x_{i}) is not positive")
    S, i_r = _inflated(real, i, r)
    xk = base[k]
    terms = [(-c, xj, xk) for c, xj in psi_terms(S, i_r) if xj != xk]
    return log_sum(terms, precision)


def _candidates(L: Poset) -> list[tuple[int, int]]:
    """``(x, xi(x))`` pairs with ``mu(xi(x), x) > 0``.

    ``xi(x)`` is the least element where ``mu(., x)`` can be nonzero, so
    ``x_k**alpha * h(alpha)`` tends to ``mu(xi(x), x)`` as alpha grows.
    """
    mu = L.mobius()
    out = []
    for x in range(L.n):
        if len(L.covers_of(x)) >= 2:
            y = L.xi(x)
            if mu[y, x] > 0:
                out.append((x, y))
    return out


@dataclass(frozen=True)
class SearchReport:
    """A GCD-closed set and an exponent interval where ``Psi(x_i)`` vanishes.

    Indices are 0-based positions in ``set``.  ``verified`` records that
    the singularity check over the whole ``alpha0`` interval left ``x_i``
    undecided (so a zero is possible) while its endpoints have certified
    opposite signs.
    """

    set: GcdClosedSet
    i: int
    k: int
    alpha0: CertifiedReal
    r_used: int
    iterations: int
    bracket: AlphaBracket
    verified: bool
    primes: tuple[int | None, ...] = field(default=())


def construct_singular_instance(
    L: Poset,
    tol=Fraction(1, 10**9),
    r_max: int = 64,
    primes=None,
    alpha_range=DEFAULT_RANGE,
    grid: int = 64,
    precision: int = 256,
    max_precision: int = MAX_PRECISION,
) -> SearchReport:
    """Build ``S`` isomorphic to ``L`` and ``alpha0 > 0`` with ``[S]_{N^alpha0}`` singular.

    Raises IsWedgeTree when ``L`` is a wedge tree (no such pair exists) and
    RMaxExceeded when no inflation power up to ``r_max`` yields a bracket.
    """
    if not L.is_meet_semilattice():
        raise NotSemilattice("input is not a meet semilattice")
    if L.is_wedge_tree():
        raise IsWedgeTree("every element covers at most one element")
    real = realize_squarefree(L, primes)
    tol = Fraction(tol) if not isinstance(tol, float) else Fraction(tol).limit_denominator(10**18)
    pairs = [(real.position(x), real.position(z)) for x, z in _candidates(L)]
    r = 1
    while r <= r_max:
        for i, k in pairs:
            if h_derivative_at_zero(real, i, k, r, precision).sign >= 0:
                continue
            S, i_r = _inflated(real, i, r)
            k_r = S.index(real.base[k])
            try:
                bracket = find_sign_change(S, i_r, alpha_range, grid, precision, max_precision, k=k_r)
            except PrecisionExhausted:
                continue
            if bracket is None:
                continue
            alpha0, steps = bisect_root(S, i_r, bracket, tol, precision, max_precision)
            check = is_singular_power_lcm(S, (alpha0.lo, alpha0.hi), precision, precision)
            verified = check.singular is not False and i_r in check.witnesses
            return SearchReport(
                set=S,
                i=i_r,
                k=k_r,
                alpha0=alpha0,
                r_used=r,
                iterations=steps,
                bracket=bracket,
                verified=verified,
                primes=real.primes,
            )
        r *= 2
    raise RMaxExceeded(f"no sign change found for inflation powers up to {r_max}")
