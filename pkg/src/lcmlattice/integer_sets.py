"""GCD-closed sets of positive integers and squarefree realizations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from sympy import isprime, nextprime

from .canonical import are_isomorphic
from .errors import BadIndex, BadPrimes, NonPositive, NoTopDivisor, NotGcdClosed, NotSemilattice
from .poset import Poset

# the 9-element odd set with a singular LCM matrix
ODD_COUNTEREXAMPLE = (1, 3, 5, 7, 195, 291, 1407, 4025, 1020180525)


def _positive(xs: Iterable[int]) -> list[int]:
    out = []
    for x in xs:
        x = int(x)
        if x <= 0:
            raise NonPositive(f"{x} is not a positive integer")
        out.append(x)
    return out


def is_gcd_closed(xs: Iterable[int]) -> bool:
    s = set(xs)
    return all(math.gcd(a, b) in s for a, b in combinations(s, 2))


def is_lcm_closed(xs: Iterable[int]) -> bool:
    s = set(xs)
    return all(math.lcm(a, b) in s for a, b in combinations(s, 2))


def _divisors(x: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(x) + 1) if x % d == 0]
    return sorted(set(small + [x // d for d in small]))


def is_factor_closed(xs: Iterable[int]) -> bool:
    s = set(xs)
    return all(d in s for x in s for d in _divisors(x))


@dataclass(frozen=True)
class GcdClosedSet:
    """Strictly increasing tuple of positive integers closed under gcd."""

    elems: tuple[int, ...]

    def __init__(self, elems: Iterable[int]):
        xs = sorted(set(_positive(elems)))
        if not xs:
            raise NotGcdClosed("empty set")
        if not is_gcd_closed(xs):
            missing = next(
                math.gcd(a, b) for a, b in combinations(xs, 2) if math.gcd(a, b) not in set(xs)
            )
            raise NotGcdClosed(f"gcd {missing} is missing from the set")
        object.__setattr__(self, "elems", tuple(xs))

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __getitem__(self, i):
        return self.elems[i]

    def index(self, x: int) -> int:
        return self.elems.index(x)

    def poset(self) -> Poset:
        return divisibility_poset(self)

    def __repr__(self):
        return f"GcdClosedSet({list(self.elems)})"


def as_gcd_closed(s) -> GcdClosedSet:
    return s if isinstance(s, GcdClosedSet) else GcdClosedSet(s)


def gcd_closure(xs: Iterable[int]) -> GcdClosedSet:
    """Smallest GCD-closed superset of ``xs``."""
    s = set(_positive(xs))
    if not s:
        raise NonPositive("empty input")
    frontier = set(s)
    while frontier:
        new = {math.gcd(a, b) for a in frontier for b in s} - s
        s |= new
        frontier = new
    return GcdClosedSet(s)


@lru_cache(maxsize=4096)
def _divisibility_poset(elems: tuple[int, ...]) -> Poset:
    return Poset.from_order(
        len(elems), lambda i, j: i != j and elems[j] % elems[i] == 0
    )


def divisibility_poset(s) -> Poset:
    """``(S, |)`` on indices of the sorted set."""
    elems = tuple(s.elems) if isinstance(s, GcdClosedSet) else tuple(sorted(_positive(s)))
    return _divisibility_poset(elems)


# ----------------------------------------------------------------------
# realizations


def odd_primes(count: int) -> list[int]:
    out, p = [], 2
    for _ in range(count):
        p = nextprime(p)
        out.append(p)
    return out


@dataclass(frozen=True)
class Realization:
    """A squarefree integer set whose divisibility order reproduces a poset.

    ``primes[j]`` is the prime attached to ``base[j]`` (None for the element
    1) and ``iso[j]`` is the poset element that ``base[j]`` represents.
    """

    source: Poset
    base: GcdClosedSet
    primes: tuple[int | None, ...]
    iso: tuple[int, ...]

    def position(self, element: int) -> int:
        """Index in ``base`` of the given poset element."""
        return self.iso.index(element)


def realize_squarefree(L: Poset, primes: Sequence[int] | None = None) -> Realization:
    """Attach a distinct prime ``p_i`` to every non-bottom element ``z_i`` and
    map ``z_i`` to the product of the primes attached to elements below it."""
    if not L.is_meet_semilattice():
        raise NotSemilattice("only meet semilattices have GCD-closed realizations")
    n = L.n
    if primes is None:
        primes = odd_primes(n - 1)
    primes = [int(p) for p in primes]
    if len(set(primes)) != len(primes):
        raise BadPrimes("primes must be distinct")
    if len(primes) < n - 1:
        raise BadPrimes(f"need {n - 1} primes, got {len(primes)}")
    bad = [p for p in primes[: n - 1] if not isprime(p)]
    if bad:
        raise BadPrimes(f"not prime: {bad}")
    # index 0 is the minimum of a meet semilattice in linear-extension order
    attached = [None] + primes[: n - 1]
    values = []
    for i in range(n):
        x = 1
        for j in L.below(i):
            if attached[j] is not None:
                x *= attached[j]
        values.append(x)
    base = GcdClosedSet(values)
    iso = tuple(values.index(x) for x in base.elems)
    return Realization(
        source=L,
        base=base,
        primes=tuple(attached[e] for e in iso),
        iso=iso,
    )


def inflate_many(r: Realization, powers: Sequence[tuple[int, int]]) -> GcdClosedSet:
    """Apply several inflations; ``(i, power)`` multiplies every multiple of
    ``base[i]`` by ``p_i ** power``.  Indices refer to ``base``."""
    values = list(r.base)
    for i, power in powers:
        if not 0 <= i < len(r.base):
            raise BadIndex(f"index {i} out of range")
        p = r.primes[i]
        if p is None:
            raise BadIndex("the element 1 carries no prime and cannot be inflated")
        if power < 1:
            raise ValueError(f"power must be positive, got {power}")
        xi = r.base[i]
        scale = p**power
        values = [v * scale if b % xi == 0 else v for v, b in zip(values, r.base)]
    return GcdClosedSet(values)


def inflate(r: Realization, i: int, power: int) -> GcdClosedSet:
    """Multiply every multiple of ``base[i]`` by ``p_i ** power``."""
    return inflate_many(r, [(i, power)])


def dual_lcm_closed(s) -> list[int]:
    """``sorted(x_n / x_i)``; LCM closed whenever ``s`` is GCD closed."""
    xs = sorted(_positive(s))
    top = xs[-1]
    bad = [x for x in xs if top % x]
    if bad:
        raise NoTopDivisor(f"{bad} do not divide the largest element {top}")
    return sorted(top // x for x in xs)


def q_modified_counterexample(q: int) -> GcdClosedSet:
    """The odd counterexample with its two largest elements multiplied by ``q``."""
    *rest, a, b = ODD_COUNTEREXAMPLE
    return GcdClosedSet([*rest, a * q, b * q])


def isomorphic_to(s, L: Poset) -> bool:
    return are_isomorphic(divisibility_poset(s), L)
