"""Seeded random GCD-closed sets with known divisibility structure."""

from __future__ import annotations

import random
from dataclasses import dataclass

from sympy import prime

from .enumeration import enumerate_meet_semilattices
from .integer_sets import GcdClosedSet, Realization, realize_squarefree
from .poset import Poset


@dataclass(frozen=True)
class Sample:
    structure: Poset
    realization: Realization
    set: GcdClosedSet
    inflations: tuple[tuple[int, int], ...]


def random_primes(rng: random.Random, count: int, odd: bool = True, pool: int = 40) -> list[int]:
    """``count`` distinct primes drawn from the first ``pool`` (odd) primes."""
    start = 2 if odd else 1
    pool = max(pool, count)
    return [prime(k) for k in rng.sample(range(start, start + pool), count)]


def random_structure(rng: random.Random, n: int) -> Poset:
    return rng.choice(enumerate_meet_semilattices(n))


def realize_randomly(
    rng: random.Random,
    L: Poset,
    odd: bool = True,
    inflate_prob: float = 0.3,
    max_power: int = 3,
) -> Sample:
    """Squarefree realization with random primes, then each non-bottom element
    is inflated by a random power of its prime with probability ``inflate_prob``."""
    real = realize_squarefree(L, random_primes(rng, L.n - 1, odd))
    values = list(real.base)
    done = []
    for i in range(1, len(values)):
        if rng.random() < inflate_prob:
            power = rng.randint(1, max_power)
            done.append((real.iso[i], power))
            scale = real.primes[i] ** power
            values = [v * scale if v % real.base[i] == 0 else v for v in values]
    S = GcdClosedSet(values)
    return Sample(L, real, S, tuple(done))


def random_gcd_closed_set(
    rng: random.Random,
    max_n: int = 8,
    min_n: int = 1,
    odd: bool = True,
    inflate_prob: float = 0.3,
    max_power: int = 3,
) -> Sample:
    n = rng.randint(min_n, max_n)
    return realize_randomly(rng, random_structure(rng, n), odd, inflate_prob, max_power)


def corpus(seed: int, count: int, **kw) -> list[Sample]:
    rng = random.Random(seed)
    return [random_gcd_closed_set(rng, **kw) for _ in range(count)]

