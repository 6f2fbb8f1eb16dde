"""Finite posets on the index set ``0..n-1``.

A :class:`Poset` stores its Hasse diagram and the reflexive-transitive closure
as bitmasks (``down[x]`` has bit ``z`` set iff ``z <= x``).  Index order is
always a linear extension: ``z < x`` in the poset implies ``z < x`` as ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    BadIndex,
    BadIndexOrder,
    CycleDetected,
    NotReduced,
    NotSemilattice,
)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Immutable finite poset.

    Build one with :meth:`from_covers` (validating) or :meth:`from_order`
    (computes the transitive reduction of an arbitrary order relation).
    """

    __slots__ = ("n", "down", "up", "__dict__")

    def __init__(self, down: Sequence[int]):
        # trusted constructor: down[x] is the closed down-set of x and index
        # order is a linear extension
        self.n = len(down)
        self.down = tuple(down)
        up = [0] * self.n
        for x, mask in enumerate(self.down):
            for z in _bits(mask):
                up[z] |= 1 << x
        self.up = tuple(up)

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def from_covers(
        cls, n: int, covers: Iterable[tuple[int, int]], relabel: bool = False
    ) -> "Poset":
        """Validate a Hasse diagram given as ``(child, parent)`` pairs.

        Raises CycleDetected, NotReduced, BadIndex, and BadIndexOrder (the
        last only when ``relabel`` is false; otherwise the elements are
        renumbered along a linear extension, smallest level first).
        """
        if n < 0:
            raise BadIndex(f"negative size {n}")
        pairs = set()
        for a, b in covers:
            a, b = int(a), int(b)
            if not (0 <= a < n and 0 <= b < n):
                raise BadIndex(f"cover ({a}, {b}) out of range for n={n}")
            if a == b:
                raise CycleDetected(f"self-loop at {a}")
            pairs.add((a, b))

        parents = [[] for _ in range(n)]
        indeg = [0] * n
        for a, b in pairs:
            parents[a].append(b)
            indeg[b] += 1
        # Kahn's algorithm, smallest (level, index) first
        order = []
        level = [0] * n
        ready = sorted(x for x in range(n) if indeg[x] == 0)
        while ready:
            x = ready.pop(0)
            order.append(x)
            for y in parents[x]:
                level[y] = max(level[y], level[x] + 1)
                indeg[y] -= 1
                if indeg[y] == 0:
                    ready.append(y)
            ready.sort(key=lambda v: (level[v], v))
        if len(order) != n:
            raise CycleDetected("cover relation contains a cycle")

        down = [1 << x for x in range(n)]
        for x in order:
            for y in parents[x]:
                down[y] |= down[x]
        for a, b in sorted(pairs):
            between = down[b] & ~(1 << b) & ~(1 << a)
            for c in _bits(between):
                if down[c] >> a & 1:
                    raise NotReduced(f"cover ({a}, {b}) is implied via {c}")

        if any(a > b for a, b in pairs):
            if not relabel:
                bad = min((a, b) for a, b in pairs if a > b)
                raise BadIndexOrder(
                    f"cover {bad} violates the linear-extension indexing"
                )
            order = sorted(range(n), key=lambda v: (level[v], v))
            new = {old: i for i, old in enumerate(order)}
            return cls.from_covers(n, [(new[a], new[b]) for a, b in pairs])
        return cls(down)

    @classmethod
    def from_order(cls, n: int, less) -> "Poset":
        """Poset from a strict-order predicate ``less(i, j)``.

        The predicate must already respect index order (``less(i, j)``
        implies ``i < j``); transitivity is not checked.
        """
        down = []
        for x in range(n):
            mask = 1 << x
            for z in range(x):
                if less(z, x):
                    mask |= 1 << z
            for z in range(x + 1, n):
                if less(z, x):
                    raise BadIndexOrder(f"{z} < {x} violates index order")
            down.append(mask)
        return cls(down)

    # ------------------------------------------------------------------
    # basic queries

    def _check(self, *xs: int) -> None:
        for x in xs:
            if not 0 <= x < self.n:
                raise BadIndex(f"element {x} out of range for n={self.n}")

    def leq(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    def below(self, x: int) -> list[int]:
        """Elements ``z <= x`` (closed down-set), ascending."""
        return list(_bits(self.down[x]))

    def above(self, x: int) -> list[int]:
        return list(_bits(self.up[x]))

    def interval(self, z: int, x: int) -> list[int]:
        return list(_bits(self.up[z] & self.down[x]))

    @cached_property
    def _lower_covers(self) -> tuple[int, ...]:
        lower = []
        for x in range(self.n):
            strict = self.down[x] & ~(1 << x)
            mask = strict
            for z in _bits(strict):
                mask &= ~(self.down[z] & ~(1 << z))
            lower.append(mask)
        return tuple(lower)

    @cached_property
    def _upper_covers(self) -> tuple[int, ...]:
        upper = [0] * self.n
        for x, mask in enumerate(self._lower_covers):
            for z in _bits(mask):
                upper[z] |= 1 << x
        return tuple(upper)

    def covers_of(self, x: int) -> set[int]:
        """Elements covered by ``x``."""
        self._check(x)
        return set(_bits(self._lower_covers[x]))

    def upper_covers(self, x: int) -> set[int]:
        self._check(x)
        return set(_bits(self._upper_covers[x]))

    @cached_property
    def covers(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (z, x) for x in range(self.n) for z in _bits(self._lower_covers[x])
        )

    def cover_list(self) -> list[tuple[int, int]]:
        return sorted(self.covers)

    def maximal_elements(self) -> list[int]:
        return [x for x in range(self.n) if self.up[x] == 1 << x]

    def minimal_elements(self) -> list[int]:
        return [x for x in range(self.n) if self.down[x] == 1 << x]

    @cached_property
    def levels(self) -> tuple[int, ...]:
        """Length of the longest chain ending at each element."""
        lev = [0] * self.n
        for x in range(self.n):
            for z in _bits(self._lower_covers[x]):
                lev[x] = max(lev[x], lev[z] + 1)
        return tuple(lev)

    def relabel(self, order: Sequence[int]) -> "Poset":
        """Poset whose element ``k`` is the old element ``order[k]``.

        ``order`` must be a linear extension.
        """
        if sorted(order) != list(range(self.n)):
            raise BadIndexOrder("relabeling is not a permutation")
        return Poset.from_order(self.n, lambda a, b: self.lt(order[a], order[b]))

    # ------------------------------------------------------------------
    # meets and semilattice structure

    def meet(self, i: int, j: int) -> int | None:
        """Greatest common lower bound of ``i`` and ``j``, or None."""
        self._check(i, j)
        common = self.down[i] & self.down[j]
        if not common:
            return None
        top = common.bit_length() - 1  # largest index is a candidate maximum
        return top if self.down[top] == common else None

    def is_meet_semilattice(self) -> bool:
        if self.n == 0:
            return False
        return all(
            self.meet(i, j) is not None
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    def meet_all(self, xs: Iterable[int]) -> int | None:
        it = iter(xs)
        acc = next(it)
        for x in it:
            acc = self.meet(acc, x)
            if acc is None:
                return None
        return acc

    def xi(self, x: int) -> int:
        """Meet of the elements covered by ``x`` (``x`` itself if none)."""
        lower = self.covers_of(x)
        if not lower:
            return x
        m = self.meet_all(sorted(lower))
        if m is None:
            raise NotSemilattice(f"covers of {x} have no meet")
        return m

    def is_wedge_tree(self) -> bool:
        """True iff every element covers at most one element."""
        if not self.is_meet_semilattice():
            raise NotSemilattice("wedge-tree test needs a meet semilattice")
        return all(m & (m - 1) == 0 for m in self._lower_covers)

    # ------------------------------------------------------------------
    # Möbius function

    def mobius(self, method: str = "upper", use_lemma: bool = False) -> "MobiusTable":
        """Möbius table ``values[z][x] = mu(z, x)``.

        ``method="upper"`` sums over ``z < v <= x`` (row recursion on the
        second argument), ``method="lower"`` over ``z <= v < x``.  With
        ``use_lemma`` (meet semilattices only) every ``z`` outside
        ``[xi(x), x]`` is set to zero without being computed.
        """
        if use_lemma:
            cached = None
        else:
            cached = self.__dict__.get("_mobius_" + method)
            if cached is not None:
                return cached
        n = self.n
        mu = [[0] * n for _ in range(n)]
        if method == "upper":
            for x in range(n):
                mu[x][x] = 1
                span = self.down[x]
                if use_lemma:
                    span &= self.up[self.xi(x)]
                for z in sorted(_bits(span & ~(1 << x)), reverse=True):
                    mu[z][x] = -sum(
                        mu[v][x] for v in _bits(self.up[z] & span & ~(1 << z))
                    )
        elif method == "lower":
            if use_lemma:
                raise ValueError("use_lemma is only supported with method='upper'")
            for z in range(n):
                mu[z][z] = 1
                for x in _bits(self.up[z] & ~(1 << z)):
                    mu[z][x] = -sum(
                        mu[z][v] for v in _bits(self.up[z] & self.down[x] & ~(1 << x))
                    )
        else:
            raise ValueError(f"unknown method {method!r}")
        table = MobiusTable(tuple(tuple(row) for row in mu))
        if not use_lemma:
            self.__dict__["_mobius_" + method] = table
        return table

    def has_positive_nontrivial_mobius(self) -> bool:
        mu = self.mobius().values
        return any(mu[z][x] > 0 for x in range(self.n) for z in range(x))

    # ------------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Poset) and self.down == other.down

    def __hash__(self):
        return hash(self.down)

    def __repr__(self):
        return f"Poset(n={self.n}, covers={self.cover_list()})"


@dataclass(frozen=True)
class MobiusTable:
    values: tuple[tuple[int, ...], ...]

    def __getitem__(self, key: tuple[int, int]) -> int:
        z, x = key
        return self.values[z][x]

    @property
    def n(self) -> int:
        return len(self.values)

    def column(self, x: int) -> list[int]:
        """``[mu(z, x) for z in range(n)]``."""
        return [row[x] for row in self.values]


def from_covers(n: int, covers: Iterable[tuple[int, int]], relabel: bool = False) -> Poset:
    return Poset.from_covers(n, covers, relabel=relabel)


def chain(n: int) -> Poset:
    return Poset.from_covers(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return Poset.from_covers(n, [])


def boolean_lattice(k: int) -> Poset:
    """Subsets of a ``k``-set ordered by inclusion, indexed by popcount then value."""
    subsets = sorted(range(1 << k), key=lambda s: (bin(s).count("1"), s))
    return Poset.from_order(
        len(subsets),
        lambda a, b: subsets[a] != subsets[b] and subsets[a] & subsets[b] == subsets[a],
    )
