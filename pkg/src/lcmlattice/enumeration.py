"""Meet-semilattice enumeration and the 8-element filtering pipeline.

Posets grow one maximal element at a time.  An extension of a parent is
accepted only when the new element lies in the automorphism orbit of the
child's canonical maximal element (the vertex in the last canonical
position), so each isomorphism class is reached from exactly one parent;
extensions of the same parent are deduplicated by canonical form.

Deleting a maximal element from a meet semilattice leaves a meet semilattice,
so the semilattice search only ever extends semilattices.  The plain poset
search (``enumerate_posets``) follows the same scheme without that pruning
and serves as the cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .canonical import canonical_form, canonical_labeling, same_orbit
from .errors import NotMaximal, SizeTooLarge, WrongSize
from .poset import Poset, _bits

MAX_N = 9


def _ideals(p: Poset) -> Iterator[int]:
    """All order ideals (down-closed subsets) of ``p`` as bitmasks."""
    n = p.n

    # antichains in index order; the ideal is the union of their down-sets
    def rec(start: int, forbidden: int, ideal: int) -> Iterator[int]:
        yield ideal
        for x in range(start, n):
            if forbidden >> x & 1:
                continue
            yield from rec(x + 1, forbidden | p.down[x] | p.up[x], ideal | p.down[x])

    yield from rec(0, 0, 0)


def _extends_semilattice(p: Poset, ideal: int) -> bool:
    if p.n == 0:
        return True
    if not ideal:
        return False
    for y in range(p.n):
        common = ideal & p.down[y]
        if not common:
            return False
        top = common.bit_length() - 1
        if p.down[top] != common:
            return False
    return True


def _children(parent: Poset, semilattice: bool) -> list[tuple[bytes, Poset]]:
    n = parent.n
    out = {}
    for ideal in _ideals(parent):
        if semilattice and not _extends_semilattice(parent, ideal):
            continue
        child = Poset(parent.down + (ideal | 1 << n,))
        form, order = canonical_labeling(child)
        if form in out:
            continue
        last = order[-1]
        if last != n and not same_orbit(child, n, last):
            continue
        out[form] = child.relabel(order)
    return sorted(out.items())


@lru_cache(maxsize=None)
def _level(n: int, semilattice: bool) -> tuple[tuple[bytes, Poset], ...]:
    if n == 0:
        return ((b"", Poset(())),)
    found = []
    for _, parent in _level(n - 1, semilattice):
        found.extend(_children(parent, semilattice))
    found.sort()
    return tuple(found)


def _check_size(n: int) -> None:
    if n < 1:
        raise ValueError(f"size must be positive, got {n}")
    if n > MAX_N:
        raise SizeTooLarge(f"n={n} exceeds the supported bound {MAX_N}")


def enumerate_posets(n: int) -> list[Poset]:
    """One canonical representative per isomorphism class of n-element posets."""
    _check_size(n)
    return [p for _, p in _level(n, False)]


def enumerate_meet_semilattices(n: int, via_posets: bool = False) -> list[Poset]:
    """Canonical representatives of the n-element meet semilattices.

    Sorted by canonical form.  ``via_posets`` generates every poset first and
    filters at the final size (slower; used as a cross-check).
    """
    _check_size(n)
    if via_posets:
        return [p for p in enumerate_posets(n) if p.is_meet_semilattice()]
    return [p for _, p in _level(n, True)]


# ----------------------------------------------------------------------
# filters


def filter_max_cover_at_least(p: Poset, k: int) -> bool:
    """True iff every maximal element covers at least ``k`` elements."""
    return all(len(p.covers_of(m)) >= k for m in p.maximal_elements())


def filter_no_prunable_zero(p: Poset, top: int) -> bool:
    """True iff no element ``e`` has ``mu(e, top) == 0``, at most one lower
    cover and exactly one upper cover."""
    if top not in p.maximal_elements():
        raise NotMaximal(f"{top} is not a maximal element")
    mu = p.mobius()
    for e in range(p.n):
        if (
            len(p.covers_of(e)) <= 1
            and len(p.upper_covers(e)) == 1
            and mu[e, top] == 0
        ):
            return False
    return True


def admissible_tops(p: Poset) -> list[int]:
    """Maximal elements that pass :func:`filter_no_prunable_zero`."""
    return [m for m in p.maximal_elements() if filter_no_prunable_zero(p, m)]


# ----------------------------------------------------------------------
# the ten classes that survive for n = 8 (element 0 is x_1, ..., 7 is x_8)

_CLASS_COVERS_1BASED = {
    "8_A": [(1, 2), (2, 3), (2, 4), (2, 5), (1, 6), (1, 7),
            (3, 8), (4, 8), (5, 8), (6, 8), (7, 8)],
    "8_B": [(1, 2), (1, 3), (2, 4), (2, 5), (2, 6), (3, 6), (3, 7),
            (4, 8), (5, 8), (6, 8), (7, 8)],
    "8_C": [(1, 2), (1, 3), (2, 4), (2, 5), (3, 5), (3, 7), (5, 6),
            (4, 8), (6, 8), (7, 8)],
    "8_D": [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7),
            (4, 8), (5, 8), (6, 8), (7, 8)],
    "8_E": [(1, 2), (2, 3), (2, 4), (2, 5), (2, 6), (1, 7),
            (3, 8), (4, 8), (5, 8), (6, 8), (7, 8)],
    "8_F": [(1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 6), (3, 7),
            (4, 8), (5, 8), (6, 8), (7, 8)],
    "8_G": [(1, 2), (2, 3), (2, 4), (1, 5), (1, 6), (1, 7),
            (3, 8), (4, 8), (5, 8), (6, 8), (7, 8)],
    "8_H": [(1, 2), (2, 3), (3, 4), (3, 5), (2, 6), (1, 7),
            (4, 8), (5, 8), (6, 8), (7, 8)],
    "8_I": [(1, k) for k in range(2, 8)] + [(k, 8) for k in range(2, 8)],
    "8_J": [(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (2, 6), (4, 6),
            (3, 7), (4, 7), (5, 8), (6, 8), (7, 8)],
}

CLASS_TAGS = tuple(sorted(_CLASS_COVERS_1BASED))


@lru_cache(maxsize=None)
def class_representative(tag: str) -> Poset:
    covers = _CLASS_COVERS_1BASED[tag]
    return Poset.from_covers(8, [(a - 1, b - 1) for a, b in covers])


@lru_cache(maxsize=None)
def _class_forms() -> dict[bytes, str]:
    return {canonical_form(class_representative(t)): t for t in CLASS_TAGS}


def classify_8(p: Poset) -> str | None:
    """Tag ``"8_A"`` ... ``"8_J"`` of an 8-element poset, or None."""
    if p.n != 8:
        raise WrongSize(f"expected 8 elements, got {p.n}")
    return _class_forms().get(canonical_form(p))


# ----------------------------------------------------------------------


@dataclass
class EnumerationStats:
    n: int
    total_posets: int | None
    meet_semilattices: int
    after_cover_filter: int
    after_mobius_filter: int
    class_reps: list[Poset] = field(default_factory=list)
    class_tags: list[str | None] = field(default_factory=list)

    def counts(self) -> tuple[int, int, int]:
        return (self.meet_semilattices, self.after_cover_filter, self.after_mobius_filter)


def pipeline(n: int, min_cover: int = 3, count_posets: bool = False) -> EnumerationStats:
    """Enumerate, keep structures whose maximal elements all cover at least
    ``min_cover`` elements, then keep those admitting a top with no prunable
    zero of the Möbius function."""
    _check_size(n)
    total = len(enumerate_posets(n)) if count_posets else None
    sls = enumerate_meet_semilattices(n)
    covered = [p for p in sls if filter_max_cover_at_least(p, min_cover)]
    survivors = [p for p in covered if admissible_tops(p)]
    tags = [classify_8(p) for p in survivors] if n == 8 else [None] * len(survivors)
    return EnumerationStats(
        n=n,
        total_posets=total,
        meet_semilattices=len(sls),
        after_cover_filter=len(covered),
        after_mobius_filter=len(survivors),
        class_reps=survivors,
        class_tags=tags,
    )
