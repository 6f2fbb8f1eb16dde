"""Canonical labeling of small posets.

Vertices are colored by (level, #lower covers, #upper covers, |down-set|,
|up-set|), the coloring is refined with the colors of cover neighbours until
stable, and the search then individualizes one vertex at a time.  Each leaf
is a total order of the vertices; the canonical form is the lexicographically
smallest strict-order encoding over all leaves.

Colors are ranks of sorted invariant keys and every refinement key starts
with the previous color, so the leaf orders stay level-sorted and therefore
are linear extensions.  Twins (same strict down-set and up-set) are
interchangeable, so only one twin per cell is individualized.
"""

from __future__ import annotations

from typing import Sequence

from .poset import Poset, _bits


def _rank(keys: Sequence) -> list[int]:
    table = {k: r for r, k in enumerate(sorted(set(keys)))}
    return [table[k] for k in keys]


def _refine(p: Poset, colors: list[int]) -> list[int]:
    lower = p._lower_covers
    upper = p._upper_covers
    n_colors = len(set(colors))
    while True:
        keys = [
            (
                colors[v],
                tuple(sorted(colors[u] for u in _bits(lower[v]))),
                tuple(sorted(colors[u] for u in _bits(upper[v]))),
            )
            for v in range(p.n)
        ]
        colors = _rank(keys)
        k = len(set(colors))
        if k == n_colors:
            return colors
        n_colors = k


def _initial_colors(p: Poset, marks: Sequence[int] | None) -> list[int]:
    lower = p._lower_covers
    upper = p._upper_covers
    keys = [
        (
            p.levels[v],
            bin(lower[v]).count("1"),
            bin(upper[v]).count("1"),
            bin(p.down[v]).count("1"),
            bin(p.up[v]).count("1"),
            0 if marks is None else marks[v],
        )
        for v in range(p.n)
    ]
    return _rank(keys)


def _encode(p: Poset, order: Sequence[int]) -> bytes:
    out = bytearray([p.n])
    for a in range(1, p.n):
        x = order[a]
        acc = 0
        nbits = 0
        for b in range(a):
            acc = acc << 1 | (p.down[x] >> order[b] & 1)
            nbits += 1
            if nbits == 8:
                out.append(acc)
                acc = nbits = 0
        if nbits:
            out.append(acc << (8 - nbits))
    return bytes(out)


def canonical_labeling(
    p: Poset, marks: Sequence[int] | None = None
) -> tuple[bytes, list[int]]:
    """Return ``(form, order)``; ``order[k]`` is the vertex placed at position k.

    ``marks`` is an optional initial vertex coloring (any sortable values)
    that isomorphisms must preserve.
    """
    n = p.n
    if n == 0:
        return b"\x00", []
    twin_key = [
        (p.down[v] & ~(1 << v), p.up[v] & ~(1 << v), None if marks is None else marks[v])
        for v in range(n)
    ]
    mark_rank = None if marks is None else _rank(list(marks))
    best: list = [None, None]

    def search(colors: list[int]) -> None:
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = c
                break
        if target is None:
            order = sorted(range(n), key=colors.__getitem__)
            code = _encode(p, order)
            if mark_rank is not None:
                code += bytes(mark_rank[v] for v in order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        seen = set()
        for v in cells[target]:
            if twin_key[v] in seen:
                continue
            seen.add(twin_key[v])
            split = [2 * c + (0 if u == v else 1) if c == target else 2 * c for u, c in enumerate(colors)]
            search(_refine(p, _rank(split)))

    search(_refine(p, _initial_colors(p, marks)))
    return best[0], best[1]


def canonical_form(p: Poset) -> bytes:
    """Isomorphism-invariant byte string; equal iff the posets are isomorphic."""
    return canonical_labeling(p)[0]


def canonical_poset(p: Poset) -> Poset:
    """The representative of ``p``'s isomorphism class in canonical labeling."""
    return p.relabel(canonical_labeling(p)[1])


def are_isomorphic(p: Poset, q: Poset) -> bool:
    return p.n == q.n and canonical_form(p) == canonical_form(q)


def same_orbit(p: Poset, u: int, v: int) -> bool:
    """True iff some automorphism of ``p`` maps ``u`` to ``v``."""
    if u == v:
        return True
    mark_u = [int(w == u) for w in range(p.n)]
    mark_v = [int(w == v) for w in range(p.n)]
    return canonical_labeling(p, mark_u)[0] == canonical_labeling(p, mark_v)[0]
