from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from conftest import semilattices
from oracles import mobius_by_inversion
from lcmlattice.enumeration import class_representative, enumerate_meet_semilattices, enumerate_posets
from lcmlattice.errors import BadIndex, BadIndexOrder, CycleDetected, NotReduced, NotSemilattice
from lcmlattice.integer_sets import ODD_COUNTEREXAMPLE, divisibility_poset
from lcmlattice.poset import Poset, antichain, boolean_lattice, chain, from_covers

DIAMOND = [(0, 1), (0, 2), (1, 3), (2, 3)]


class TestFromCovers:
    def test_two_chain(self):
        p = from_covers(2, [(0, 1)])
        assert p.leq(0, 1) and not p.leq(1, 0)
        assert p.covers == {(0, 1)}

    def test_rejects_implied_cover(self):
        with pytest.raises(NotReduced):
            from_covers(3, [(0, 1), (1, 2), (0, 2)])

    def test_rejects_bad_index_order(self):
        with pytest.raises(BadIndexOrder):
            from_covers(3, [(2, 0)])

    def test_relabel_fixes_index_order(self):
        p = from_covers(3, [(2, 0)], relabel=True)
        assert len(p.covers) == 1
        (a, b), = p.covers
        assert a < b
        assert p.minimal_elements() == [0, 1]

    def test_rejects_cycle(self):
        with pytest.raises(CycleDetected):
            from_covers(3, [(0, 1), (1, 2), (2, 0)], relabel=True)
        with pytest.raises(CycleDetected):
            from_covers(2, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(BadIndex):
            from_covers(2, [(0, 5)])

    def test_empty(self):
        p = from_covers(0, [])
        assert p.n == 0 and not p.is_meet_semilattice()


class TestMeets:
    def test_chain_meet(self):
        assert chain(2).meet(0, 1) == 0

    def test_diamond_meet(self):
        p = from_covers(4, DIAMOND)
        assert p.meet(1, 2) == 0
        assert p.meet(3, 1) == 1

    def test_antichain_has_no_meet(self):
        assert antichain(2).meet(0, 1) is None
        assert not antichain(2).is_meet_semilattice()

    def test_two_maximal_common_lower_bounds(self):
        # 0 and 1 are both below 2 and 3: no greatest common lower bound
        p = from_covers(4, [(0, 2), (1, 2), (0, 3), (1, 3)])
        assert p.meet(2, 3) is None

    def test_chains_are_semilattices(self):
        assert all(chain(n).is_meet_semilattice() for n in range(1, 8))

    def test_cube_is_semilattice(self):
        assert class_representative("8_J").is_meet_semilattice()

    def test_semilattice_matches_definition(self):
        for n in range(1, 6):
            for p in enumerate_posets(n):
                expected = all(
                    sum(
                        1
                        for g in range(n)
                        if p.leq(g, i) and p.leq(g, j)
                        and all(p.leq(z, g) for z in range(n) if p.leq(z, i) and p.leq(z, j))
                    ) == 1
                    for i in range(n) for j in range(n)
                )
                assert p.is_meet_semilattice() == expected


class TestCovers:
    def test_chain_top(self):
        assert chain(5).covers_of(4) == {3}

    def test_cube_top_covers_coatoms(self):
        cube = class_representative("8_J")
        assert len(cube.covers_of(7)) == 3

    def test_bottom_covers_nothing(self):
        assert from_covers(4, DIAMOND).covers_of(0) == set()

    def test_out_of_range(self):
        with pytest.raises(BadIndex):
            chain(3).covers_of(3)


class TestXi:
    def test_diamond(self):
        p = from_covers(4, DIAMOND)
        assert p.xi(3) == 0
        assert p.xi(1) == 0
        assert p.xi(0) == 0

    def test_chain_predecessor(self):
        assert chain(4).xi(3) == 2

    def test_requires_semilattice(self):
        # 4 covers 2 and 3, whose common lower bounds 0 and 1 are incomparable
        p = from_covers(5, [(0, 2), (1, 2), (0, 3), (1, 3), (2, 4), (3, 4)])
        with pytest.raises(NotSemilattice):
            p.xi(4)


class TestWedgeTree:
    def test_chain(self):
        assert chain(4).is_wedge_tree()

    def test_fan(self):
        p = from_covers(4, [(0, 1), (0, 2), (0, 3)])
        assert p.is_wedge_tree()

    def test_diamond(self):
        assert not from_covers(4, DIAMOND).is_wedge_tree()

    def test_needs_semilattice(self):
        with pytest.raises(NotSemilattice):
            antichain(2).is_wedge_tree()


class TestMobius:
    def test_three_chain(self):
        mu = chain(3).mobius()
        assert (mu[0, 2], mu[1, 2], mu[0, 1]) == (0, -1, -1)

    def test_nine_element_lattice_column(self):
        mu = divisibility_poset(ODD_COUNTEREXAMPLE).mobius()
        assert mu.column(8) == [-1, 2, 1, 1, -1, -1, -1, -1, 1]

    def test_cube_labels(self):
        mu = class_representative("8_J").mobius()
        assert mu[0, 7] == -1
        assert [mu[a, 7] for a in (1, 2, 3)] == [1, 1, 1]
        assert [mu[c, 7] for c in (4, 5, 6)] == [-1, -1, -1]

    def test_boolean_lattice_signs(self):
        p = boolean_lattice(3)
        mu = p.mobius()
        for z in range(p.n):
            for x in range(p.n):
                if p.leq(z, x):
                    rank = len(p.interval(z, x)).bit_length() - 1
                    assert mu[z, x] == (-1) ** rank

    def test_bad_method(self):
        with pytest.raises(ValueError):
            chain(2).mobius(method="sideways")

    def test_matches_zeta_inverse_on_all_small_posets(self):
        for n in range(1, 6):
            for p in enumerate_posets(n):
                inv = mobius_by_inversion(n, p.leq)
                mu = p.mobius()
                assert all(mu[z, x] == inv[z][x] for z in range(n) for x in range(n))

    def test_cached_table_is_reused(self):
        p = chain(4)
        assert p.mobius() is p.mobius()


@given(semilattices(1, 7))
def test_mobius_table_invariants(p: Poset):
    mu = p.mobius()
    n = p.n
    for x in range(n):
        assert mu[x, x] == 1
        for z in range(n):
            if not p.leq(z, x):
                assert mu[z, x] == 0
            else:
                iv = p.interval(z, x)
                delta = int(z == x)
                assert sum(mu[v, x] for v in iv) == delta
                assert sum(mu[z, v] for v in iv) == delta


@given(semilattices(1, 7))
def test_both_recursions_agree(p: Poset):
    assert p.mobius("upper") == p.mobius("lower")


def all_semilattices(max_n: int = 7):
    for n in range(1, max_n + 1):
        yield from enumerate_meet_semilattices(n)


def test_mobius_vanishes_outside_xi_interval():
    for p in all_semilattices():
        mu = p.mobius()
        for x in range(p.n):
            y = p.xi(x)
            for z in range(p.n):
                if not (p.leq(y, z) and p.leq(z, x)):
                    assert mu[z, x] == 0


@given(semilattices(1, 7))
def test_single_cover_gives_minus_one(p: Poset):
    # an element covering exactly y has mu(y, x) = -1 and zero below y
    mu = p.mobius()
    for x in range(p.n):
        lower = p.covers_of(x)
        if len(lower) == 1:
            (y,) = lower
            assert mu[y, x] == -1
            assert all(mu[z, x] == 0 for z in range(p.n) if z not in (x, y))


@given(st.integers(1, 7))
def test_chain_properties(n: int):
    p = chain(n)
    assert p.is_wedge_tree()
    assert not p.has_positive_nontrivial_mobius()


def test_pruned_recursion_agrees():
    for p in all_semilattices():
        assert p.mobius(use_lemma=True) == p.mobius()


def test_nonzero_mobius_sits_at_meet_of_covers_above():
    # mu(z, x) != 0 forces z to be the meet of the covers of x lying above z
    for p in all_semilattices():
        mu = p.mobius()
        for x in range(p.n):
            for z in range(x):
                if mu[z, x] != 0:
                    above = [c for c in p.covers_of(x) if p.leq(z, c)]
                    assert above and p.meet_all(above) == z


def test_wedge_trees_have_no_positive_mobius():
    for p in all_semilattices():
        assert p.is_wedge_tree() == (not p.has_positive_nontrivial_mobius())


def test_positive_mobius_examples():
    assert from_covers(4, DIAMOND).has_positive_nontrivial_mobius()
    assert class_representative("8_J").has_positive_nontrivial_mobius()
