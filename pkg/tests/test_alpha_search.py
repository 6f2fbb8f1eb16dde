from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import semilattices
from lcmlattice.alpha_search import (
    AlphaBracket,
    bisect_root,
    construct_singular_instance,
    find_sign_change,
    h_derivative_at_zero,
    h_eval,
)
from lcmlattice.corpus import realize_randomly
from lcmlattice.enumeration import class_representative, enumerate_meet_semilattices
from lcmlattice.errors import IsWedgeTree, NoPositiveMobius, NotSemilattice, PrecisionExhausted, RMaxExceeded
from lcmlattice.integer_sets import ODD_COUNTEREXAMPLE, inflate, q_modified_counterexample, realize_squarefree
from lcmlattice.matrices import psi, psi_terms
from lcmlattice.poset import antichain, chain, from_covers

F = Fraction
DIAMOND = from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


class TestEval:
    def test_diamond_at_one(self):
        v = h_eval([1, 3, 5, 45], 3, 1)
        assert v.contains(F(22, 45)) and v.sign == 1

    def test_diamond_at_quarter(self):
        assert h_eval([1, 3, 5, 45], 3, F(1, 4)).sign == -1

    @given(st.integers(1, 10**9), st.fractions(F(1, 100), 20, max_denominator=100))
    def test_minimum(self, x, alpha):
        v = h_eval([x], 0, alpha)
        assert v.sign == 1

    @given(semilattices(1, 6), st.integers(1, 3), st.randoms(use_true_random=False))
    def test_encloses_exact_value(self, L, alpha, rng):
        s = realize_randomly(rng, L).set
        for i in range(len(s)):
            assert h_eval(s, i, alpha).contains(psi(s, alpha, i))


class TestSignChange:
    def test_diamond_bracket(self):
        b = find_sign_change([1, 3, 5, 45], 3, (F(1, 10), F(1)), 16)
        assert b is not None and b.a_lo < F(328594, 10**6) < b.a_hi
        assert b.signs == (-1, 1)

    def test_factored_diamond_has_none(self):
        assert find_sign_change([1, 3, 5, 15], 3) is None
        assert find_sign_change([1, 3, 5, 15], 3, (F(1, 100), F(3)), 8, spacing="linear") is None

    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_chain_has_none(self, i):
        assert find_sign_change([1, 3, 15, 105], i) is None

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            find_sign_change([1, 3], 1, (F(0), F(1)))
        with pytest.raises(ValueError):
            find_sign_change([1, 3], 1, grid=1)
        with pytest.raises(ValueError):
            find_sign_change([1, 3], 1, spacing="cubic")

    def test_undecided_point_reported(self):
        # Psi vanishes exactly at alpha = 1 on the counterexample set
        with pytest.raises(PrecisionExhausted):
            find_sign_change(ODD_COUNTEREXAMPLE, 8, (F(1, 2), F(1)), 2, max_precision=512)


class TestBisect:
    def test_diamond_root(self):
        b = find_sign_change([1, 3, 5, 45], 3, (F(1, 10), F(1)), 16)
        root, steps = bisect_root([1, 3, 5, 45], 3, b, F(1, 10**6))
        assert root.width <= F(1, 10**6) and steps > 0
        assert abs(float(root.mid) - 0.328594) < 1e-5
        assert h_eval([1, 3, 5, 45], 3, root.lo).sign == -1
        assert h_eval([1, 3, 5, 45], 3, root.hi).sign == 1

    def test_narrow_bracket_returned_as_is(self):
        b = AlphaBracket(F(3285, 10**4), F(3286, 10**4), 3)
        root, steps = bisect_root([1, 3, 5, 45], 3, b, F(1, 1000))
        assert steps == 0 and (root.lo, root.hi) == (b.a_lo, b.a_hi)

    def test_rejects_non_bracket(self):
        with pytest.raises(ValueError):
            bisect_root([1, 3, 5, 45], 3, AlphaBracket(F(1), F(2), 3))

    def test_matches_float_root(self):
        # plain float bisection agrees to the tolerance used here
        f = lambda a: 1 / 45**a - 1 / 5**a - 1 / 3**a + 1
        lo, hi = 0.1, 1.0
        for _ in range(60):
            mid = (lo + hi) / 2
            lo, hi = (mid, hi) if f(mid) < 0 else (lo, mid)
        b = find_sign_change([1, 3, 5, 45], 3, (F(1, 10), F(1)), 16)
        root, _ = bisect_root([1, 3, 5, 45], 3, b, F(1, 10**12))
        assert abs(float(root.mid) - lo) < 1e-11

    def test_q_modified_root_above_one(self):
        S = q_modified_counterexample(11)
        assert h_eval(S, 8, 1).sign == 1
        b = find_sign_change(S, 8, (F(1), F(64)))
        root, _ = bisect_root(S, 8, b, F(1, 10**6))
        assert root.lo > 1


class TestDerivative:
    def test_matches_finite_difference(self):
        r = realize_squarefree(DIAMOND)
        for power in (0, 1, 3):
            S = inflate(r, 3, power) if power else r.base
            # x_k = 1 here, so the scaled function is h itself
            g = lambda a: sum(c / b**a for c, b in psi_terms(S, 3))
            h = 1e-6
            numeric = (g(h) - g(-h)) / (2 * h)
            d = h_derivative_at_zero(r, 3, 0, power)
            assert abs(float(d.mid) - numeric) < 1e-5

    def test_grows_linearly_in_r(self):
        r = realize_squarefree(DIAMOND)
        d = [float(h_derivative_at_zero(r, 3, 0, k).mid) for k in range(4)]
        slope = d[1] - d[0]
        assert slope == pytest.approx(-math.log(7))
        assert d[3] - d[2] == pytest.approx(slope)

    def test_negative_for_large_r(self):
        r = realize_squarefree(DIAMOND)
        assert h_derivative_at_zero(r, 3, 0, 8).sign == -1

    def test_no_positive_mobius(self):
        r = realize_squarefree(chain(3))
        with pytest.raises(NoPositiveMobius):
            h_derivative_at_zero(r, 2, 0, 1)
        with pytest.raises(NoPositiveMobius):
            h_derivative_at_zero(r, 2, 2, 1)

    def test_limit_at_infinity(self):
        r = realize_squarefree(DIAMOND)
        S = inflate(r, 3, 2)
        # x_k = 1 and mu(1, top) = 1
        for a in (20, 40):
            assert abs(float(h_eval(S, 3, a).mid) - 1) < 2.0**-20


class TestConstruct:
    def test_diamond(self):
        rep = construct_singular_instance(DIAMOND)
        assert rep.verified and rep.alpha0.lo > 0
        assert rep.alpha0.width <= F(1, 10**9)
        assert h_eval(rep.set, rep.i, rep.alpha0.lo).sign * h_eval(rep.set, rep.i, rep.alpha0.hi).sign == -1

    def test_cube(self):
        rep = construct_singular_instance(class_representative("8_J"))
        assert rep.verified and len(rep.set) == 8

    def test_chain_is_wedge_tree(self):
        with pytest.raises(IsWedgeTree):
            construct_singular_instance(chain(4))

    def test_needs_semilattice(self):
        with pytest.raises(NotSemilattice):
            construct_singular_instance(antichain(2))

    def test_r_max_exceeded(self):
        with pytest.raises(RMaxExceeded):
            construct_singular_instance(DIAMOND, r_max=0)

    def test_custom_primes(self):
        rep = construct_singular_instance(DIAMOND, primes=[11, 13, 17])
        assert all(x % 3 and x % 5 for x in rep.set)


def test_wedge_trees_never_singular_at_sampled_alpha():
    rng = random.Random(5)
    for n in range(1, 7):
        for L in enumerate_meet_semilattices(n):
            if not L.is_wedge_tree():
                continue
            for _ in range(50):
                s = realize_randomly(rng, L).set
                alpha = F(rng.randint(1, 5000), 1000)
                for i in range(len(s)):
                    assert h_eval(s, i, alpha, 128).certified


def test_construction_succeeds_for_every_small_non_tree():
    count = 0
    for n in range(1, 6):
        for L in enumerate_meet_semilattices(n):
            if L.is_wedge_tree():
                continue
            rep = construct_singular_instance(L, tol=F(1, 10**6))
            assert rep.verified
            count += 1
    assert count > 0
