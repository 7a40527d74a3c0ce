import random
import warnings
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from ribbonobs import obstruction as ob
from ribbonobs.errors import BoundExceeded, DegenerateParameter


def trial_primes(x):
    x, out, q = abs(x), set(), 2
    while q * q <= x:
        while x % q == 0:
            out.add(q)
            x //= q
        q += 1
    if x > 1:
        out.add(x)
    return out


def supported_part_oracle(n, p):
    # independent of sympy: trial division over the primes of D
    primes = set()
    for pi in p:
        primes |= trial_primes(pi) | trial_primes(pi - 1)
    out = 1
    for q in primes:
        while n % (out * q) == 0:
            out *= q
    return out


def gcd_chain(n, d, steps=80):
    return gcd(n, d ** steps)


admissible = st.integers(-20, 20).filter(lambda x: x not in (0, 1))
triples = st.tuples(admissible, admissible, admissible).filter(lambda p: ob.n_value(p) != 0)


class TestN:
    def test_examples(self):
        assert ob.n_value((3, 5, 17)) == 127
        assert ob.n_value((2, 3, 7)) == 30

    def test_det_zero(self):
        assert ob.n_value((0, 4, 9)) == 3 * 8


class TestStabilizedGcd:
    def test_examples(self):
        assert ob.stabilized_gcd(104, 2) == 8
        assert ob.stabilized_gcd(30, 6) == 6
        assert ob.stabilized_gcd(127, 16) == 1

    def test_zero_n(self):
        with pytest.raises(DegenerateParameter):
            ob.stabilized_gcd(0, 3)

    def test_zero_d_flagged(self):
        with pytest.warns(UserWarning):
            assert ob.stabilized_gcd(-12, 0) == 12

    @settings(max_examples=200, deadline=None)
    @given(st.integers(-10**6, 10**6).filter(bool), st.integers(-50, 50).filter(bool))
    def test_matches_long_chain(self, n, d):
        g = ob.stabilized_gcd(n, d)
        assert g == gcd_chain(n, d)
        assert n % g == 0
        # the cofactor n/g shares nothing with d
        assert gcd(n // g, d) == 1


class TestM:
    def test_examples(self):
        assert ob.m_value(127, (3, 5, 17)) == 1
        d = ob.obstruction_data((2, 3, 7))
        assert d.m == 6 and d.g_values == (2, 3, 1, 1, 2, 6)
        assert ob.m_value(104, (3, 5, 17)) == 8

    def test_d_supported_part_random(self):
        rng = random.Random(20261016)
        done = 0
        while done < 200:
            p = tuple(rng.choice([x for x in range(-20, 21) if x not in (0, 1)]) for _ in range(3))
            n = ob.n_value(p)
            if n == 0:
                continue
            m = ob.m_value(n, p)
            assert m == supported_part_oracle(n, p) == ob.d_supported_part(n, p)
            done += 1

    def test_degenerate(self):
        with pytest.raises(DegenerateParameter):
            ob.m_value(5, (1, 3, 4))
        with pytest.raises(DegenerateParameter):
            ob.obstruction_data((0, 3, 4))

    def test_n_zero(self):
        p = next(p for p in [(a, b, c) for a in range(-6, 7) for b in range(-6, 7) for c in range(-6, 7)]
                 if all(x not in (0, 1) for x in p) and ob.n_value(p) == 0)
        with pytest.raises(DegenerateParameter):
            ob.obstruction_data(p)
        b = ob.derivative_set_bounds(p)
        assert not b.applicable and b.lower == 0


class TestBounds:
    def test_examples(self):
        b = ob.derivative_set_bounds((3, 5, 17))
        assert (b.lower, b.upper, b.exact) == (127, 127, True)
        b = ob.derivative_set_bounds((2, 3, 7))
        assert (b.lower, b.upper, b.exact) == (30, 5, False)

    def test_unit_n(self):
        p = next(p for p in [(a, b, c) for a in range(-6, 7) for b in range(-6, 7) for c in range(-6, 7)]
                 if all(x not in (0, 1) for x in p) and abs(ob.n_value(p)) == 1)
        b = ob.derivative_set_bounds(p)
        assert b.upper == 1 and b.exact

    @settings(max_examples=100, deadline=None)
    @given(triples)
    def test_exact_iff_m_one(self, p):
        b = ob.derivative_set_bounds(p)
        assert b.lower == b.upper * b.m
        assert b.exact == (b.m == 1)


class TestPsi:
    def test_examples(self):
        assert ob.psi_vanishes((3, 5, 17), 1).vanishes is False
        assert ob.psi_vanishes((3, 5, 17), 1).modulus == 127
        assert ob.psi_vanishes((3, 5, 17), 0).vanishes
        assert ob.psi_vanishes((3, 5, 17), 254).vanishes

    @settings(max_examples=100, deadline=None)
    @given(triples, st.integers(-500, 500), st.integers(-5, 5))
    def test_shift_by_n(self, p, mu, k):
        n = ob.n_value(p)
        assert ob.psi_vanishes(p, mu).vanishes == ob.psi_vanishes(p, mu + k * n).vanishes
        assert ob.psi_vanishes(p, mu).vanishes == ob.psi_vanishes(p, -mu).vanishes


class TestOracle:
    def test_examples(self):
        assert ob.intersection_oracle((3, 5, 17), 200) == 127
        assert ob.intersection_oracle((2, 3, 7), 40) == 5
        assert ob.intersection_oracle((2, 2, 2), 10) == 7

    def test_bound_exceeded(self):
        with pytest.raises(BoundExceeded):
            ob.intersection_oracle((3, 5, 17), 100)

    @settings(max_examples=100, deadline=None)
    @given(triples)
    def test_matches_closed_form(self, p):
        d = ob.obstruction_data(p)
        assert ob.intersection_oracle(p) == d.modulus


class TestFamily:
    def test_e1(self):
        t = ob.family_table(1)
        assert t.p == (3, 5, 17)
        assert [r.n for r in t.rows] == [127, 104, 44, -22]
        assert [r.m for r in t.rows] == [1, 8, 4, 2]
        assert [r.ratio for r in t.rows] == [127, 13, 11, -11]
        assert [r.published for r in t.rows] == [127, 13, 15, -11]
        assert [r.index for r in t.discrepancies] == [3]
        assert t.admissible

    @pytest.mark.parametrize("e", [1, 2, 3, 4])
    def test_rows_1_2_4_match_and_admissible(self, e):
        t = ob.family_table(e)
        assert t.admissible
        for r in t.rows:
            assert r.n == r.m * r.ratio
            if r.index != 3:
                assert not r.discrepancy

    @pytest.mark.parametrize("e", [1, 2, 3, 4])
    def test_row3_closed_form(self, e):
        # what the definitions give for row 3
        assert ob.family_table(e).rows[2].ratio == 2**(4 * e) - 2**(3 * e) + 2**e + 1

    def test_bad_e(self):
        with pytest.raises(ValueError):
            ob.family_table(0)
