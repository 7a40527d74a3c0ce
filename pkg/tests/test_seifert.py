import itertools
from fractions import Fraction
from math import gcd

import pytest

from ribbonobs import exact_algebra as ea
from ribbonobs import seifert as sf
from ribbonobs.errors import HypothesisRefused, NotSeifertMatrix
from ribbonobs.exact_algebra import LaurentPoly
from ribbonobs.seifert import BlockForm, Metaboliser

t = LaurentPoly.t()
Z3 = ea.zeros(3, 3)


def e(i, n=6):
    return tuple(int(k == i) for k in range(n))


def meta(*cols):
    return Metaboliser(ea.from_columns(cols))


@pytest.fixture(scope="module")
def ex1():
    return sf.from_block(BlockForm(Z3, (3, 5, 17)))


@pytest.fixture(scope="module")
def ex2():
    return sf.from_block(BlockForm(ea.diag(1, -1, 1), (3, 5, 17)))


class TestValidate:
    def test_valid(self):
        assert sf.validate([[0, 1], [0, 0]]).genus == 1
        assert sf.validate([[0, 3], [2, 0]]).genus == 1

    def test_invalid(self):
        with pytest.raises(NotSeifertMatrix):
            sf.validate([[0, 2], [0, 0]])
        with pytest.raises(NotSeifertMatrix):
            sf.validate([[1]])

    def test_from_block(self, ex1):
        assert [row[:3] for row in ex1.m[3:]] == [(2, 0, 0), (0, 4, 0), (0, 0, 16)]
        assert all(row[3:] == (0, 0, 0) for row in ex1.m[3:])
        assert sf.as_block_form(ex1) == BlockForm(Z3, (3, 5, 17))

    def test_from_block_degenerate_p_still_valid(self):
        s = sf.from_block(BlockForm(Z3, (1, 1, 1)))
        assert s.genus == 3


def product_formula(p):
    f = LaurentPoly.constant(1)
    for pi in p:
        f = f * (pi * t - (pi - 1)) * ((pi - 1) * t - pi)
    return f.normalized()


class TestAlexander:
    def test_block_form(self, ex1):
        d = sf.alexander_poly(ex1)
        assert d == product_formula((3, 5, 17))
        assert d.span == 6

    def test_unknot(self):
        assert sf.alexander_poly(sf.validate([[0, 1], [0, 0]])) == 1

    @pytest.mark.parametrize("a", [Z3, ea.diag(1, -1, 1), ((2, 1, 0), (1, 0, 3), (0, 3, -1))])
    @pytest.mark.parametrize("p", [(3, 5, 17), (2, 3, 7), (-2, 4, 9)])
    def test_block_forms_independent_of_a(self, a, p):
        d = sf.alexander_poly(sf.from_block(BlockForm(a, p)))
        assert d == product_formula(p)
        assert abs(d(1)) == 1
        assert d.is_palindromic()

    def test_trefoil(self):
        d = sf.alexander_poly(sf.validate([[-1, 1], [0, -1]]))
        assert d == LaurentPoly.from_coeffs([1, -1, 1])


class TestIsometry:
    def test_block_inverse(self, ex1):
        iso = sf.isometry(ex1)
        expected = [Fraction(p, p - 1) for p in (3, 5, 17)] + [Fraction(p - 1, p) for p in (3, 5, 17)]
        assert iso == ea.simplify(ea.diag(*expected))

    def test_genus_one(self):
        assert sf.isometry(sf.validate([[0, 3], [2, 0]])) == ea.simplify(
            ea.diag(Fraction(3, 2), Fraction(2, 3)))

    def test_singular(self):
        with pytest.raises(HypothesisRefused):
            sf.isometry(sf.validate([[0, 1], [0, 0]]))


class TestEnumeration:
    def test_example1_eight(self, ex1):
        hs = sf.enumerate_metabolisers(ex1)
        assert len(hs) == 8
        spans = {frozenset(h.columns) for h in hs}
        expected = {frozenset(c) for c in itertools.product(*[(e(i), e(i + 3)) for i in range(3)])}
        assert spans == expected
        assert all(sf.verify_metaboliser(ex1, h) for h in hs)

    def test_example2_eight(self, ex2):
        hs = sf.enumerate_metabolisers(ex2)
        assert len(hs) == 8
        a = (1, -1, 1)
        p = (3, 5, 17)
        eps = []
        for i in range(3):
            v = [0] * 6
            v[i] = 2 * p[i] - 1
            v[i + 3] = -a[i]
            eps.append(tuple(v))
        expected = {frozenset(c) for c in itertools.product(*[(e(i + 3), eps[i]) for i in range(3)])}
        got = {frozenset(ea.primitive_vector(c) for c in h.columns) for h in hs}
        assert got == {frozenset(ea.primitive_vector(c) for c in s) for s in expected}
        for v in eps:
            assert ex2.pairing(v, v) == 0

    def test_genus_one(self):
        s = sf.validate([[0, 3], [2, 0]])
        hs = sf.enumerate_metabolisers(s)
        assert sorted(h.columns[0] for h in hs) == [(0, 1), (1, 0)]

    def test_refusals(self):
        with pytest.raises(HypothesisRefused):
            sf.enumerate_metabolisers(sf.validate([[-1, 1], [0, -1]]))   # trefoil: complex spectrum
        with pytest.raises(HypothesisRefused):
            sf.enumerate_metabolisers(sf.from_block(BlockForm(Z3, (3, 3, 5))))  # repeated

    def test_levine_invariance(self, ex1, ex2):
        for s in (ex1, ex2, sf.from_block(BlockForm(Z3, (2, 3, 7)))):
            iso = sf.isometry(s)
            for h in sf.enumerate_metabolisers(s):
                image = ea.matmul(iso, h.basis)
                assert ea.rank(ea.from_columns(h.columns + ea.columns(image))) == h.rank

    def test_count_two_to_the_g(self):
        for a in (Z3, ea.diag(1, -1, 1), ea.diag(2, 0, -3)):
            for p in ((3, 5, 17), (2, 3, 7), (-2, 4, 9)):
                assert len(sf.enumerate_metabolisers(sf.from_block(BlockForm(a, p)))) == 8

    def test_genus_one_brute_force(self):
        # oracle: every primitive isotropic vector with |entries| <= 50 lies on an enumerated line
        checked = 0
        for a, b, c, d in itertools.product(range(-3, 4), repeat=4):
            if (b - c) ** 2 != 1 or a * d - b * c == 0:
                continue
            s = sf.validate([[a, b], [c, d]])
            try:
                hs = sf.enumerate_metabolisers(s)
            except HypothesisRefused:
                continue
            lines = [h.columns[0] for h in hs]
            for h in hs:
                assert sf.verify_metaboliser(s, h)
            for x in range(0, 51):
                for y in range(-50, 51):
                    if (x, y) <= (0, 0) or gcd(x, y) != 1:
                        continue
                    if a * x * x + (b + c) * x * y + d * y * y == 0:
                        assert any(x * l[1] - y * l[0] == 0 for l in lines), (a, b, c, d, x, y)
            checked += 1
        assert checked > 20


class TestVerify:
    def test_examples(self, ex1):
        assert sf.verify_metaboliser(ex1, meta(e(3), e(4), e(5)))
        assert sf.verify_metaboliser(ex1, meta(e(0), e(1), e(5)))
        assert not sf.verify_metaboliser(ex1, meta(e(0), e(3), e(4)))

    def test_non_primitive(self, ex1):
        assert not sf.verify_metaboliser(ex1, meta(tuple(2 * x for x in e(3)), e(4), e(5)))


class TestComplementary:
    def test_example1(self, ex1):
        hs = sf.enumerate_metabolisers(ex1)
        pairs = sf.complementary_pairs(ex1, hs)
        assert len(pairs) == 4
        opposite = {"J": "δ", "δ": "J"}
        for i, j in pairs:
            assert hs[j].label == "".join(opposite[c] for c in hs[i].label)
        assert sf.complementary_pairs(ex1, hs, unimodular=True) == pairs

    def test_example2_rational_vs_integral(self, ex2):
        hs = sf.enumerate_metabolisers(ex2)
        assert len(sf.complementary_pairs(ex2, hs)) == 4
        assert sf.complementary_pairs(ex2, hs, unimodular=True) == []

    def test_self_never_paired(self, ex1):
        h = sf.enumerate_metabolisers(ex1)[0]
        assert sf.complementary_pairs(ex1, [h, h]) == []

    def test_genus_one(self):
        s = sf.validate([[0, 3], [2, 0]])
        assert sf.complementary_pairs(s, sf.enumerate_metabolisers(s)) == [(0, 1)]


class TestDerivativeLinking:
    def test_example1_flips(self, ex1):
        for h in sf.enumerate_metabolisers(ex1):
            x = sf.derivative_linking_matrix(ex1, h)
            expected = [p if c == "J" else 1 - p for p, c in zip((3, 5, 17), h.label)]
            assert x == ea.diag(*expected)

    def test_example2_flips(self, ex2):
        for h in sf.enumerate_metabolisers(ex2):
            x = sf.derivative_linking_matrix(ex2, h)
            expected = [p if c == "J" else 1 - p for p, c in zip((3, 5, 17), h.label)]
            assert x == ea.diag(*expected)

    def test_lower_left_block(self, ex2):
        # in the basis (duals, metaboliser) the form is (A' X; X^T - I 0)
        for h in sf.enumerate_metabolisers(ex2):
            d = sf.dual_basis(ex2, h)
            x = sf.derivative_linking_matrix(ex2, h)
            ll = ea.simplify(ea.matmul(ea.matmul(ea.transpose(h.basis), ex2.m), d))
            assert ll == ea.matsub(ea.transpose(x), ea.identity(3))

    def test_match(self, ex1):
        hs = sf.enumerate_metabolisers(ex1)
        assert hs[sf.match_metaboliser(hs, pattern="ddd")].label == "δδδ"
        idx = sf.match_metaboliser(hs, basis=ea.from_columns([e(0), e(4), e(2)]))
        assert hs[idx].label == "δJδ"
        assert sf.match_metaboliser(hs, pattern="JJx") is None
