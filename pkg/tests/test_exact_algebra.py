from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from ribbonobs import exact_algebra as ea
from ribbonobs.errors import DimensionError, RankError
from ribbonobs.exact_algebra import LaurentPoly

t = LaurentPoly.t()


def square(n, lo=-5, hi=5):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                    min_size=n, max_size=n).map(ea.as_matrix)


class TestDeterminants:
    def test_diagonal(self):
        assert ea.det_int(ea.diag(3, 5, 17)) == 255
        assert ea.det_int(ea.diag(2, 4, 16)) == 128

    def test_empty_is_one(self):
        assert ea.det_int(()) == 1

    def test_non_square(self):
        with pytest.raises(DimensionError):
            ea.det_int(((1, 2),))

    def test_needs_row_swap(self):
        assert ea.det_int(((0, 1), (1, 0))) == -1
        assert ea.det_int(((0, 0, 1), (0, 1, 0), (1, 0, 0))) == -1

    @settings(max_examples=150, deadline=None)
    @given(st.integers(1, 5).flatmap(square))
    def test_bareiss_matches_cofactor(self, m):
        assert ea.det_int(m) == ea.det_cofactor(m)
        assert ea.det_rat(m) == ea.det_cofactor(m)


class TestLaurent:
    def test_examples(self):
        assert ea.det_laurent([[t]]) == t
        assert ea.det_laurent([[t, 1], [1, t]]) == t * t - 1
        d = ea.det_laurent([[3 * t - 2, 0], [0, 2 * t - 3]])
        assert d == LaurentPoly.from_coeffs([6, -13, 6])

    def test_arithmetic(self):
        f = t ** -1 + 2 + t
        assert f * t == LaurentPoly.from_coeffs([1, 2, 1])
        assert (t ** -1) * t == 1
        assert f - f == LaurentPoly()
        assert f(Fraction(1, 2)) == Fraction(9, 2)
        assert LaurentPoly({0: 0, 3: 0}).is_zero()

    def test_normalized(self):
        f = -(t ** -2) * (2 * t - 3)
        assert f.normalized() == LaurentPoly.from_coeffs([-3, 2])
        assert f.normalized().min_exp == 0

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n, -3, 3), square(n, -3, 3))))
    def test_det_matches_pointwise_evaluation(self, pair):
        # oracle: evaluate entries at integers and take the integer determinant
        a, b = pair
        n = len(a)
        m = [[a[i][j] * t - b[i][j] for j in range(n)] for i in range(n)]
        d = ea.det_laurent(m)
        for x in (-2, -1, 0, 1, 2, 3):
            ev = tuple(tuple(a[i][j] * x - b[i][j] for j in range(n)) for i in range(n))
            assert d(x) == ea.det_int(ev)

    def test_block_triangular_product(self):
        p, q = 2 * t - 1, t + 3
        top = [[p, t, 0], [1, q, 0], [t, 5, t - 1]]
        assert ea.det_laurent(top) == ea.det_laurent([[p, t], [1, q]]) * (t - 1)


class TestEigen:
    def test_diagonal(self):
        r = ea.rational_eigenpairs(ea.diag(Fraction(3, 2), Fraction(2, 3)))
        assert [lam for lam, _ in r] == [Fraction(2, 3), Fraction(3, 2)]
        assert dict(r.pairs) == {Fraction(3, 2): (1, 0), Fraction(2, 3): (0, 1)}
        assert r.rational_spectrum

    def test_rotation_has_no_rational_spectrum(self):
        r = ea.rational_eigenpairs(((0, -1), (1, 0)))
        assert len(r) == 0
        assert not r.rational_spectrum

    def test_block_isometry_spectrum(self):
        x = ea.diag(3, 5, 17)
        m = ea.block([[ea.zeros(3, 3), x], [ea.matsub(x, ea.identity(3)), ea.zeros(3, 3)]])
        iso = ea.matmul(ea.inverse(m), ea.transpose(m))
        r = ea.rational_eigenpairs(iso)
        expected = {Fraction(p, p - 1) for p in (3, 5, 17)} | {Fraction(p - 1, p) for p in (3, 5, 17)}
        assert set(r.eigenvalues) == expected
        assert r.simple and r.rational_spectrum
        for lam, v in r:
            assert ea.matmul(iso, ea.from_columns([v])) == ea.scale(ea.from_columns([v]), lam)

    def test_rational_roots_multiplicity(self):
        # (2x - 1)^2 (x + 3) x
        coeffs = [4, 8, -11, 3, 0]
        assert ea.rational_roots(coeffs) == [(Fraction(-3), 1), (Fraction(0), 1), (Fraction(1, 2), 2)]

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 4).flatmap(square))
    def test_pairs_are_eigenpairs(self, m):
        r = ea.rational_eigenpairs(m)
        for lam, v in r:
            col = ea.from_columns([v])
            assert ea.matmul(m, col) == ea.scale(col, lam)


class TestKernelAndLattices:
    def test_kernel_examples(self):
        assert ea.kernel_basis(ea.identity(3)) == []
        assert len(ea.kernel_basis(ea.zeros(2, 2))) == 2
        assert ea.kernel_basis(((1, 1),)) == [(1, -1)]

    def test_saturation_examples(self):
        assert ea.saturate_lattice(((2, 0), (0, 2))) == ea.identity(2)
        assert ea.saturate_lattice(((2,), (4,))) == ((1,), (2,))

    def test_dependent_columns(self):
        with pytest.raises(RankError):
            ea.saturate_lattice(((1, 2), (2, 4)))

    def test_hnf_canonical(self):
        a = ((1, 0), (0, 1), (3, 5))
        b = ((1, 1), (1, 2), (8, 13))
        assert ea.same_lattice(a, b)
        assert not ea.same_lattice(a, ((2, 0), (0, 1), (6, 5)))

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 3).flatmap(
        lambda k: st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4),
                           min_size=k, max_size=k)))
    def test_saturation_properties(self, cols):
        b = ea.from_columns(cols)
        if ea.rank(b) != len(cols):
            return
        sat = ea.saturate_lattice(b)
        assert ea.smith_diagonal(sat) == [1] * len(cols)
        assert ea.saturate_lattice(sat) == sat
        # every original column is an integer combination of the saturated basis
        for c in cols:
            coeffs = ea.solve(sat, ea.from_columns([c]))
            assert all(isinstance(x, int) for row in coeffs for x in row)

    def test_saturation_brute_force(self):
        # oracle: all integer points with small entries in the Q-span
        b = ea.from_columns([(2, 4, 0), (0, 3, 6)])
        sat = ea.saturate_lattice(b)
        perp = ea.kernel_basis(ea.transpose(b))
        for v in product(range(-6, 7), repeat=3):
            in_span = all(sum(x * y for x, y in zip(v, w)) == 0 for w in perp)
            if in_span:
                coeffs = ea.solve(sat, ea.from_columns([v]))
                assert all(isinstance(x, int) for row in coeffs for x in row)

    def test_integer_kernel_is_saturated(self):
        k = ea.integer_kernel(((2, 4, 6),))
        assert ea.is_primitive(ea.from_columns(k))
        assert len(k) == 2
