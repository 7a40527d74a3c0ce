"""Exact integer/rational linear algebra and Laurent polynomials.

Matrices are plain row-major tuples of tuples holding ``int`` or
``fractions.Fraction``.  Nothing in here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from sympy import factorint

from .errors import DimensionError, RankError

Scalar = int | Fraction
Matrix = tuple[tuple[Scalar, ...], ...]


# ---------------------------------------------------------------------------
# matrix plumbing
# ---------------------------------------------------------------------------

def as_matrix(rows: Iterable[Iterable[Scalar]]) -> Matrix:
    m = tuple(tuple(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise DimensionError("ragged matrix")
    return m


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def _require_square(m: Matrix) -> int:
    r, c = shape(m)
    if r != c:
        raise DimensionError(f"expected a square matrix, got {r}x{c}")
    return r


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple((0,) * c for _ in range(r))


def diag(*entries: Scalar) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != shape(b)[0]:
        raise DimensionError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matsub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(m: Matrix, c: Scalar) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in m)


def block(rows: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a block matrix from a grid of equally-tall/wide blocks."""
    out = []
    for brow in rows:
        height = len(brow[0])
        for i in range(height):
            out.append(tuple(x for b in brow for x in b[i]))
    return tuple(out)


def columns(m: Matrix) -> list[tuple[Scalar, ...]]:
    return list(transpose(m))


def from_columns(cols: Sequence[Sequence[Scalar]]) -> Matrix:
    return transpose(tuple(tuple(c) for c in cols))


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for row in m for x in row)


def _normalize_scalar(x: Scalar) -> Scalar:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def simplify(m: Matrix) -> Matrix:
    """Turn integral Fractions back into ints so results compare cleanly."""
    return tuple(tuple(_normalize_scalar(x) for x in row) for row in m)


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------

def det_int(m: Matrix) -> int:
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    n = _require_square(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def det_rat(m: Matrix) -> Fraction:
    n = _require_square(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for k in range(n):
        pivot = next((r for r in range(k, n) if a[r][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def det_cofactor(m: Matrix) -> Scalar:
    """Naive Laplace expansion along the first row.  Test oracle only."""
    n = _require_square(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = tuple(row[:j] + row[j + 1:] for row in m[1:])
        total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


# ---------------------------------------------------------------------------
# Gaussian elimination over Q
# ---------------------------------------------------------------------------

def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    rows, cols = shape(m)
    a = [[Fraction(x) for x in row] for row in m]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1]) if m else 0


def primitive_vector(v: Sequence[Scalar]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers; first nonzero entry positive."""
    den = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def kernel_basis(m: Matrix) -> list[tuple[int, ...]]:
    """Basis of the right kernel, each vector cleared to coprime integers."""
    rows, cols = shape(m)
    if rows == 0:
        return [tuple(int(i == j) for i in range(cols)) for j in range(cols)]
    a, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][f]
        basis.append(primitive_vector(v))
    return basis


def solve(a: Matrix, b: Matrix) -> Matrix:
    """One rational solution X of A X = B (raises RankError if inconsistent)."""
    rows, cols = shape(a)
    k = shape(b)[1]
    aug = tuple(tuple(a[i]) + tuple(b[i]) for i in range(rows))
    red, pivots = rref(aug)
    if any(p >= cols for p in pivots):
        raise RankError("linear system is inconsistent")
    x = [[Fraction(0)] * k for _ in range(cols)]
    for i, pc in enumerate(pivots):
        for j in range(k):
            x[pc][j] = red[i][cols + j]
    return simplify(tuple(tuple(r) for r in x))


def inverse(m: Matrix) -> Matrix:
    n = _require_square(m)
    if det_rat(m) == 0:
        raise RankError("matrix is singular")
    return solve(m, identity(n))


# ---------------------------------------------------------------------------
# characteristic polynomial and rational eigenpairs
# ---------------------------------------------------------------------------

def charpoly(m: Matrix) -> list[Fraction]:
    """Coefficients of det(xI - m), highest degree first (Faddeev-LeVerrier)."""
    n = _require_square(m)
    a = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        prev_c = coeffs[-1]
        nxt = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            nxt[i][i] += prev_c
        mk = nxt
        am = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(am[i][i] for i in range(n)) / k)
    return coeffs


def _horner(coeffs: Sequence[Scalar], x: Scalar) -> Scalar:
    acc: Scalar = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    divs = [1]
    for prime, exp in factorint(n).items():
        divs = [d * prime**e for d in divs for e in range(exp + 1)]
    return sorted(divs)


def _deflate(coeffs: list[int], num: int, den: int) -> list[int]:
    """Divide an integer polynomial by (den*x - num); exact by assumption."""
    r = Fraction(num, den)
    acc = Fraction(0)
    out = []
    for c in coeffs:
        acc = acc * r + c
        out.append(acc)
    if out[-1] != 0:
        raise ArithmeticError("deflation by a non-root")
    return integer_polynomial(out[:-1])


def integer_polynomial(coeffs: Sequence[Scalar]) -> list[int]:
    """Clear denominators and content; leading coefficient positive."""
    den = lcm(*(Fraction(c).denominator for c in coeffs))
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = reduce(gcd, ints, 0) or 1
    ints = [x // g for x in ints]
    if ints and ints[0] < 0:
        ints = [-x for x in ints]
    return ints


def rational_roots(coeffs: Sequence[Scalar]) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicity, ascending.

    Candidates come from the rational root theorem; the cheap filters
    (b - a) | f(1) and (b + a) | f(-1) prune most of them before an exact
    evaluation.
    """
    poly = integer_polynomial(coeffs)
    found: dict[Fraction, int] = {}
    while poly and poly[-1] == 0 and len(poly) > 1:
        poly = poly[:-1]
        found[Fraction(0)] = found.get(Fraction(0), 0) + 1
    while len(poly) > 1:
        lead, const = poly[0], poly[-1]
        f1 = sum(poly)
        fm1 = _horner(poly, -1)
        hit = None
        for b in _divisors(lead):
            for a in _divisors(const):
                if gcd(a, b) != 1:
                    continue
                for num in (a, -a):
                    # f = (b x - num) q with q integral, so (b - num) | f(1), (b + num) | f(-1)
                    if (f1 != 0) if num == b else f1 % (b - num):
                        continue
                    if (fm1 != 0) if num == -b else fm1 % (b + num):
                        continue
                    if _horner(poly, Fraction(num, b)) == 0:
                        hit = (num, b)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            break
        r = Fraction(*hit)
        found[r] = found.get(r, 0) + 1
        poly = _deflate(poly, *hit)
    return sorted(found.items())


class EigenResult:
    """Rational eigenpairs of a matrix plus a completeness flag.

    ``rational_spectrum`` is False when the rational roots of the
    characteristic polynomial do not account for its full degree.
    """

    def __init__(self, pairs, multiplicities, dimension):
        self.pairs: list[tuple[Fraction, tuple[int, ...]]] = pairs
        self.multiplicities: dict[Fraction, int] = multiplicities
        self.dimension = dimension

    @property
    def eigenvalues(self) -> list[Fraction]:
        return sorted(self.multiplicities)

    @property
    def rational_spectrum(self) -> bool:
        return sum(self.multiplicities.values()) == self.dimension

    @property
    def simple(self) -> bool:
        return all(v == 1 for v in self.multiplicities.values())

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __repr__(self):
        return f"EigenResult(pairs={self.pairs!r}, rational_spectrum={self.rational_spectrum})"


def rational_eigenpairs(m: Matrix) -> EigenResult:
    n = _require_square(m)
    roots = rational_roots(charpoly(m))
    pairs = []
    for lam, _mult in roots:
        shifted = matsub(m, scale(identity(n), lam))
        for v in kernel_basis(shifted):
            pairs.append((lam, v))
    return EigenResult(pairs, dict(roots), n)


# ---------------------------------------------------------------------------
# integer lattices
# ---------------------------------------------------------------------------

def _row_echelon_with_transform(m: Matrix) -> tuple[list[list[int]], list[list[int]]]:
    """Integer row reduction: returns (H, U) with U unimodular and U m = H upper echelon."""
    rows, cols = shape(m)
    h = [list(map(int, r)) for r in m]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    r = 0
    for c in range(cols):
        if r == rows:
            break
        # gcd-combine rows r.. into a single pivot at (r, c)
        while True:
            nz = [i for i in range(r, rows) if h[i][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(h[i][c]))
            h[r], h[best] = h[best], h[r]
            u[r], u[best] = u[best], u[r]
            done = True
            for i in range(r + 1, rows):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c]:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def hermite_normal_form(b: Matrix) -> Matrix:
    """Column-style HNF of the lattice spanned by the columns of ``b``.

    Lower-triangular (in echelon sense), positive pivots, entries to the
    left of a pivot reduced into [0, pivot).  Zero columns are dropped, so
    two bases span the same lattice iff their HNFs are equal.
    """
    h, _ = _row_echelon_with_transform(transpose(b))
    nonzero = [row for row in h if any(row)]
    return from_columns(nonzero) if nonzero else tuple(() for _ in range(len(b)))


def integer_kernel(m: Matrix) -> list[tuple[int, ...]]:
    """A Z-basis of {x in Z^n : m x = 0}; this lattice is always saturated."""
    rows, cols = shape(m)
    if rows == 0:
        return [tuple(int(i == j) for i in range(cols)) for j in range(cols)]
    # column ops on m == row ops on m^T
    h, u = _row_echelon_with_transform(transpose(m))
    return [tuple(u[i]) for i in range(cols) if not any(h[i])]


def smith_diagonal(m: Matrix) -> list[int]:
    """Elementary divisors (nonzero ones) of an integer matrix."""
    a = [list(map(int, r)) for r in m]
    rows, cols = shape(m)
    out = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            changed = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    changed = True
                    break
            if changed:
                continue
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    changed = True
                    break
            if changed:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        out.append(abs(a[t][t]))
        t += 1
    return out


def saturate_lattice(b: Matrix) -> Matrix:
    """Basis (in HNF) of the saturation span_Q(columns of b) ∩ Z^n."""
    n, k = shape(b)
    if rank(b) != k:
        raise RankError("columns are linearly dependent over Q")
    perp = kernel_basis(transpose(b))
    sat = integer_kernel(as_matrix(perp)) if perp else [
        tuple(int(i == j) for i in range(n)) for j in range(n)]
    out = hermite_normal_form(from_columns(sat))
    if shape(out)[1] != k:
        raise RankError("saturation has unexpected rank")
    return out


def is_primitive(b: Matrix) -> bool:
    """True iff the column lattice is a direct summand of Z^n."""
    k = shape(b)[1]
    return rank(b) == k and all(d == 1 for d in smith_diagonal(b))


def same_lattice(a: Matrix, b: Matrix) -> bool:
    return hermite_normal_form(a) == hermite_normal_form(b)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Immutable element of Z[t, t^-1] (rational coefficients also allowed)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, Scalar] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if c != 0:
                clean[int(e)] = _normalize_scalar(c)
        self._terms = tuple(sorted(clean.items()))

    @classmethod
    def constant(cls, c: Scalar) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent: int, c: Scalar = 1) -> "LaurentPoly":
        return cls({exponent: c})

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Scalar], low: int = 0) -> "LaurentPoly":
        """Coefficients in ascending order starting at exponent ``low``."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @property
    def terms(self) -> dict[int, Scalar]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        return self._terms[0][0] if self._terms else 0

    @property
    def max_exp(self) -> int:
        return self._terms[-1][0] if self._terms else 0

    @property
    def span(self) -> int:
        """max exponent minus min exponent (the degree of a normalized poly)."""
        return self.max_exp - self.min_exp

    def coeff(self, e: int) -> Scalar:
        return dict(self._terms).get(e, 0)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms:
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Scalar] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials are invertible in Z[t, t^-1]")
            (e, c), = self._terms
            if abs(c) != 1:
                raise ValueError("only unit monomials are invertible in Z[t, t^-1]")
            return LaurentPoly({e * k: c})
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __call__(self, x: Scalar) -> Scalar:
        """Evaluate exactly at a nonzero rational (or any value if no negative exponents)."""
        x = Fraction(x)
        total = Fraction(0)
        for e, c in self._terms:
            total += c * x**e
        return _normalize_scalar(total)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self._terms})

    def reflect(self) -> "LaurentPoly":
        """f(t^-1)."""
        return LaurentPoly({-e: c for e, c in self._terms})

    def normalized(self) -> "LaurentPoly":
        """Shift to lowest exponent 0 and make the leading coefficient positive."""
        if not self._terms:
            return self
        out = self.shift(-self.min_exp)
        if out._terms[-1][1] < 0:
            out = -out
        return out

    def is_palindromic(self) -> bool:
        n = self.normalized()
        return n == n.reflect().normalized()

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms):
            if e == 0:
                mono = f"{c}"
            else:
                pw = "t" if e == 1 else f"t^{e}"
                mono = pw if c == 1 else ("-" + pw if c == -1 else f"{c}*{pw}")
            parts.append(mono)
        return " + ".join(parts).replace("+ -", "- ")


def det_laurent(m: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Determinant of a matrix over Z[t, t^-1] by sparse Laplace expansion.

    Each step expands along whichever row or column has the most zero
    entries; the result does not depend on that choice.
    """
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionError("expected a square matrix")
    rows = [[x if isinstance(x, LaurentPoly) else LaurentPoly.constant(x) for x in r] for r in m]
    return _laplace(rows)


def _laplace(m: list[list[LaurentPoly]]) -> LaurentPoly:
    n = len(m)
    if n == 0:
        return LaurentPoly.constant(1)
    if n == 1:
        return m[0][0]
    row_zeros = [sum(x.is_zero() for x in r) for r in m]
    col_zeros = [sum(m[i][j].is_zero() for i in range(n)) for j in range(n)]
    best_r = max(range(n), key=row_zeros.__getitem__)
    best_c = max(range(n), key=col_zeros.__getitem__)
    total = LaurentPoly()
    if row_zeros[best_r] >= col_zeros[best_c]:
        i = best_r
        for j in range(n):
            if m[i][j].is_zero():
                continue
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(m) if k != i]
            term = m[i][j] * _laplace(minor)
            total = total + term if (i + j) % 2 == 0 else total - term
    else:
        j = best_c
        for i in range(n):
            if m[i][j].is_zero():
                continue
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(m) if k != i]
            term = m[i][j] * _laplace(minor)
            total = total + term if (i + j) % 2 == 0 else total - term
    return total
