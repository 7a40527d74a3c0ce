"""Seifert matrices, the (A X; X-I 0) block form, and metabolisers.

Convention: ``M[a][b] = lk(a, b^+)``.  The intersection form is then
``M - M^T`` and the Alexander polynomial is ``det(t M - M^T)``.

Metaboliser enumeration follows Levine's invariance argument: when the
isometry ``M^-1 M^T`` has 2g distinct rational eigenvalues (none equal to
1) every metaboliser is the saturation of a span of g eigenvectors with
pairwise symmetric Seifert pairing, and nothing else is.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact_algebra as ea
from .errors import DimensionError, HypothesisRefused, NotSeifertMatrix, RankError
from .exact_algebra import LaurentPoly, Matrix

log = logging.getLogger(__name__)

#: selection characters for the two eigenvectors of a dual pair
J_SLOT = "J"
DUAL_SLOT_CHARS = {"δ", "ε", "d", "e", "D", "E"}


@dataclass(frozen=True)
class SeifertMatrix:
    m: Matrix

    @property
    def genus(self) -> int:
        return len(self.m) // 2

    @property
    def dim(self) -> int:
        return len(self.m)

    def intersection_form(self) -> Matrix:
        return ea.matsub(self.m, ea.transpose(self.m))

    def pairing(self, u, v) -> int:
        """Seifert pairing u^T M v."""
        return sum(u[i] * self.m[i][j] * v[j] for i in range(self.dim) for j in range(self.dim))


@dataclass(frozen=True)
class BlockForm:
    """Seifert form (A X; X-I 0) in the basis {δ1, δ2, δ3, J1, J2, J3}, X = diag(p)."""

    a: Matrix
    p: tuple[int, ...]

    def __post_init__(self):
        g = len(self.p)
        if ea.shape(self.a) != (g, g):
            raise DimensionError(f"A block must be {g}x{g}")
        object.__setattr__(self, "a", ea.as_matrix(tuple(map(int, r)) for r in self.a))
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))

    @property
    def genus(self) -> int:
        return len(self.p)

    @property
    def x(self) -> Matrix:
        return ea.diag(*self.p)


@dataclass(frozen=True)
class Metaboliser:
    basis: Matrix
    label: str | None = None
    eigenvalues: tuple[Fraction, ...] = field(default=(), compare=False)

    @property
    def columns(self) -> list[tuple[int, ...]]:
        return ea.columns(self.basis)

    @property
    def rank(self) -> int:
        return ea.shape(self.basis)[1]


def validate(m) -> SeifertMatrix:
    mat = ea.as_matrix(tuple(int(x) for x in row) for row in m)
    r, c = ea.shape(mat)
    if r != c:
        raise DimensionError(f"Seifert matrix must be square, got {r}x{c}")
    if r == 0 or r % 2:
        raise NotSeifertMatrix(f"not a knot Seifert matrix: dimension {r} is not positive and even")
    d = ea.det_int(ea.matsub(mat, ea.transpose(mat)))
    if d != 1:
        raise NotSeifertMatrix(f"not a knot Seifert matrix: det(M - M^T) = {d}, expected 1")
    return SeifertMatrix(mat)


def from_block(bf: BlockForm) -> SeifertMatrix:
    g = bf.genus
    x = bf.x
    x_minus_i = ea.matsub(x, ea.identity(g))
    m = ea.block([[bf.a, x], [x_minus_i, ea.zeros(g, g)]])
    return validate(m)


def as_block_form(s: SeifertMatrix) -> BlockForm | None:
    """Recognise (A X; X-I 0) with X diagonal; None if ``s`` is not of that shape."""
    g = s.genus
    m = s.m
    a = tuple(tuple(m[i][:g]) for i in range(g))
    x = tuple(tuple(m[i][g:]) for i in range(g))
    lower_left = tuple(tuple(m[g + i][:g]) for i in range(g))
    lower_right = tuple(tuple(m[g + i][g:]) for i in range(g))
    if not ea.is_zero(lower_right):
        return None
    if any(x[i][j] for i in range(g) for j in range(g) if i != j):
        return None
    p = tuple(x[i][i] for i in range(g))
    if lower_left != ea.matsub(ea.diag(*p), ea.identity(g)):
        return None
    return BlockForm(a, p)


def alexander_poly(s: SeifertMatrix) -> LaurentPoly:
    """det(t M - M^T), shifted to lowest exponent 0 with positive leading coefficient."""
    t = LaurentPoly.t()
    n = s.dim
    entries = [[t * s.m[i][j] - s.m[j][i] for j in range(n)] for i in range(n)]
    return ea.det_laurent(entries).normalized()


def isometry(s: SeifertMatrix) -> Matrix:
    if ea.det_int(s.m) == 0:
        raise HypothesisRefused(
            "Seifert matrix not rationally invertible; metaboliser enumeration unavailable")
    return ea.matmul(ea.inverse(s.m), ea.transpose(s.m))


def _slot_labels(s: SeifertMatrix, vectors: list[tuple[Fraction, tuple[int, ...]]]):
    """Per-eigenvector (slot index, character) when ``s`` is a block form.

    Slot i is the dual pair {(p_i - 1)/p_i, p_i/(p_i - 1)}.  The first
    eigenvalue always has eigenvector J_i ('J'); the second is δ_i when
    A's row/column i vanish and a mixed curve otherwise ('ε').
    """
    bf = as_block_form(s)
    if bf is None:
        return None
    g = bf.genus
    out = []
    for lam, v in vectors:
        slot = None
        for i, p in enumerate(bf.p):
            if p * (p - 1) == 0:
                return None
            if lam == Fraction(p - 1, p):
                slot, char = i, J_SLOT
            elif lam == Fraction(p, p - 1):
                support = [k for k, x in enumerate(v) if x]
                slot, char = i, ("δ" if support == [i] else "ε")
            if slot is not None:
                break
        if slot is None:
            return None
        out.append((slot, char))
    if sorted(sl for sl, _ in out) != sorted(list(range(g)) * 2):
        return None
    return out


def enumerate_metabolisers(s: SeifertMatrix) -> list[Metaboliser]:
    """All metabolisers, under the distinct-rational-eigenvalue hypotheses.

    Raises ``HypothesisRefused`` outside them rather than guessing.
    """
    g = s.genus
    if g != 3:
        log.warning("metaboliser enumeration at genus %d extrapolates the genus-3 argument", g)
    iso = isometry(s)
    eig = ea.rational_eigenpairs(iso)
    if not eig.rational_spectrum:
        raise HypothesisRefused(
            "outside the distinct-rational-eigenvalue hypotheses: isometry has non-rational spectrum")
    if not eig.simple:
        raise HypothesisRefused("outside the distinct-rational-eigenvalue hypotheses: repeated eigenvalue")
    if 1 in eig.multiplicities:
        raise HypothesisRefused("outside the distinct-rational-eigenvalue hypotheses: eigenvalue 1")
    pairs = list(eig.pairs)
    for lam, v in pairs:
        # forced by lam != 1: v^T M^T v = lam v^T M v
        if s.pairing(v, v) != 0:
            raise AssertionError(f"eigenvector for {lam} has nonzero self-linking")

    labels = _slot_labels(s, pairs)
    out = []
    for combo in itertools.combinations(range(len(pairs)), g):
        vs = [pairs[i][1] for i in combo]
        if any(s.pairing(u, w) != s.pairing(w, u) for u, w in itertools.combinations(vs, 2)):
            continue
        if labels is not None:
            chosen = sorted((labels[i][0], labels[i][1], pairs[i][1]) for i in combo)
            # dual eigenvectors of one slot pair nontrivially under ω
            assert [c[0] for c in chosen] == list(range(g)), chosen
            label = "".join(c[1] for c in chosen)
            vs = [c[2] for c in chosen]
            lams = tuple(pairs[i][0] for i in sorted(combo, key=lambda i: labels[i][0]))
        else:
            label = ",".join(str(pairs[i][0]) for i in combo)
            lams = tuple(pairs[i][0] for i in combo)
        basis = ea.from_columns(vs)
        if not ea.is_primitive(basis):
            basis = ea.saturate_lattice(basis)
        h = Metaboliser(basis, label, lams)
        if not verify_metaboliser(s, h):
            raise AssertionError(f"enumerated subspace {label} is not a metaboliser")
        out.append(h)
    out.sort(key=lambda h: h.label)
    return out


def verify_metaboliser(s: SeifertMatrix, h: Metaboliser) -> bool:
    n, k = ea.shape(h.basis)
    if n != s.dim or k != s.genus:
        raise DimensionError(f"metaboliser basis must be {s.dim}x{s.genus}, got {n}x{k}")
    gram = ea.matmul(ea.matmul(ea.transpose(h.basis), s.m), h.basis)
    return ea.is_zero(gram) and ea.is_primitive(h.basis)


def complementary_pairs(s: SeifertMatrix, hs: list[Metaboliser], *,
                        unimodular: bool = False) -> list[tuple[int, int]]:
    """Index pairs (i < j) of metabolisers whose spans are complementary.

    By default complementarity is rational (combined determinant nonzero),
    which is what a direct sum of rational lagrangians requires.  With
    ``unimodular=True`` the combined columns must form a Z-basis.
    """
    out = []
    for i, j in itertools.combinations(range(len(hs)), 2):
        combined = ea.from_columns(hs[i].columns + hs[j].columns)
        d = ea.det_int(combined)
        if (abs(d) == 1) if unimodular else (d != 0):
            out.append((i, j))
    return out


def dual_basis(s: SeifertMatrix, h: Metaboliser) -> Matrix:
    """Rational vectors d_i with ω(d_i, b_j) = δ_ij for the columns b_j of h.

    Unique modulo span_Q(h), which is all that matters for pairings
    against h (h is isotropic).
    """
    omega = s.intersection_form()
    # rows of (ω b)^T, i.e. c[j] . d = d^T ω b_j
    c = ea.transpose(ea.matmul(omega, h.basis))
    try:
        return ea.solve(c, ea.identity(h.rank))
    except RankError as exc:
        raise RankError("metaboliser has no intersection duals") from exc


def derivative_linking_matrix(s: SeifertMatrix, h: Metaboliser) -> Matrix:
    """X = (lk(δ_i, J_j^+)) for a derivative J along h's basis and its duals δ."""
    d = dual_basis(s, h)
    x = ea.matmul(ea.matmul(ea.transpose(d), s.m), h.basis)
    return ea.simplify(x)


def match_metaboliser(hs: list[Metaboliser], *, pattern: str | None = None,
                      basis: Matrix | None = None) -> int | None:
    """Index of the metaboliser named by a selection pattern or spanned by basis columns."""
    if pattern is not None:
        key = pattern_key(pattern)
        for i, h in enumerate(hs):
            if h.label is not None and pattern_key(h.label) == key:
                return i
        return None
    if basis is not None:
        for i, h in enumerate(hs):
            try:
                if ea.same_lattice(ea.saturate_lattice(basis), h.basis):
                    return i
            except RankError:
                return None
        return None
    raise ValueError("need a pattern or a basis")


def pattern_key(pattern: str) -> str:
    if "," in pattern:
        return ",".join(str(Fraction(x.strip())) for x in pattern.split(","))
    return "".join("J" if ch in "Jj" else ("*" if ch in DUAL_SLOT_CHARS else ch) for ch in pattern)
