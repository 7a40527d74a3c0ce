"""Milnor triple linking numbers from longitude words.

A longitude is a word in the meridian generators x_1..x_m.  Its Magnus
expansion (x_i -> 1 + X_i, x_i^-1 -> 1 - X_i + X_i^2) truncated at degree
two carries the pairwise linking numbers in the linear part and μ̄(ijk)
as the coefficient of X_i X_j in the k-th longitude.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InputError

Letter = tuple[int, int]


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((int(g), int(e)) for g, e in self.letters)
        for g, e in letters:
            if g < 1:
                raise InputError(f"generator index {g} must be >= 1")
            if e not in (1, -1):
                raise InputError(f"exponent {e} must be +1 or -1")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def gen(cls, i: int) -> "FreeWord":
        return cls(((i, 1),))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def __invert__(self) -> "FreeWord":
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "FreeWord":
        base = self if k >= 0 else ~self
        return FreeWord(base.letters * abs(k))

    def reduced(self) -> "FreeWord":
        out: list[Letter] = []
        for g, e in self.letters:
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        return FreeWord(tuple(out))

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=0)

    def __len__(self):
        return len(self.letters)


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * ~u * ~v


@dataclass(frozen=True)
class LongitudeSystem:
    components: int
    longitudes: tuple[FreeWord, ...]

    def __post_init__(self):
        longs = tuple(w if isinstance(w, FreeWord) else FreeWord(tuple(w)) for w in self.longitudes)
        if len(longs) != self.components:
            raise InputError(f"expected {self.components} longitudes, got {len(longs)}")
        for w in longs:
            if w.max_generator() > self.components:
                raise InputError(f"generator index {w.max_generator()} exceeds {self.components}")
        object.__setattr__(self, "longitudes", longs)


def borromean() -> LongitudeSystem:
    """Longitudes ([x2, x3], [x3, x1], [x1, x2]) with μ̄(123) = +1."""
    x1, x2, x3 = (FreeWord.gen(i) for i in (1, 2, 3))
    return LongitudeSystem(3, (commutator(x2, x3), commutator(x3, x1), commutator(x1, x2)))


def unlink(m: int = 3) -> LongitudeSystem:
    return LongitudeSystem(m, tuple(FreeWord() for _ in range(m)))


@dataclass(frozen=True)
class TruncatedSeries:
    """c0 + Σ c_i X_i + Σ c_ij X_i X_j in non-commuting X_1..X_m, mod degree 3."""

    m: int
    constant: int = 1
    linear: tuple[int, ...] = ()
    quadratic: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if not self.linear:
            object.__setattr__(self, "linear", (0,) * self.m)
        if not self.quadratic:
            object.__setattr__(self, "quadratic", tuple((0,) * self.m for _ in range(self.m)))

    @classmethod
    def one(cls, m: int) -> "TruncatedSeries":
        return cls(m)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.m != other.m:
            raise ValueError("series over different alphabets")
        a0, b0 = self.constant, other.constant
        lin = tuple(a0 * b + b0 * a for a, b in zip(self.linear, other.linear))
        quad = tuple(
            tuple(a0 * other.quadratic[i][j] + b0 * self.quadratic[i][j]
                  + self.linear[i] * other.linear[j] for j in range(self.m))
            for i in range(self.m))
        return TruncatedSeries(self.m, a0 * b0, lin, quad)

    def coeff(self, *word: int) -> int:
        """Coefficient of X_{word[0]} X_{word[1]} ... (1-based, length <= 2)."""
        if not word:
            return self.constant
        if len(word) == 1:
            return self.linear[word[0] - 1]
        if len(word) == 2:
            return self.quadratic[word[0] - 1][word[1] - 1]
        raise ValueError("series truncated at degree 2")


def _letter_series(g: int, e: int, m: int) -> TruncatedSeries:
    lin = [0] * m
    quad = [[0] * m for _ in range(m)]
    lin[g - 1] = e
    if e == -1:
        quad[g - 1][g - 1] = 1
    return TruncatedSeries(m, 1, tuple(lin), tuple(map(tuple, quad)))


def magnus(w: FreeWord, m: int) -> TruncatedSeries:
    if w.max_generator() > m:
        raise InputError(f"generator index {w.max_generator()} out of range 1..{m}")
    out = TruncatedSeries.one(m)
    for g, e in w.letters:
        out = out * _letter_series(g, e, m)
    return out


def linking_numbers(ls: LongitudeSystem) -> tuple[tuple[int, ...], ...]:
    """Entry (i, k) is the exponent sum of x_i in longitude k; diagonal zeroed."""
    m = ls.components
    series = [magnus(w, m) for w in ls.longitudes]
    return tuple(tuple(0 if i == k else series[k].linear[i] for k in range(m)) for i in range(m))


def mu_triple(ls: LongitudeSystem, i: int, j: int, k: int) -> int:
    if len({i, j, k}) != 3 or not all(1 <= x <= ls.components for x in (i, j, k)):
        raise InputError(f"need three distinct indices in 1..{ls.components}")
    lk = linking_numbers(ls)
    for a, b in itertools.permutations((i, j, k), 2):
        if lk[a - 1][b - 1]:
            raise InputError(
                f"μ̄ not integer-valued for this input: lk({a},{b}) = {lk[a - 1][b - 1]}")
    return magnus(ls.longitudes[k - 1], ls.components).coeff(i, j)


@dataclass
class ScreenReport:
    passes: bool
    stage: str                                  # "linking", "triple" or "ok"
    witness: tuple[int, ...] | None = None
    value: int | None = None
    linking_matrix: tuple[tuple[int, ...], ...] = field(default=())


def zero_solvable_screen(ls: LongitudeSystem) -> ScreenReport:
    """Vanishing of all linking and triple linking numbers (necessary for (0)-solvable)."""
    lk = linking_numbers(ls)
    m = ls.components
    for a, b in itertools.combinations(range(1, m + 1), 2):
        v = lk[a - 1][b - 1] or lk[b - 1][a - 1]
        if v:
            return ScreenReport(False, "linking", (a, b), v, lk)
    for a, b, c in itertools.combinations(range(1, m + 1), 3):
        v = mu_triple(ls, a, b, c)
        if v:
            return ScreenReport(False, "triple", (a, b, c), v, lk)
    return ScreenReport(True, "ok", None, None, lk)


def word_from_pairs(pairs: Sequence[Sequence[int]]) -> FreeWord:
    return FreeWord(tuple((int(g), int(e)) for g, e in pairs))
