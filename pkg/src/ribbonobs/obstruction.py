"""Arithmetic of the homology-ribbon obstruction for X = diag(p1, p2, p3).

n = det X - det(X - I) generates the guaranteed part of the set of
possible triple-linking differences, n/m bounds it from above, and ψ
vanishes for a metaboliser iff a derivative's μ̄(123) is divisible by n/m.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod

from sympy import primefactors

from .errors import BoundExceeded, DegenerateParameter, InvariantViolation

Triple = tuple[int, int, int]


def _triple(p) -> Triple:
    p = tuple(int(x) for x in p)
    if len(p) != 3:
        raise ValueError(f"expected three parameters, got {len(p)}")
    return p


def _check_admissible(p: Triple) -> None:
    for pi in p:
        if pi * (pi - 1) == 0:
            raise DegenerateParameter(f"degenerate parameter p = {pi}: need p(p-1) != 0")


def n_value(p) -> int:
    p = _triple(p)
    return prod(p) - prod(pi - 1 for pi in p)


def stabilized_gcd(n: int, d: int) -> int:
    """The eventual value of gcd(n, d**i) as i grows."""
    if n == 0:
        raise DegenerateParameter("stabilized gcd undefined for n = 0")
    if d == 0:
        warnings.warn("stabilized_gcd queried with d = 0; returning |n|", stacklevel=2)
        return abs(n)
    g = gcd(n, d)
    power = d
    for _ in range(abs(n).bit_length() + 1):
        power *= d
        nxt = gcd(n, power)
        if nxt == g:
            return g
        g = nxt
    raise InvariantViolation(f"gcd({n}, {d}^i) did not stabilise")


def m_value(n: int, p) -> int:
    p = _triple(p)
    _check_admissible(p)
    if n == 0:
        raise DegenerateParameter("m undefined for n = 0")
    m = lcm(*(stabilized_gcd(n, d) for pi in p for d in (pi, pi - 1)))
    if n % m:
        raise InvariantViolation(f"m = {m} does not divide n = {n}")
    return m


def d_supported_part(n: int, p) -> int:
    """∏ q^v_q(n) over primes q dividing D = ∏ p_i (p_i - 1)."""
    out = 1
    primes = set()
    for pi in _triple(p):
        primes.update(primefactors(abs(pi)))
        primes.update(primefactors(abs(pi - 1)))
    for q in primes:
        while n % (out * q) == 0:
            out *= q
    return out


@dataclass(frozen=True)
class ObstructionData:
    p: Triple
    n: int
    g_values: tuple[int, ...]   # g(n,p1), g(n,p2), g(n,p3), g(n,p1-1), g(n,p2-1), g(n,p3-1)
    m: int

    @property
    def modulus(self) -> int:
        return abs(self.n // self.m)


def obstruction_data(p) -> ObstructionData:
    p = _triple(p)
    _check_admissible(p)
    n = n_value(p)
    if n == 0:
        raise DegenerateParameter("n is zero; the derivative set is {0} and the ψ criterion is inapplicable")
    gs = tuple(stabilized_gcd(n, pi) for pi in p) + tuple(stabilized_gcd(n, pi - 1) for pi in p)
    return ObstructionData(p, n, gs, m_value(n, p))


@dataclass(frozen=True)
class DerivativeSetBounds:
    """nZ ⊆ S ⊆ (n/m)Z, generators reported as absolute values."""

    lower: int
    upper: int
    exact: bool
    applicable: bool = True

    @property
    def m(self) -> int:
        return self.lower // self.upper if self.upper else 0


def derivative_set_bounds(p) -> DerivativeSetBounds:
    p = _triple(p)
    _check_admissible(p)
    n = n_value(p)
    if n == 0:
        return DerivativeSetBounds(0, 0, exact=False, applicable=False)
    m = m_value(n, p)
    exact = all(gcd(pi, n) == 1 and gcd(pi - 1, n) == 1 for pi in p)
    if exact != (m == 1):
        raise InvariantViolation("exactness condition disagrees with m == 1")
    return DerivativeSetBounds(abs(n), abs(n) // m, exact)


@dataclass(frozen=True)
class PsiStatus:
    mu123: int
    modulus: int
    vanishes: bool
    p: Triple | None = None
    metaboliser: str | None = None


def psi_vanishes(p, mu123: int, metaboliser: str | None = None) -> PsiStatus:
    data = obstruction_data(p)
    mod = data.modulus
    vanishes = mu123 % mod == 0
    if vanishes != ((-mu123) % mod == 0):
        raise InvariantViolation("residue test not orientation independent")
    return PsiStatus(int(mu123), mod, vanishes, data.p, metaboliser)


def intersection_oracle(p, search_bound: int | None = None) -> int:
    """Smallest k > 0 with k·(1⊗1⊗1) in the image of t - 1, by direct search.

    k lies in the image iff k·∏p / n has denominator supported on the
    primes of D; this never consults the closed form for m.
    """
    p = _triple(p)
    _check_admissible(p)
    n = n_value(p)
    if n == 0:
        raise DegenerateParameter("n is zero")
    if search_bound is None:
        search_bound = 4 * abs(n)
    primes = set()
    for pi in p:
        primes.update(primefactors(abs(pi)))
        primes.update(primefactors(abs(pi - 1)))
    pp = prod(p)
    for k in range(1, search_bound + 1):
        den = Fraction(k * pp, n).denominator
        for q in primes:
            while den % q == 0:
                den //= q
        if den == 1:
            return k
    raise BoundExceeded(f"no k <= {search_bound} lies in the image")


# closed forms for n_i/m_i along p = (2^e+1, 2^2e+1, 2^4e+1), as published
PUBLISHED_FAMILY_RATIOS = (
    lambda e: (2**e + 1) * (2**(2 * e) + 1) * (2**(4 * e) + 1) - 2**(7 * e),
    lambda e: 2**(3 * e) + 2**(2 * e) + 2**e - 1,
    lambda e: 2**(4 * e) - 2**(2 * e) + 2**e + 1,
    lambda e: -2**(5 * e) + 2**(4 * e) + 2**(2 * e) + 1,
)


def family_parameters(e: int) -> Triple:
    if e < 1:
        raise ValueError("family exponent must be >= 1")
    return (2**e + 1, 2**(2 * e) + 1, 2**(4 * e) + 1)


def signed_products(p) -> tuple[int, int, int, int]:
    """(n1, n2, n3, n4): n for the base pattern and for each single slot flipped."""
    p1, p2, p3 = _triple(p)
    return (
        p1 * p2 * p3 - (p1 - 1) * (p2 - 1) * (p3 - 1),
        p1 * p2 * (p3 - 1) - (p1 - 1) * (p2 - 1) * p3,
        p1 * (p2 - 1) * p3 - (p1 - 1) * p2 * (p3 - 1),
        (p1 - 1) * p2 * p3 - p1 * (p2 - 1) * (p3 - 1),
    )


@dataclass(frozen=True)
class FamilyRow:
    index: int
    n: int
    m: int
    ratio: int
    published: int

    @property
    def discrepancy(self) -> bool:
        return self.ratio != self.published


@dataclass(frozen=True)
class FamilyTable:
    e: int
    p: Triple
    rows: tuple[FamilyRow, ...]

    @property
    def admissible(self) -> bool:
        return all(abs(r.ratio) > 1 for r in self.rows)

    @property
    def discrepancies(self) -> list[FamilyRow]:
        return [r for r in self.rows if r.discrepancy]


def family_table(e: int) -> FamilyTable:
    p = family_parameters(e)
    rows = []
    for i, n in enumerate(signed_products(p)):
        m = m_value(n, p)
        rows.append(FamilyRow(i + 1, n, m, n // m, PUBLISHED_FAMILY_RATIOS[i](e)))
    return FamilyTable(e, p, tuple(rows))
