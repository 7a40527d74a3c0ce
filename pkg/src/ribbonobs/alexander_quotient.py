"""The cyclic quotients Λ/⟨(p-1) - p t⟩ and their triple tensor product.

Each quotient is identified with the localisation Z[1/p, 1/(p-1)] ⊂ Q by
sending t to (p-1)/p.  The triple tensor product of three such rings is
Z[1/D] with D = ∏ p_i (p_i - 1); since it is torsion free of rank one,
an element is stored as a single rational number (its image in ⊗ Q).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import gcd

from sympy import primefactors

from .errors import DegenerateParameter, InvariantViolation
from .exact_algebra import LaurentPoly
from .obstruction import n_value, stabilized_gcd, m_value


def _check_parameter(p: int) -> None:
    if p * (p - 1) == 0:
        raise DegenerateParameter(f"degenerate parameter p = {p}: need p(p-1) != 0")


@cache
def localization_primes(ps: tuple[int, ...]) -> frozenset[int]:
    out: set[int] = set()
    for p in ps:
        _check_parameter(p)
        out.update(primefactors(abs(p)))
        out.update(primefactors(abs(p - 1)))
    return frozenset(out)


def _supported(den: int, primes: frozenset[int]) -> bool:
    for q in primes:
        while den % q == 0:
            den //= q
    return den == 1


@dataclass(frozen=True)
class LocalizedRational:
    value: Fraction
    allowed_primes: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if not _supported(self.value.denominator, self.allowed_primes):
            raise InvariantViolation(
                f"{self.value} has denominator outside primes {sorted(self.allowed_primes)}")

    def _same(self, other: "LocalizedRational") -> None:
        if self.allowed_primes != other.allowed_primes:
            raise ValueError("localizations differ")

    def __add__(self, other: "LocalizedRational") -> "LocalizedRational":
        self._same(other)
        return LocalizedRational(self.value + other.value, self.allowed_primes)

    def __sub__(self, other: "LocalizedRational") -> "LocalizedRational":
        self._same(other)
        return LocalizedRational(self.value - other.value, self.allowed_primes)

    def __neg__(self) -> "LocalizedRational":
        return LocalizedRational(-self.value, self.allowed_primes)

    def scaled(self, c: Fraction | int) -> "LocalizedRational":
        return LocalizedRational(self.value * c, self.allowed_primes)


@dataclass(frozen=True)
class CyclicQuotient:
    """Λ/⟨(p-1) - p t⟩ realised inside Q with t acting as (p-1)/p."""

    p: int

    def __post_init__(self):
        _check_parameter(self.p)

    @property
    def t_value(self) -> Fraction:
        return Fraction(self.p - 1, self.p)

    @property
    def primes(self) -> frozenset[int]:
        return localization_primes((self.p,))

    def evaluate(self, f: LaurentPoly) -> Fraction:
        return Fraction(f(self.t_value))

    def lift(self, r: Fraction | int) -> LaurentPoly:
        """A Laurent polynomial whose class is the localized rational ``r``.

        Uses 1/p = 1 - t and 1/(p-1) = t^-1 - 1 in the quotient.
        """
        r = Fraction(r)
        p = self.p
        a = b = 0
        c = r
        while c.denominator != 1:
            q = c.denominator
            if gcd(q, p) > 1:
                a += 1
                c *= p
            elif gcd(q, p - 1) > 1:
                b += 1
                c *= p - 1
            else:
                raise ValueError(f"{r} is not in Z[1/{p}, 1/{p - 1}]")
        t = LaurentPoly.t()
        one_over_p = 1 - t
        one_over_pm1 = t ** -1 - 1
        f = LaurentPoly.constant(int(c)) * one_over_p ** a * one_over_pm1 ** b
        if self.evaluate(f) != r:
            raise InvariantViolation(f"lift of {r} evaluates to {self.evaluate(f)}")
        return f


@dataclass(frozen=True)
class H3Element:
    """Element of the triple tensor of cyclic quotients, stored by its image in Q."""

    value: LocalizedRational
    p: tuple[int, int, int]

    @classmethod
    def of(cls, x: Fraction | int, p: tuple[int, int, int]) -> "H3Element":
        return cls(LocalizedRational(Fraction(x), localization_primes(tuple(p))), tuple(p))

    @property
    def rational(self) -> Fraction:
        return self.value.value

    def __add__(self, other: "H3Element") -> "H3Element":
        return H3Element(self.value + other.value, self.p)

    def __sub__(self, other: "H3Element") -> "H3Element":
        return H3Element(self.value - other.value, self.p)

    def __neg__(self) -> "H3Element":
        return H3Element(-self.value, self.p)

    def scaled(self, k: int) -> "H3Element":
        return H3Element(self.value.scaled(k), self.p)


def _t_factor(p) -> Fraction:
    f = Fraction(1)
    for pi in p:
        f *= Fraction(pi - 1, pi)
    return f


def embed_tensor(f1: LaurentPoly, f2: LaurentPoly, f3: LaurentPoly,
                 p: tuple[int, int, int]) -> H3Element:
    """f1 ⊗ f2 ⊗ f3 ↦ f1((p1-1)/p1) · f2((p2-1)/p2) · f3((p3-1)/p3)."""
    p = tuple(int(x) for x in p)
    value = Fraction(1)
    for f, pi in zip((f1, f2, f3), p):
        value *= CyclicQuotient(pi).evaluate(f)
    return H3Element.of(value, p)


def t_action(x: H3Element) -> H3Element:
    return H3Element.of(x.rational * _t_factor(x.p), x.p)


def inverse_t_action(x: H3Element) -> H3Element:
    return H3Element.of(x.rational / _t_factor(x.p), x.p)


def t_minus_id(x: H3Element) -> H3Element:
    p1, p2, p3 = x.p
    factor = Fraction((p1 - 1) * (p2 - 1) * (p3 - 1) - p1 * p2 * p3, p1 * p2 * p3)
    return H3Element.of(x.rational * factor, x.p)


def witness_element(p: tuple[int, int, int]) -> H3Element:
    """s · p1 f1 ⊗ p2 f2 ⊗ p3 f3, whose image under t - 1 is -(n/m) · (1⊗1⊗1).

    f_i lifts 1/(g(n, p_i) g(n, p_i - 1)) and s = ∏ g / m.
    """
    p = tuple(int(x) for x in p)
    for pi in p:
        _check_parameter(pi)
    n = n_value(p)
    if n == 0:
        raise DegenerateParameter("n is zero; the derivative set is {0}")
    m = m_value(n, p)
    gs = [(stabilized_gcd(n, pi), stabilized_gcd(n, pi - 1)) for pi in p]
    prod_g = 1
    for a, b in gs:
        prod_g *= a * b
    s, rem = divmod(prod_g, m)
    if rem:
        raise InvariantViolation("m does not divide the product of stabilized gcds")
    fs = []
    for pi, (a, b) in zip(p, gs):
        fs.append(LaurentPoly.constant(pi) * CyclicQuotient(pi).lift(Fraction(1, a * b)))
    fs[0] = fs[0] * s
    w = embed_tensor(*fs, p)
    target = Fraction(-n, m)
    if t_minus_id(w).rational != target:
        raise InvariantViolation(f"witness check failed for p = {p}")
    return w
