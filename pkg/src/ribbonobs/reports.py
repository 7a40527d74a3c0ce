"""Knot specifications, per-metaboliser ψ status, filtration verdicts, presets.

Verdicts are three-valued: ``True`` (obstructed), ``False`` (not
obstructed by this method) and ``None`` (inconclusive).  Only the
obstruction argument for diagonal linking matrices at genus 3 is used; anything
outside it degrades to ``None`` rather than being guessed.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact_algebra as ea
from . import seifert as sf
from .errors import DegenerateParameter, InputError, InvariantViolation
from .milnor import LongitudeSystem, borromean, mu_triple, unlink, zero_solvable_screen
from .obstruction import (FamilyTable, family_parameters, family_table, n_value,
                          obstruction_data)
from .seifert import BlockForm, Metaboliser, SeifertMatrix

log = logging.getLogger(__name__)

VERDICT_KEYS = (
    "f_05_1_obstructed",
    "homotopy_ribbon_obstructed",
    "f_1_1_obstructed",
    "doubly_one_solvable_obstructed",
    "doubly_slice_obstructed",
    "no_zero_solvable_derivative",
)


@dataclass(frozen=True)
class DerivativeData:
    """μ̄(123) data for the derivative representing one metaboliser."""

    pattern: str | None = None
    basis: ea.Matrix | None = None
    mu123: int | None = None
    longitudes: LongitudeSystem | None = None


@dataclass(frozen=True)
class KnotSpec:
    name: str = ""
    seifert: ea.Matrix | None = None
    block_form: BlockForm | None = None
    derivatives: tuple[DerivativeData, ...] = ()

    def __post_init__(self):
        if (self.seifert is None) == (self.block_form is None):
            raise InputError("a knot spec needs exactly one of a Seifert matrix or a block form")
        object.__setattr__(self, "derivatives", tuple(self.derivatives))

    def seifert_matrix(self) -> SeifertMatrix:
        if self.block_form is not None:
            return sf.from_block(self.block_form)
        return sf.validate(self.seifert)


@dataclass
class MetaboliserStatus:
    label: str | None
    basis: ea.Matrix
    linking_matrix: ea.Matrix | None = None
    p: tuple[int, ...] | None = None
    n: int | None = None
    m: int | None = None
    modulus: int | None = None
    mu123: int | None = None
    mu_source: str | None = None
    vanishes: bool | None = None
    note: str = ""
    derivative_unlinked: bool | None = None


@dataclass
class ObstructionReport:
    name: str
    genus: int
    alexander: ea.LaurentPoly
    metabolisers: list[MetaboliserStatus]
    complementary_pairs: list[tuple[int, int]]
    unimodular_pairs: list[tuple[int, int]]
    verdicts: dict[str, bool | None]
    witnesses: dict[str, str]
    ribbon_consistent: bool
    warnings: list[str] = field(default_factory=list)

    @property
    def vanishing(self) -> list[int]:
        return [i for i, st in enumerate(self.metabolisers) if st.vanishes]


def _resolve_mu(d: DerivativeData, warnings: list[str], label: str) -> tuple[int | None, str | None, bool | None]:
    unlinked = None
    mu_from_long = None
    if d.longitudes is not None:
        if d.longitudes.components != 3:
            raise InputError(f"derivative for {label}: expected 3 components")
        mu_from_long = mu_triple(d.longitudes, 1, 2, 3)
        unlinked = zero_solvable_screen(d.longitudes).passes
    if d.mu123 is not None:
        if mu_from_long is not None and mu_from_long != d.mu123:
            warnings.append(f"{label}: supplied μ̄(123) = {d.mu123} overrides longitude value {mu_from_long}")
        return int(d.mu123), "integer", (d.mu123 == 0 if unlinked is None else unlinked)
    if mu_from_long is not None:
        return mu_from_long, "longitudes", unlinked
    return None, None, None


def _status_for(s: SeifertMatrix, h: Metaboliser, d: DerivativeData | None,
                warnings: list[str]) -> MetaboliserStatus:
    st = MetaboliserStatus(h.label, h.basis)
    if d is not None:
        st.mu123, st.mu_source, st.derivative_unlinked = _resolve_mu(d, warnings, h.label or "?")
    if s.genus != 3:
        st.note = "ψ criterion needs genus 3"
        return st
    x = sf.derivative_linking_matrix(s, h)
    st.linking_matrix = x
    if any(x[i][j] for i in range(3) for j in range(3) if i != j) or any(
            Fraction(x[i][i]).denominator != 1 for i in range(3)):
        st.note = "linking matrix not diagonal; no computable criterion"
        return st
    p = tuple(int(x[i][i]) for i in range(3))
    st.p = p
    if any(pi * (pi - 1) == 0 for pi in p):
        st.note = "degenerate linking matrix entry (p(p-1) = 0)"
        return st
    if n_value(p) == 0:
        st.n = 0
        st.note = "n is zero; criterion inapplicable"
        return st
    data = obstruction_data(p)
    st.n, st.m, st.modulus = data.n, data.m, data.modulus
    if st.mu123 is None:
        st.note = "no derivative data; ψ undetermined"
        return st
    st.vanishes = st.mu123 % st.modulus == 0
    return st


def _tri_all(values) -> bool | None:
    values = list(values)
    if any(v is False for v in values):
        return False
    if all(v is True for v in values):
        return True
    return None


def _tri_any(values) -> bool | None:
    values = list(values)
    if any(v is True for v in values):
        return True
    if all(v is False for v in values):
        return False
    return None


def _tri_not(v: bool | None) -> bool | None:
    return None if v is None else not v


def analyze(spec: KnotSpec) -> ObstructionReport:
    s = spec.seifert_matrix()
    warnings: list[str] = []
    if s.genus != 3:
        warnings.append(f"genus {s.genus}: metaboliser enumeration extrapolates the genus-3 argument")
    hs = sf.enumerate_metabolisers(s)
    assigned: dict[int, DerivativeData] = {}
    for d in spec.derivatives:
        idx = sf.match_metaboliser(hs, pattern=d.pattern, basis=d.basis)
        if idx is None:
            key = d.pattern if d.pattern is not None else d.basis
            raise InputError(f"derivative data {key!r} matches no metaboliser")
        if idx in assigned:
            raise InputError(f"two derivative entries for metaboliser {hs[idx].label}")
        assigned[idx] = d
    statuses = [_status_for(s, h, assigned.get(i), warnings) for i, h in enumerate(hs)]
    pairs = sf.complementary_pairs(s, hs)
    unimodular = sf.complementary_pairs(s, hs, unimodular=True)

    psi_nonzero = [_tri_not(st.vanishes) for st in statuses]
    f05 = _tri_all(psi_nonzero)
    # a pair defeats the doubly-(1) obstruction iff both ψ vanish
    pair_both = [_tri_all([statuses[i].vanishes, statuses[j].vanishes]) for i, j in pairs]
    doubly = _tri_not(_tri_any(pair_both)) if pairs else True
    if s.genus != 3:
        f05 = doubly = None

    verdicts = {
        "f_05_1_obstructed": f05,
        "homotopy_ribbon_obstructed": f05,
        "f_1_1_obstructed": doubly,
        "doubly_one_solvable_obstructed": doubly,
        "doubly_slice_obstructed": doubly,
        "no_zero_solvable_derivative": f05,
    }
    witnesses = _witnesses(statuses, pairs, verdicts)
    ribbon_consistent = any(st.vanishes and st.derivative_unlinked for st in statuses)
    report = ObstructionReport(spec.name, s.genus, sf.alexander_poly(s), statuses, pairs,
                               unimodular, verdicts, witnesses, ribbon_consistent, warnings)
    check_report(report)
    return report


def _witnesses(statuses, pairs, verdicts) -> dict[str, str]:
    out = {}
    if verdicts["f_05_1_obstructed"]:
        parts = [f"{st.label}: μ̄={st.mu123} ≢ 0 mod {st.modulus}" for st in statuses]
        text = "ψ ≠ 0 for every metaboliser (" + "; ".join(parts) + ")"
        out["f_05_1_obstructed"] = text
        out["homotopy_ribbon_obstructed"] = text
        out["no_zero_solvable_derivative"] = (
            "ψ ≠ 0 for every lagrangian, so every derivative has some μ̄(ijk) ≠ 0")
    if verdicts["doubly_one_solvable_obstructed"]:
        if pairs:
            parts = []
            for i, j in pairs:
                bad = i if statuses[i].vanishes is False else j
                parts.append(f"{statuses[i].label}|{statuses[j].label}: ψ({statuses[bad].label}) ≠ 0")
            text = "no complementary pair has both ψ vanishing (" + "; ".join(parts) + ")"
        else:
            text = "no two metabolisers are complementary"
        for k in ("f_1_1_obstructed", "doubly_one_solvable_obstructed", "doubly_slice_obstructed"):
            out[k] = text
    return out


def check_report(r: ObstructionReport) -> None:
    v = r.verdicts
    implications = [
        ("f_05_1_obstructed", "homotopy_ribbon_obstructed"),
        ("f_1_1_obstructed", "doubly_slice_obstructed"),
        ("f_05_1_obstructed", "doubly_one_solvable_obstructed"),
    ]
    for a, b in implications:
        if v[a] is True and v[b] is not True:
            raise InvariantViolation(f"{a} holds but {b} does not")


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

def _check_p(p) -> tuple[int, int, int]:
    p = tuple(int(x) for x in p)
    if len(p) != 3:
        raise InputError("need three parameters")
    for pi in p:
        if pi * (pi - 1) == 0:
            raise DegenerateParameter(f"inadmissible parameter {pi}: need p(p-1) != 0")
    return p


def all_patterns(dual: str = "δ") -> list[str]:
    return ["".join(c) for c in itertools.product((dual, "J"), repeat=3)]


def preset_example1(p=(3, 5, 17), insertion_pattern=None, *, longitudes: bool = False) -> KnotSpec:
    """A = 0; Borromean insertions give μ̄(123) = 1 on the listed patterns, 0 elsewhere."""
    p = _check_p(p)
    patterns = all_patterns("δ")
    chosen = patterns if insertion_pattern is None else insertion_pattern
    inserted = {sf.pattern_key(x) for x in chosen}
    derivs = []
    for pat in patterns:
        mu = 1 if sf.pattern_key(pat) in inserted else 0
        if longitudes:
            derivs.append(DerivativeData(pattern=pat, longitudes=borromean() if mu else unlink()))
        else:
            derivs.append(DerivativeData(pattern=pat, mu123=mu))
    name = f"example1 p={p} insertions={len(inserted)}"
    return KnotSpec(name, block_form=BlockForm(ea.zeros(3, 3), p), derivatives=tuple(derivs))


def preset_example2(p=(3, 5, 17)) -> KnotSpec:
    """A = diag(1, -1, 1); μ̄(123) = 1 on all eight {J_i, ε_i} selections."""
    p = _check_p(p)
    ratios = [Fraction(pi, pi - 1) for pi in p] + [Fraction(pi - 1, pi) for pi in p]
    if len(set(ratios)) != 6:
        raise InputError(f"the six ratios p/(p-1), (p-1)/p are not distinct for p = {p}")
    derivs = tuple(DerivativeData(pattern=pat, mu123=1) for pat in all_patterns("ε"))
    return KnotSpec(f"example2 p={p}", block_form=BlockForm(ea.diag(1, -1, 1), p),
                    derivatives=derivs)


def preset_family(e: int) -> tuple[KnotSpec, FamilyTable]:
    p = family_parameters(e)
    return preset_example1(p), family_table(e)
