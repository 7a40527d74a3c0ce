"""JSON interchange.  Every integer is written as a decimal string."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import exact_algebra as ea
from .errors import InputError
from .milnor import FreeWord, LongitudeSystem
from .obstruction import FamilyTable
from .reports import DerivativeData, KnotSpec, ObstructionReport
from .seifert import BlockForm


def _int(x: Any) -> int:
    if isinstance(x, bool):
        raise InputError(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise InputError(f"expected an integer or decimal string, got {x!r}")


def _imat(rows) -> ea.Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("expected a list of rows")
    return ea.as_matrix(tuple(_int(x) for x in r) for r in rows)


def _smat(m) -> list[list[str]]:
    return [[str(x) for x in row] for row in m]


def _sfrac(x) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# longitudes
# ---------------------------------------------------------------------------

def longitudes_from_dict(d: dict) -> LongitudeSystem:
    try:
        comps = _int(d["components"])
        words = [FreeWord(tuple((_int(g), _int(e)) for g, e in w)) for w in d["longitudes"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed longitude system: {exc}") from exc
    return LongitudeSystem(comps, tuple(words))


def longitudes_to_dict(ls: LongitudeSystem) -> dict:
    return {"components": ls.components,
            "longitudes": [[[g, e] for g, e in w.letters] for w in ls.longitudes]}


# ---------------------------------------------------------------------------
# knot specs
# ---------------------------------------------------------------------------

def spec_from_dict(d: dict) -> KnotSpec:
    if not isinstance(d, dict):
        raise InputError("knot spec must be a JSON object")
    block = seifert = None
    if "block_form" in d:
        bf = d["block_form"]
        try:
            block = BlockForm(_imat(bf["A"]), tuple(_int(x) for x in bf["p"]))
        except KeyError as exc:
            raise InputError(f"block_form missing {exc}") from exc
    if "seifert" in d:
        seifert = _imat(d["seifert"])
    derivs = []
    for entry in d.get("derivatives", []):
        pattern = basis = None
        p = entry.get("pattern")
        if isinstance(p, str):
            pattern = p
        elif p is not None:
            basis = ea.from_columns([[_int(x) for x in col] for col in p])
        if "basis" in entry:
            basis = ea.from_columns([[_int(x) for x in col] for col in entry["basis"]])
        if pattern is None and basis is None:
            raise InputError("derivative entry needs a pattern or basis columns")
        mu = _int(entry["mu123"]) if "mu123" in entry else None
        longs = longitudes_from_dict(entry["longitudes"]) if "longitudes" in entry else None
        derivs.append(DerivativeData(pattern, basis, mu, longs))
    return KnotSpec(str(d.get("name", "")), seifert, block, tuple(derivs))


def spec_to_dict(spec: KnotSpec) -> dict:
    out: dict[str, Any] = {"name": spec.name}
    if spec.block_form is not None:
        out["block_form"] = {"A": _smat(spec.block_form.a),
                             "p": [str(x) for x in spec.block_form.p]}
    if spec.seifert is not None:
        out["seifert"] = _smat(spec.seifert)
    derivs = []
    for d in spec.derivatives:
        e: dict[str, Any] = {}
        if d.pattern is not None:
            e["pattern"] = d.pattern
        if d.basis is not None:
            e["basis"] = [[str(x) for x in col] for col in ea.columns(d.basis)]
        if d.mu123 is not None:
            e["mu123"] = str(d.mu123)
        if d.longitudes is not None:
            e["longitudes"] = longitudes_to_dict(d.longitudes)
        derivs.append(e)
    out["derivatives"] = derivs
    return out


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def _verdict(v: bool | None):
    return "inconclusive" if v is None else v


def _opt(x):
    return None if x is None else str(x)


def report_to_dict(r: ObstructionReport) -> dict:
    alex = r.alexander
    mets = []
    for st in r.metabolisers:
        mets.append({
            "label": st.label,
            "basis": [[str(x) for x in col] for col in ea.columns(st.basis)],
            "linking_matrix": None if st.linking_matrix is None else [
                [_sfrac(x) for x in row] for row in st.linking_matrix],
            "p": None if st.p is None else [str(x) for x in st.p],
            "n": _opt(st.n),
            "m": _opt(st.m),
            "modulus": _opt(st.modulus),
            "mu123": _opt(st.mu123),
            "mu_source": st.mu_source,
            "psi": "undetermined" if st.vanishes is None else ("zero" if st.vanishes else "nonzero"),
            "note": st.note,
        })
    return {
        "name": r.name,
        "genus": str(r.genus),
        "alexander_polynomial": {
            "coefficients": [str(alex.coeff(e)) for e in range(alex.max_exp + 1)],
            "text": repr(alex),
        },
        "metabolisers": mets,
        "complementary_pairs": [[str(i), str(j)] for i, j in r.complementary_pairs],
        "unimodular_pairs": [[str(i), str(j)] for i, j in r.unimodular_pairs],
        "verdicts": {k: _verdict(v) for k, v in r.verdicts.items()},
        "witnesses": dict(r.witnesses),
        "ribbon_consistent": r.ribbon_consistent,
        "warnings": list(r.warnings),
        "discrepancies": [],
    }


def family_to_dict(t: FamilyTable) -> dict:
    return {
        "e": str(t.e),
        "p": [str(x) for x in t.p],
        "rows": [{"index": str(r.index), "n": str(r.n), "m": str(r.m), "ratio": str(r.ratio),
                  "published_ratio": str(r.published), "discrepancy": r.discrepancy}
                 for r in t.rows],
        "admissible": t.admissible,
        "discrepancies": [
            {"index": str(r.index), "computed": str(r.ratio), "published": str(r.published)}
            for r in t.discrepancies],
    }


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def load_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
