"""Command line entry point: ``ribbonobs {analyze,metabolisers,milnor,family,oracle}``."""

from __future__ import annotations

import argparse
import logging
import sys

from . import seifert as sf
from . import serialize as io
from .errors import HypothesisRefused, InputError, InvariantViolation
from .milnor import mu_triple
from .obstruction import family_table, intersection_oracle, obstruction_data
from .reports import all_patterns, analyze, preset_example1, preset_example2, preset_family

EXIT_OK, EXIT_INPUT, EXIT_REFUSED, EXIT_INTERNAL = 0, 1, 2, 3


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_spec(args):
    if args.preset:
        name, _, rest = args.preset.partition(":")
        if name == "example1":
            return preset_example1(_ints(rest) if rest else (3, 5, 17))
        if name == "ribbon":
            p = _ints(rest) if rest else (3, 5, 17)
            return preset_example1(p, [x for x in all_patterns("δ") if x != "δδδ"])
        if name == "example2":
            return preset_example2(_ints(rest) if rest else (3, 5, 17))
        if name == "family":
            return preset_family(int(rest or 1))[0]
        raise InputError(f"unknown preset {name!r}")
    if not args.input:
        raise InputError("need --input or --preset")
    return io.spec_from_dict(io.load_json(args.input))


def _report_table(rep) -> str:
    lines = [f"knot: {rep.name}", f"genus: {rep.genus}", f"Alexander: {rep.alexander!r}", ""]
    lines.append(f"{'pattern':<10}{'p':<18}{'n':>10}{'m':>6}{'n/m':>8}{'mu':>6}  psi")
    for st in rep.metabolisers:
        psi = "?" if st.vanishes is None else ("0" if st.vanishes else "≠0")
        p = ",".join(map(str, st.p)) if st.p else "-"
        lines.append(f"{st.label or '-':<10}{p:<18}{st.n if st.n is not None else '-':>10}"
                     f"{st.m if st.m is not None else '-':>6}{st.modulus if st.modulus is not None else '-':>8}"
                     f"{st.mu123 if st.mu123 is not None else '-':>6}  {psi}")
    lines.append("")
    lines.append("complementary pairs: " + ", ".join(
        f"{rep.metabolisers[i].label}|{rep.metabolisers[j].label}" for i, j in rep.complementary_pairs))
    for k, v in rep.verdicts.items():
        lines.append(f"{k}: {'inconclusive' if v is None else v}")
    for w in rep.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    rep = analyze(_load_spec(args))
    text = io.dumps(io.report_to_dict(rep)) if args.format == "json" else _report_table(rep)
    _emit(text, args.output)
    return EXIT_OK


def cmd_metabolisers(args) -> int:
    spec = _load_spec(args)
    s = spec.seifert_matrix()
    hs = sf.enumerate_metabolisers(s)
    pairs = sf.complementary_pairs(s, hs)
    if args.format == "json":
        out = {
            "metabolisers": [{"label": h.label,
                              "basis": [[str(x) for x in c] for c in h.columns],
                              "verified": sf.verify_metaboliser(s, h)} for h in hs],
            "complementary_pairs": [[str(i), str(j)] for i, j in pairs],
        }
        text = io.dumps(out)
    else:
        lines = [f"{h.label}: " + " ".join(str(list(c)) for c in h.columns) for h in hs]
        lines.append("pairs: " + ", ".join(f"{hs[i].label}|{hs[j].label}" for i, j in pairs))
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_milnor(args) -> int:
    ls = io.longitudes_from_dict(io.load_json(args.longitudes))
    i, j, k = args.triple
    value = mu_triple(ls, i, j, k)
    if args.format == "json":
        _emit(io.dumps({"triple": [str(i), str(j), str(k)], "mu": str(value)}), args.output)
    else:
        _emit(f"{value}\n", args.output)
    return EXIT_OK


def cmd_family(args) -> int:
    table = family_table(args.e)
    if args.format == "json":
        _emit(io.dumps(io.family_to_dict(table)), args.output)
        return EXIT_OK
    lines = [f"e = {table.e}, p = {table.p}",
             f"{'i':>2}{'n_i':>22}{'m_i':>10}{'n_i/m_i':>20}{'published':>20}  flag"]
    for r in table.rows:
        flag = "DISCREPANCY" if r.discrepancy else ""
        lines.append(f"{r.index:>2}{r.n:>22}{r.m:>10}{r.ratio:>20}{r.published:>20}  {flag}")
    lines.append(f"all |n_i/m_i| > 1: {table.admissible}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    p = args.p
    data = obstruction_data(p)
    k = intersection_oracle(p, args.search_bound)
    agree = k == data.modulus
    if args.format == "json":
        _emit(io.dumps({"p": [str(x) for x in p], "n": str(data.n), "m": str(data.m),
                        "closed_form": str(data.modulus), "oracle": str(k), "agree": agree}),
              args.output)
    else:
        _emit(f"p={p} n={data.n} m={data.m} n/m={data.modulus} oracle={k} agree={agree}\n",
              args.output)
    if not agree:
        raise InvariantViolation(f"oracle {k} disagrees with closed form {data.modulus}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1); exit 2 is reserved for refusals
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ribbonobs", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, need_input=True):
        p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--format", choices=("json", "table"), default="json")
        if need_input:
            p.add_argument("--input", help="knot spec JSON")
            p.add_argument("--preset", help="example1[:p1,p2,p3], ribbon[:...], example2[:...], family:e")

    p = sub.add_parser("analyze", help="ψ status and filtration verdicts")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("metabolisers", help="enumerate metabolisers and complementary pairs")
    common(p)
    p.set_defaults(func=cmd_metabolisers)

    p = sub.add_parser("milnor", help="μ̄(ijk) of a longitude system")
    common(p, need_input=False)
    p.add_argument("--longitudes", required=True)
    p.add_argument("--triple", type=_ints, default=(1, 2, 3))
    p.set_defaults(func=cmd_milnor)

    p = sub.add_parser("family", help="n_i, m_i table for p = (2^e+1, 2^2e+1, 2^4e+1)")
    common(p, need_input=False)
    p.add_argument("--e", type=int, required=True)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("oracle", help="brute-force image search vs closed-form n/m")
    common(p, need_input=False)
    p.add_argument("--p", type=_ints, required=True)
    p.add_argument("--search-bound", type=int, default=None)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:     # --help, usage errors
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except HypothesisRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (InputError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
