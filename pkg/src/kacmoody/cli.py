"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 ring hypotheses not met
(``--require-ring``), 4 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from kacmoody import cartan, cohomology, weylgrowth
from kacmoody.cartan import CartanMatrix, KMType
from kacmoody.errors import CartanError, KacMoodyError, NotInZ1, UnknownFamily, RankOutOfRange
from kacmoody.polynomial import RationalFunction, from_strings
from kacmoody.powerseries import Series, char_sequence, char_sequence_log, expand

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_VERIFY = 0, 2, 3, 4


class CliExit(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _strs(xs):
    return [str(x) for x in xs]


def component_report(A: CartanMatrix, indices, N: int) -> dict:
    sub = A.submatrix(indices)
    kind = cartan.classify(sub)
    growth = weylgrowth.flag_poincare(sub)
    eps = cohomology.epsilon(sub)
    series = expand(growth.P_A, 2 * N)
    e = cohomology.exponent_sequence(series, sub.n, N)
    out = {
        "indices": sorted(indices),
        "type": str(kind),
        "epsilon": eps,
        "W": growth.W_of_q.to_json(),
        "P_A": growth.P_A.to_json(),
        "series": series.to_json(),
        "e_sequence": _strs(e.e),
        "finite_labels": None,
        "i_sequence": None,
        "group_presentation": None,
        "flag_presentation": None,
        "homotopy_ranks": None,
        "decomposition": None,
    }
    if kind is KMType.FINITE:
        labels = weylgrowth.recognize_finite(cartan.coxeter_matrix(sub), range(sub.n))
        out["finite_labels"] = [str(x) for x in labels]
        out["group_presentation"] = cohomology.finite_group_cohomology(labels).to_json()
        out["flag_presentation"] = cohomology.finite_flag_cohomology(labels).to_json()
    if kind in (KMType.FINITE, KMType.AFFINE):
        out["decomposition"] = weylgrowth.format_decomposition(weylgrowth.order_decomposition(sub))
    if kind is KMType.INDEFINITE:
        g = cohomology.generator_degrees_from_series(series, eps, sub.n, N)
        out["i_sequence"] = _strs(g.get(k) for k in range(1, 2 * N + 1))
        out["group_presentation"] = cohomology.group_presentation(sub, N, g).to_json()
        out["flag_presentation"] = cohomology.flag_presentation(sub, N, g).to_json()
        ranks = cohomology.homotopy_ranks(sub, N, g)
        out["homotopy_ranks"] = {
            "G": {str(k): str(v) for k, v in ranks.group.items() if v},
            "F": {str(k): str(v) for k, v in ranks.flag.items() if v},
        }
    return out


def analyze(A: CartanMatrix, N: int = 20, require_ring: bool = False) -> dict:
    if require_ring:
        try:
            cohomology._require_indefinite(A)
        except KacMoodyError as exc:
            raise CliExit(EXIT_HYPOTHESIS, str(exc)) from None
    comps = [component_report(A, sorted(c), N) for c in cartan.components(A)]
    report = {
        "input": {"n": A.n, "a": A.to_lists()},
        "order": N,
        "components": comps,
        "global": None,
    }
    if len(comps) > 1:
        P = RationalFunction.one()
        for c in comps:
            P = P * RationalFunction.from_json(c["P_A"])
        glob = {"P_A": P.to_json(), "group_presentation": None, "flag_presentation": None}
        if all(c["type"] in ("Finite", "Indefinite") for c in comps):
            for key in ("group_presentation", "flag_presentation"):
                parts = [cohomology.RingPresentation.from_json(c[key]) for c in comps]
                glob[key] = cohomology.tensor(parts).to_json()
        report["global"] = glob
    return report


def _rf_text(obj: dict) -> str:
    return str(RationalFunction.from_json(obj))


def _pres_text(obj: Optional[dict]) -> str:
    if obj is None:
        return "-"
    p = cohomology.RingPresentation.from_json(obj)
    text = p.describe()
    for r in p.relations:
        if r.matrix is not None:
            text += f"\n      {r.name} = " + " ".join(
                "[" + " ".join(str(x) for x in row) + "]" for row in r.matrix)
    return text


def render_text(report: dict) -> str:
    lines = ["matrix:"]
    lines += ["  " + " ".join(str(x) for x in row) for row in report["input"]["a"]]
    lines.append(f"cutoff: q^{2 * report['order']}")
    for c in report["components"]:
        idx = ",".join(str(i) for i in c["indices"])
        lines.append(f"component {{{idx}}}: {c['type']}"
                     + (f" ({' x '.join(c['finite_labels'])})" if c["finite_labels"] else ""))
        lines.append(f"  epsilon: {c['epsilon']}")
        lines.append(f"  W(q)   = {_rf_text(c['W'])}")
        lines.append(f"  P_A(q) = {_rf_text(c['P_A'])}")
        lines.append(f"  series: {' '.join(c['series']['coeffs'])}")
        lines.append(f"  e: {' '.join(c['e_sequence'])}")
        if c["decomposition"]:
            lines.append(f"  decomposition: {c['decomposition']}")
        if c["i_sequence"]:
            nz = [f"i{k}={v}" for k, v in enumerate(c["i_sequence"], start=1) if v != "0"]
            lines.append(f"  i: {' '.join(nz)}")
        lines.append(f"  H*(G): {_pres_text(c['group_presentation'])}")
        lines.append(f"  H*(F): {_pres_text(c['flag_presentation'])}")
        if c["homotopy_ranks"]:
            for space in ("G", "F"):
                ranks = " ".join(f"pi{k}:{v}" for k, v in c["homotopy_ranks"][space].items())
                lines.append(f"  pi_*({space}) ⊗ Q: {ranks}")
    if report["global"]:
        g = report["global"]
        lines.append(f"product P_A(q) = {_rf_text(g['P_A'])}")
        lines.append(f"product H*(G): {_pres_text(g['group_presentation'])}")
        lines.append(f"product H*(F): {_pres_text(g['flag_presentation'])}")
    return "\n".join(lines)


def oracle(A: CartanMatrix, lmax: int) -> dict:
    counts = weylgrowth.weyl_growth_bfs(A, lmax)
    closed = expand(weylgrowth.weyl_growth_rational(A), lmax).coeffs
    return {
        "lengths": _strs(counts),
        "rational": _strs(closed),
        "matched_rational": list(closed) == counts,
    }


def charseq(series: Series, n: int, method: str = "both") -> dict:
    out = {"n": n, "method": method}
    if method in ("prop1", "both"):
        out["prop1"] = _strs(char_sequence(series, n))
    if method in ("prop2", "both"):
        out["prop2"] = _strs(char_sequence_log(series, n))
    if method == "both":
        out["agree"] = out["prop1"] == out["prop2"]
    return out


# -- argument handling ---------------------------------------------------------------

def _read_matrix(path: str) -> CartanMatrix:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliExit(EXIT_INPUT, f"{path}: {exc.strerror}") from None
    try:
        return cartan.parse_matrix_text(text)
    except (CartanError, ValueError, KeyError) as exc:
        raise CliExit(EXIT_INPUT, f"{path}: {exc}") from None


def _emit(obj, fmt: str, text: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(text + "\n")


def _run_analyze(A, args, out):
    report = analyze(A, args.order, args.require_ring)
    return report, render_text(report)


def _cmd_analyze(args, out):
    results = []
    for path in args.paths:
        results.append(_run_analyze(_read_matrix(path), args, out))
    if args.format == "json":
        payload = results[0][0] if len(results) == 1 else [r for r, _ in results]
        _emit(payload, "json", "", out)
    else:
        _emit(None, "text", "\n\n".join(t for _, t in results), out)
    return EXIT_OK


def _cmd_family(args, out):
    params = {k: getattr(args, k) for k in ("a", "b", "base") if getattr(args, k) is not None}
    try:
        A = cartan.build_named(args.name, args.rank or 0, **params)
    except (UnknownFamily, RankOutOfRange, KeyError) as exc:
        raise CliExit(EXIT_INPUT, f"{exc}") from None
    report, text = _run_analyze(A, args, out)
    _emit(report, args.format, text, out)
    return EXIT_OK


def _cmd_oracle(args, out):
    A = _read_matrix(args.path)
    res = oracle(A, args.lmax)
    if args.format == "json":
        _emit(res, "json", "", out)
    else:
        lines = [f"{'length':>6} {'bfs':>12} {'rational':>12}"]
        for k, (b, r) in enumerate(zip(res["lengths"], res["rational"])):
            mark = "" if b == r else "  <-- mismatch"
            lines.append(f"{k:>6} {b:>12} {r:>12}{mark}")
        lines.append("PASS" if res["matched_rational"] else "FAIL")
        _emit(None, "text", "\n".join(lines), out)
    return EXIT_OK if res["matched_rational"] else EXIT_VERIFY


def _parse_coeffs(text: str) -> list:
    return [int(tok) for tok in text.replace(",", " ").split()]


def _cmd_charseq(args, out):
    try:
        if args.series is not None:
            f = Series.from_coeffs(_parse_coeffs(args.series), args.n)
        else:
            num, _, den = args.rational.partition(";")
            r = RationalFunction.from_polys(from_strings(num.split()),
                                            from_strings(den.split() or ["1"]))
            f = expand(r, args.n)
        res = charseq(f, args.n, args.method)
    except (NotInZ1, ValueError, ZeroDivisionError) as exc:
        raise CliExit(EXIT_INPUT, str(exc)) from None
    lines = []
    for key in ("prop1", "prop2"):
        if key in res:
            lines.append(f"{key}: " + " ".join(res[key]))
    if "agree" in res:
        lines.append("agree" if res["agree"] else "DISAGREE")
    _emit(res, args.format, "\n".join(lines), out)
    if res.get("agree") is False:
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kacmoody",
        description="Poincare series and rational cohomology of Kac-Moody groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--order", type=int, default=cohomology.DEFAULT_N,
                       help="cutoff N in steps of q^2 (series kept through q^(2N))")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--require-ring", action="store_true",
                       help="exit 3 unless the matrix is indecomposable and indefinite")

    p = sub.add_parser("analyze", help="full report for matrices read from files")
    p.add_argument("paths", nargs="+")
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("family", help="full report for a named matrix")
    p.add_argument("name", help="A..G, rank2, complete, affine")
    p.add_argument("--rank", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--base", help="finite family for the affine builder")
    common(p)
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("oracle", help="compare breadth-first counts with the closed form")
    p.add_argument("path")
    p.add_argument("--lmax", type=int, default=20)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("charseq", help="characteristic sequence of a series")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--series", help='coefficients, constant first, e.g. "1 -2"')
    src.add_argument("--rational", help='"num;den" coefficient lists, e.g. "1;1 -1"')
    p.add_argument("--n", type=int, default=18)
    p.add_argument("--method", choices=("prop1", "prop2", "both"), default="both")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_charseq)
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliExit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except CartanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
