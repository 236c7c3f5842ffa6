"""Command-line front end.

Problem files are JSON documents ``{"d": 2, "S1": [[...]], "S2": [[...]], "label": "..."}``
read from a path or from standard input (``-``).

Exit codes: 0 success/Stable, 2 parse error, 3 rank violation, 4 uncertified,
5 enumeration budget, 10 Unstable, 11 Marginal.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys

import numpy as np

from . import catalog
from .bounds import EnumerationBudgetExceeded, upper_bound
from .matcore import MatrixError, RankTooHigh, ZeroMatrix
from .rankone import ExactJsrResult, PowerPair, Pure, RankOnePair, word_string
from .stability import Verdict, decide_stability

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RANK = 3
EXIT_UNCERTIFIED = 4
EXIT_BUDGET = 5
EXIT_UNSTABLE = 10
EXIT_MARGINAL = 11

VERDICT_EXIT = {
    Verdict.STABLE: EXIT_OK,
    Verdict.UNSTABLE: EXIT_UNSTABLE,
    Verdict.MARGINAL: EXIT_MARGINAL,
}


class ProblemError(ValueError):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _matrix_field(doc: dict, key: str, d: int) -> np.ndarray:
    if key not in doc:
        raise ProblemError(f"missing field {key!r}")
    rows = doc[key]
    if not isinstance(rows, list) or len(rows) != d:
        raise ProblemError(f"field {key!r} must be a list of {d} rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise ProblemError(f"field {key!r} row {i} must have {d} entries")
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
                raise ProblemError(f"field {key!r} row {i} has non-finite or non-numeric entry {x!r}")
    return np.array(rows, dtype=float)


def parse_problem_text(text: str):
    """Parse a problem document; returns ``(S1, S2, label)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ProblemError("top level must be an object")
    d = doc.get("d")
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ProblemError("field 'd' must be a positive integer")
    s1 = _matrix_field(doc, "S1", d)
    s2 = _matrix_field(doc, "S2", d)
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise ProblemError("field 'label' must be a string")
    return s1, s2, label


def parse_problem(source: str = "-"):
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ProblemError(f"cannot read {source}: {exc}") from None
    return parse_problem_text(text)


def problem_document(s1, s2, label: str = "") -> dict:
    s1 = np.asarray(s1, dtype=float)
    doc = {"d": int(s1.shape[0]), "S1": s1.tolist(), "S2": np.asarray(s2, dtype=float).tolist()}
    if label:
        doc["label"] = label
    return doc


def result_record(res: ExactJsrResult, s1, s2, label: str = "") -> dict:
    w = res.witness
    if isinstance(w, Pure):
        witness = {"type": "pure", "matrix": w.value}
    else:
        witness = {"type": "power", "ell": w.ell, "m": w.m}
    rec = problem_document(s1, s2, label)
    rec.update(
        value=res.value,
        witness=witness,
        word=word_string(res.word),
        letters=list(res.letters),
        certified=res.certified,
        gap=res.gap,
        explored_ell_max=res.explored_ell_max,
    )
    if res.diagnostic:
        rec["diagnostic"] = res.diagnostic
    return rec


# -- commands ---------------------------------------------------------------


def cmd_exact(args, out) -> int:
    s1, s2, label = parse_problem(args.problem)
    pair = RankOnePair(s1, s2)
    if args.certify:
        res = pair.solve_certified(args.tol, args.lmax if args.lmax is not None else 20000)
    else:
        res = pair.solve_bounded(args.lmax if args.lmax is not None else 200, args.mmax)
    if args.json:
        out.write(json.dumps(result_record(res, s1, s2, label)) + "\n")
    else:
        status = "certified" if res.certified else "uncertified"
        out.write(f"rho = {_fmt(res.value)} witness = {word_string(res.word)} {status}\n")
        if res.diagnostic:
            out.write(f"note: {res.diagnostic}\n")
    if args.certify and not res.certified:
        return EXIT_UNCERTIFIED
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    s1, s2, _ = parse_problem(args.problem)
    res = upper_bound([s1, s2], args.depth, norm=args.norm)
    word = "".join(str(c) for c in res.argmax_word)
    if args.json:
        out.write(json.dumps({
            "lower": res.lower, "upper": res.upper, "depth": res.depth,
            "argmax_word": list(res.argmax_word), "norm": res.norm_id,
        }) + "\n")
    else:
        out.write(f"lower = {_fmt(res.lower)}\nupper = {_fmt(res.upper)}\n"
                  f"depth = {res.depth}\nargmax = {word}\n")
    return EXIT_OK


def cmd_stability(args, out) -> int:
    s1, s2, _ = parse_problem(args.problem)
    v = decide_stability(s1, s2, args.tol)
    status = "certified" if v.certified else "uncertified"
    if args.json:
        out.write(json.dumps({"verdict": v.verdict.value, "rho": v.rho, "tol": v.tol,
                              "certified": v.certified}) + "\n")
    else:
        out.write(f"{v.verdict.value} rho = {_fmt(v.rho)} tol = {v.tol:g} {status}\n")
    return VERDICT_EXIT[v.verdict]


def sweep_rows(pair: RankOnePair, lmax: int, mmax: int):
    for ell in range(lmax + 1):
        for m in range(1, mmax + 1):
            yield ell, m, pair.candidate_value(ell, m)


def write_sweep(pair: RankOnePair, lmax: int, mmax: int, fh) -> None:
    fh.write("ell,m,value\n")
    for ell, m, val in sweep_rows(pair, lmax, mmax):
        fh.write(f"{ell},{m},{val!r}\n")


def cmd_sweep(args, out) -> int:
    s1, s2, _ = parse_problem(args.problem)
    if args.lmax < 0 or args.mmax < 1:
        raise ProblemError("need --lmax >= 0 and --mmax >= 1")
    pair = RankOnePair(s1, s2)
    buf = io.StringIO()
    write_sweep(pair, args.lmax, args.mmax, buf)
    if args.out in (None, "-"):
        out.write(buf.getvalue())
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(buf.getvalue())
        except OSError as exc:
            raise ProblemError(f"cannot write {args.out}: {exc}") from None
    return EXIT_OK


REFERENCE_DIGITS_TOL = 5e-7


def _demo_cases():
    return [
        ("example1", catalog.example1(), 4 ** 0.2, PowerPair(4, 1)),
        ("example2", catalog.example2(), 1.226346, PowerPair(5, 1)),
        ("example3", catalog.example3(), 1.134313, PowerPair(10, 1)),
    ]


def run_demo(solve=None) -> list[dict]:
    """Reproduce the worked examples; `solve(s1, s2)` may be swapped for fault injection."""
    if solve is None:
        def solve(a, b):
            return RankOnePair(a, b).solve_certified()
    records = []
    for name, (s1, s2), reference, witness in _demo_cases():
        res = solve(s1, s2)
        ok = abs(res.value - reference) <= REFERENCE_DIGITS_TOL and res.witness == witness
        records.append({
            "name": name, "reference": reference, "computed": res.value,
            "diff": res.value - reference, "witness": word_string(res.word), "pass": ok,
        })
    # hard instance: eps = 1/(L+1) hides the optimum beyond length L
    L = 10
    s1, s2 = catalog.example5(1.0 / (L + 1))
    res = solve(s1, s2)
    window = RankOnePair(s1, s2).solve_bounded(L, 1).value
    ok = res.value >= 1.0 and window < 1.0 and len(res.word) > L
    records.append({
        "name": "example5", "reference": ">= 1", "computed": res.value, "window": window,
        "witness": word_string(res.word), "pass": ok,
    })
    return records


def cmd_demo(args, out) -> int:
    records = run_demo()
    if args.json:
        out.write(json.dumps(records) + "\n")
    else:
        for r in records:
            tag = "PASS" if r["pass"] else "FAIL"
            extra = f" window(L=10) = {_fmt(r['window'])}" if "window" in r else f" diff = {r['diff']:.2e}"
            ref = r["reference"] if isinstance(r["reference"], str) else _fmt(r["reference"])
            out.write(f"{tag} {r['name']}: reference {ref} computed {_fmt(r['computed'])}"
                      f" witness {r['witness']}{extra}\n")
    return EXIT_OK if all(r["pass"] for r in records) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finitejsr",
        description="Generalized spectral radius of a matrix pair with a rank-one member.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        if name != "demo":
            p.add_argument("problem", nargs="?", default="-", help="problem JSON file, '-' for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("exact", cmd_exact, "exact radius via the block formula")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--certify", action="store_true")
    p.add_argument("--lmax", type=int, default=None)
    p.add_argument("--mmax", type=int, default=1)

    p = add("bounds", cmd_bounds, "brute-force lower/upper bounds")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--norm", choices=["two", "frobenius"], default="two")

    p = add("stability", cmd_stability, "decide absolute exponential stability")
    p.add_argument("--tol", type=float, default=None)

    p = add("sweep", cmd_sweep, "CSV of block values")
    p.add_argument("--lmax", type=int, default=20)
    p.add_argument("--mmax", type=int, default=1)
    p.add_argument("--out", default=None)

    add("demo", cmd_demo, "reproduce the worked examples")
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ProblemError, MatrixError) as exc:
        if isinstance(exc, (RankTooHigh, ZeroMatrix)):
            sys.stderr.write(f"rank error: {exc}\n")
            return EXIT_RANK
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except EnumerationBudgetExceeded as exc:
        sys.stderr.write(f"budget error: {exc}\n")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
