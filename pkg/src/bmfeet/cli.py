"""Command-line harness: towers, unitals, pedal sets and verification suites.

Field elements are given as comma-separated coordinate vectors over GF(p)
in the tower basis, so with q = p, "1,2" is 1 + 2*epsilon (q odd) or
1 + 2*delta (q even).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import analysis
from .fields import FieldError, MAX_Q, tower_for_q
from .pedal import CANONICAL_EVEN, CANONICAL_ODD, PedalError, canonical_base, pedal_brute
from .plane import MAX_PLANE_Q, PlaneError
from .unital import InvalidParams, Unital, validate_params

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_Q = 3
EXIT_BAD_PARAMS = 4
EXIT_IO = 5

OUTDIR_ENV = "BMFEET_OUTDIR"


class BadQ(Exception):
    pass


class BadParams(Exception):
    pass


def _tower(q: int, plane: bool = True):
    cap = MAX_PLANE_Q if plane else MAX_Q
    if q > cap:
        raise BadQ(f"q = {q} exceeds the supported cap {cap}")
    try:
        return tower_for_q(q)
    except FieldError as e:
        raise BadQ(str(e)) from e


def parse_elem(F, text: str) -> int:
    try:
        vec = [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError as e:
        raise BadParams(f"bad field element {text!r}") from e
    if len(vec) not in (F.h, 2 * F.h) or any(not 0 <= c < F.p for c in vec):
        raise BadParams(f"field element {text!r} needs {2 * F.h} coordinates in 0..{F.p - 1}")
    return F.from_coords(vec)


def _params(F, args):
    if args.alpha is None or args.beta is None:
        raise BadParams("--alpha and --beta are required")
    alpha, beta = parse_elem(F, args.alpha), parse_elem(F, args.beta)
    try:
        return validate_params(F, alpha, beta)
    except InvalidParams as e:
        raise BadParams(str(e)) from e


def _needs_seed(args, *selectors):
    if any(isinstance(s, str) and s.startswith("sample:") for s in selectors) and getattr(args, "seed", None) is None:
        raise argparse.ArgumentTypeError("a seed is required whenever a selector samples")


def _outdir(args) -> Path:
    return Path(args.out or os.environ.get(OUTDIR_ENV) or "reports")


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        raise IOError(f"cannot write {path}: {e}") from e


def _emit(args, obj, name: str) -> None:
    text = json.dumps(obj, sort_keys=True, indent=1) + "\n"
    if args.out:
        _write(Path(args.out) / name, text)
    sys.stdout.write(text)


# -- commands ------------------------------------------------------------------

def cmd_tower(args) -> int:
    F = _tower(args.q, plane=False)
    _emit(args, F.to_json(), f"tower_q{args.q}.json")
    return EXIT_OK


def cmd_unital(args) -> int:
    F = _tower(args.q)
    U = Unital(_params(F, args))
    _emit(args, U.summary(), f"unital_q{args.q}.json")
    return EXIT_OK


def cmd_pedal(args) -> int:
    F = _tower(args.q)
    U = Unital(_params(F, args))
    P = U.plane
    sel = analysis.parse_base_selector(args.base)
    bases = analysis.pick_bases(U, sel, args.seed or 0)
    reports = []
    for b in bases:
        ps = pedal_brute(U, int(b))
        rep = ps.to_json(P)
        if sel[0] == "canonical":
            names = CANONICAL_ODD if F.odd else CANONICAL_EVEN
            rep["name"] = next(n for n in names if canonical_base(U, n) == int(b))
        reports.append(rep)
    _emit(args, {"q": F.q, **U.params.key(), "pedals": reports}, f"pedal_q{args.q}.json")
    return EXIT_OK


def _suite_kwargs(F, args) -> dict:
    kw = {"seed": args.seed or 0, "jobs": args.jobs, "fail_fast": args.fail_fast}
    if args.alpha is not None or args.beta is not None:
        p = _params(F, args)
        kw["params"] = (p.alpha, p.beta)
    else:
        kw["params"] = args.params
    if args.base is not None:
        kw["bases"] = args.base
    return kw


def run_one(suite: str, q: int, args) -> analysis.VerificationReport:
    F = _tower(q)
    kw = _suite_kwargs(F, args)
    try:
        rep = analysis.run_suite(suite, q, **kw)
    except analysis.SuiteError as e:
        raise BadQ(str(e)) from e
    out = _outdir(args)
    _write(out / f"{suite}_q{q}.json", rep.to_json())
    if not args.no_csv:
        _write(out / f"{suite}_q{q}.csv", rep.to_csv())
    line = {"suite": suite, "q": q, "verdict": rep.verdict,
            "counterexamples": rep.summary.get("counterexample_total", len(rep.counterexamples))}
    sys.stdout.write(json.dumps(line, sort_keys=True) + "\n")
    return rep


def cmd_verify(args) -> int:
    rep = run_one(args.suite, args.q, args)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_sweep(args) -> int:
    ok = True
    for q in args.q:
        for suite in args.suite:
            rep = run_one(suite, q, args)
            ok = ok and rep.passed
            if not ok and args.fail_fast:
                return EXIT_FAIL
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bmfeet", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, q_many=False):
        if q_many:
            p.add_argument("--q", type=int, nargs="+", required=True)
        else:
            p.add_argument("--q", type=int, required=True)
        p.add_argument("--out", help=f"output directory (default ${OUTDIR_ENV} or ./reports)")

    t = sub.add_parser("tower", help="print the field tower presentation")
    common(t)
    t.set_defaults(func=cmd_tower)

    u = sub.add_parser("unital", help="build a unital and print its summary")
    common(u)
    u.add_argument("--alpha", required=True)
    u.add_argument("--beta", required=True)
    u.set_defaults(func=cmd_unital)

    p = sub.add_parser("pedal", help="pedal sets of chosen base points")
    common(p)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--base", default="canonical", help="canonical | all | sample:N")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_pedal)

    for name, many in (("verify", False), ("sweep", True)):
        v = sub.add_parser(name, help="run verification suites" if many else "run one verification suite")
        common(v, q_many=many)
        if many:
            v.add_argument("--suite", nargs="+", choices=analysis.SUITES, required=True)
        else:
            v.add_argument("--suite", choices=analysis.SUITES, required=True)
        v.add_argument("--params", default="all-valid", help="all-valid | sample:N")
        v.add_argument("--alpha")
        v.add_argument("--beta")
        v.add_argument("--base", help="all | canonical | sample:N (suite default otherwise)")
        v.add_argument("--seed", type=int)
        v.add_argument("--jobs", type=int, default=1)
        v.add_argument("--fail-fast", action="store_true")
        v.add_argument("--no-csv", action="store_true")
        v.set_defaults(func=cmd_verify if not many else cmd_sweep)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        _needs_seed(args, getattr(args, "params", None), getattr(args, "base", None))
    except argparse.ArgumentTypeError as e:
        ap.error(str(e))
    if getattr(args, "jobs", 1) < 1:
        ap.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except BadQ as e:
        print(json.dumps({"error": "bad q", "detail": str(e)}), file=sys.stderr)
        return EXIT_BAD_Q
    except (BadParams, PedalError, PlaneError) as e:
        print(json.dumps({"error": "bad params", "detail": str(e)}), file=sys.stderr)
        return EXIT_BAD_PARAMS
    except OSError as e:
        print(json.dumps({"error": "io", "detail": str(e)}), file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
