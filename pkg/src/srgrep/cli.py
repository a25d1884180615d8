"""Command-line front end.

Exit codes: 0 verified / feasible, 1 definitive negative (refuted,
NONEXISTENT, INFEASIBLE), 2 input or resource error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import codes, graphs, params, replay, roots
from .errors import InputError, ResourceLimit, SrgError
from .exactlin import RatMatrix, psd_rank
from .serialize import dumps, fmt

OK, NEGATIVE, ERROR = 0, 1, 2


class _Out:
    def __init__(self, path: str | None):
        self.path = path
        self.chunks: list[str] = []

    def write(self, text: str) -> None:
        self.chunks.append(text if text.endswith("\n") else text + "\n")

    def flush(self) -> None:
        data = "".join(self.chunks)
        if self.path:
            Path(self.path).write_text(data, encoding="utf-8")
        else:
            sys.stdout.write(data)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


# -- params -----------------------------------------------------------------


def _cmd_params(args, out: _Out) -> int:
    p = params.SrgParams(args.v, args.k, args.lam, args.mu)
    try:
        params.validate_params(*p.as_tuple())
    except params.IdentityViolation:
        pass  # reported below as a failed screen
    report = params.feasibility_report(p)
    payload: dict = {"params": p.as_tuple(), "report": report}
    if report.identity_ok:
        try:
            sp = params.spectrum(p)
        except params.NonIntegralMultiplicity:
            sp = None
        payload["spectrum"] = sp
        if sp is not None and sp.integral:
            payload["cosine_sequences"] = {
                str(th): params.cosine_sequence(p, th)
                for th in (int(sp.theta_plus), int(sp.theta_minus))
            }
    if args.json:
        out.write(dumps(payload))
    else:
        out.write(str(p))
        sp = payload.get("spectrum")
        if sp is not None and sp.integral:
            eig = sp.eigenvalues()
            out.write(
                "eigenvalues: " + ", ".join(f"{th} (multiplicity {m})" for th, m in eig.items())
            )
            for th, cs in payload["cosine_sequences"].items():
                out.write(f"cosine sequence for {th}: {fmt(tuple(cs))}")
        elif sp is not None:
            out.write(
                f"conference case: discriminant {sp.discriminant}, "
                f"multiplicities {sp.mult_plus} and {sp.mult_minus}; eigenvalues irrational"
            )
        for name, vals in report.details:
            out.write(f"  {name}: " + ", ".join(f"{k}={fmt(v)}" for k, v in vals.items()))
        out.write("feasible" if report.feasible else "infeasible")
    return OK if report.feasible else NEGATIVE


# -- graphs -----------------------------------------------------------------


def _cmd_check_graph(args, out: _Out) -> int:
    g = graphs.load_graph(_read(args.file))
    try:
        p = graphs.verify_srg(g)
    except (graphs.NotRegular, graphs.NotStronglyRegular) as exc:
        out.write(dumps({"srg": False, "reason": str(exc)}) if args.json else f"not strongly regular: {exc}")
        return NEGATIVE
    sp = params.spectrum(p)
    if args.theta is not None:
        thetas = [args.theta]
    elif sp.integral:
        thetas = [int(sp.theta_plus), int(sp.theta_minus)]
    else:
        thetas = []
    checks = []
    for th in thetas:
        gram = graphs.representation_gram(g, th)
        is_psd, rk = psd_rank(gram)
        expected = sp.multiplicity(th)
        checks.append({"theta": th, "psd": is_psd, "rank": rk, "expected_rank": expected,
                       "ok": is_psd and rk == expected})
    ok = all(c["ok"] for c in checks)
    if args.json:
        out.write(dumps({"srg": True, "params": p.as_tuple(), "representations": checks}))
    else:
        out.write(f"strongly regular: {p}")
        if not thetas:
            out.write("eigenvalues are irrational; no exact representation built")
        for c in checks:
            out.write(
                f"theta={c['theta']}: PSD={c['psd']} rank={c['rank']} "
                f"(expected {c['expected_rank']}) {'ok' if c['ok'] else 'MISMATCH'}"
            )
    return OK if ok else NEGATIVE


def _cmd_local(args, out: _Out) -> int:
    g = graphs.load_graph(_read(args.file))
    if not 0 <= args.vertex < g.n:
        raise InputError(f"vertex {args.vertex} out of range")
    try:
        dec = graphs.neighborhood_cycles(g, args.vertex)
    except graphs.NotDegreeTwo as exc:
        out.write(dumps({"error": str(exc)}) if args.json else str(exc))
        return NEGATIVE
    payload: dict = {"center": dec.center, "cycles": dec.cycles}
    if args.witness is not None:
        if not 0 <= args.witness < g.n:
            raise InputError(f"vertex {args.witness} out of range")
        marks = graphs.mu_marks(g, args.vertex, args.witness)
        payload["witness"] = args.witness
        payload["marks"] = [{"t": m.t, "marks": m.marks} for m in marks]
    if args.json:
        out.write(dumps(payload))
    else:
        out.write(f"neighbourhood of {dec.center}: {len(dec.cycles)} cycle(s)")
        for c in dec.cycles:
            out.write(f"  C{len(c)}: " + " ".join(map(str, c)))
        for m in payload.get("marks", []):
            out.write(f"  marks on C{m['t']}: {list(m['marks'])}")
    return OK


# -- replay, roots, codes ---------------------------------------------------


def _budget(cli_value: int | None) -> int:
    if cli_value is not None:
        return cli_value
    env = os.environ.get("SRG_WITNESS_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"SRG_WITNESS_BUDGET must be an integer, got {env!r}") from None
    return codes.DEFAULT_BUDGET


def _cmd_replay(args, out: _Out) -> int:
    only = [args.stage] if args.stage else None
    rep = replay.replay_all(alphabet=args.alphabet, budget=_budget(args.budget), only=only)
    if args.json:
        out.write(dumps(rep))
    else:
        for st in rep.stages:
            out.write(f"{st.name:<24} {st.verdict}")
        out.write(f"final verdict: {rep.final_verdict}")
    if rep.final_verdict == replay.NONEXISTENT:
        return NEGATIVE
    if only and all(st.verdict != replay.FAILED for st in rep.stages):
        return OK
    return ERROR


def _parse_rat(x) -> Fraction:
    if isinstance(x, bool):
        raise InputError("booleans are not matrix entries")
    if isinstance(x, (int, str)):
        try:
            return Fraction(x)
        except ValueError:
            raise InputError(f"bad rational {x!r}") from None
    if isinstance(x, dict) and {"num", "den"} <= set(x):
        return Fraction(int(x["num"]), int(x["den"]))
    raise InputError(f"bad matrix entry {x!r}")


def _cmd_roots(args, out: _Out) -> int:
    try:
        obj = json.loads(_read(args.gram))
    except ValueError as exc:
        raise InputError(f"bad JSON: {exc}") from None
    rows = obj["gram"] if isinstance(obj, dict) else obj
    lat = roots.LatticeGram.of(RatMatrix([[_parse_rat(x) for x in row] for row in rows]))
    if not lat.gram.is_symmetric():
        raise InputError("Gram matrix must be square and symmetric")
    rs = roots.short_vectors(lat, _parse_rat(args.norm))
    cls = roots.classify(rs, lat) if Fraction(args.norm) == 2 else None
    if args.json:
        out.write(dumps({"count": len(rs), "roots": rs.roots,
                         "components": cls.as_tuples() if cls else None}))
    else:
        out.write(f"{len(rs)} vectors of norm {args.norm}")
        if cls:
            out.write("root system: " + (" + ".join(map(str, cls.components)) or "empty"))
    return OK


def _cmd_codes(args, out: _Out) -> int:
    res = codes.agreement_code_search(
        args.n, args.length, args.q, args.agreement, budget=_budget(args.budget)
    )
    if args.json:
        out.write(dumps(res))
    else:
        out.write(f"{res.verdict} after {res.nodes} nodes")
        for w in res.witness:
            out.write("  " + "".join(map(str, w)) if args.q <= 10 else "  " + " ".join(map(str, w)))
    return OK if res.feasible else NEGATIVE


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="srgrep", description=__doc__.splitlines()[0])
    ap.add_argument("-o", "--output", help="write output to this file instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="spectrum, cosine sequences and feasibility screens")
    for name in ("v", "k", "lam", "mu"):
        p.add_argument(name, type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_params)

    p = sub.add_parser("check-graph", help="verify an SRG and its unit-vector representations")
    p.add_argument("file")
    p.add_argument("--theta", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check_graph)

    p = sub.add_parser("local", help="neighbourhood cycles and mu-marks around a vertex")
    p.add_argument("file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--witness", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_local)

    p = sub.add_parser("replay76", help="replay the srg(76,21,2,7) non-existence certificate")
    p.add_argument("--stage", choices=replay.STAGE_NAMES)
    p.add_argument("--alphabet", type=int, default=3, help=argparse.SUPPRESS)
    p.add_argument("--budget", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("roots", help="enumerate norm-2 lattice vectors and classify them")
    p.add_argument("--gram", required=True, help="JSON file holding a Gram matrix")
    p.add_argument("--norm", default="2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("codes", help="exhaustive equal-agreement code search")
    p.add_argument("n", type=int)
    p.add_argument("length", type=int)
    p.add_argument("q", type=int)
    p.add_argument("agreement", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_codes)
    return ap


def run(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else OK
    out = _Out(args.output)
    try:
        code = args.func(args, out)
    except (InputError, ResourceLimit, SrgError, KeyError) as exc:
        print(f"srgrep: error: {exc}", file=sys.stderr)
        return ERROR
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
