"""Command line interface.

Exit codes: 0 success, 1 no equilibrium / property refuted, 2 undetermined,
64 usage error, 65 unreadable or malformed game file.  Players and actions
are numbered from 1 in all output.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bench import PerturbSpec, run_smoothed_bench, write_csv
from .engine import (
    SNE,
    KStrongQuery,
    UndeterminedOutcome,
    dominated_outcome_witness,
    find_sne,
    verify_k_strong,
)
from .game import BimatrixGame, GameError, as_rational
from .gamefile import ParseError, load_game, parse_profile
from .geometry import classify_line, condition1, condition2, is_strictly_competitive
from .nash import enumerate_pure_nash, enumerate_support_equilibria
from .pareto import Dominated, Efficient, SearchParams

EX_OK, EX_NONE, EX_UNDETERMINED, EX_USAGE, EX_DATAERR = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (GameError, ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _sizes_arg(text: str) -> list[tuple[int, int]]:
    try:
        if ":" in text:
            lo, hi = (int(v) for v in text.split(":"))
            out = [(m, m) for m in range(lo, hi + 1)]
        else:
            out = []
            for part in text.split(","):
                m1, _, m2 = part.partition("x")
                out.append((int(m1), int(m2 or m1)))
    except ValueError:
        out = []
    if not out or any(m < 1 for size in out for m in size):
        raise argparse.ArgumentTypeError(f"bad sizes {text!r}; use 2:8 or 2x3,4x4")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="strongnash", description="Exact strong Nash equilibrium tools.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="find a (super) strong Nash equilibrium of a bimatrix game")
    s.add_argument("file")
    s.add_argument("--mode", choices=("strong", "super"), default="strong")
    s.add_argument("--grid", type=_rational_arg, default=Fraction(1, 32), help="grid step 1/D")
    s.add_argument("--max-refine", type=int, default=3)
    s.add_argument("--json", action="store_true")

    c = sub.add_parser("check", help="verify that a profile is a k-strong Nash equilibrium")
    c.add_argument("file")
    c.add_argument("--profile", required=True, help='e.g. "1/2,1/2;1/3,2/3"')
    c.add_argument("--k", type=int, default=None, help="largest coalition size (default: all players)")
    c.add_argument("--mode", choices=("strong", "super"), default="strong")
    c.add_argument("--grid", type=_rational_arg, default=Fraction(1, 32))
    c.add_argument("--max-refine", type=int, default=3)
    c.add_argument("--json", action="store_true")

    k = sub.add_parser("classify", help="outcome line class and geometric conditions")
    k.add_argument("file")
    k.add_argument("--json", action="store_true")

    n = sub.add_parser("nash", help="pure Nash equilibria, optionally one equilibrium per support")
    n.add_argument("file")
    n.add_argument("--enumerate-supports", action="store_true")
    n.add_argument("--json", action="store_true")

    b = sub.add_parser("bench", help="runtime statistics on perturbed random games")
    b.add_argument("--sizes", type=_sizes_arg, default=_sizes_arg("2:8"))
    b.add_argument("--trials", type=int, default=200)
    b.add_argument("--sigma", type=_rational_arg, default=Fraction(1, 10))
    b.add_argument("--grain", type=int, default=1_000_000)
    b.add_argument("--seed", type=int, default=42)
    b.add_argument("--base", default="random", help="random, zero, or a game file")
    b.add_argument("--out", default=None, help="CSV path (default: stdout)")
    b.add_argument("--no-timing", action="store_true", help="zero the timing columns")
    return p


# ---------------------------------------------------------------- rendering

def _q(x) -> str:
    return str(Fraction(x))


def _profile_json(profile) -> list[list[str]]:
    return [[_q(v) for v in x] for x in profile.strategies]


def _coalition_key(members) -> str:
    return "{" + ",".join(str(i + 1) for i in members) + "}"


def _verdict_json(v) -> dict:
    if isinstance(v, Efficient):
        return {"verdict": "Efficient", "certificate": v.certificate_kind}
    if isinstance(v, Dominated):
        return {"verdict": "Dominated", "witness": _profile_json(v.witness),
                "witness_values": [_q(x) for x in v.witness_values]}
    return {"verdict": "Undetermined", "best_margin": _q(v.best_margin),
            "resolution_reached": _q(v.resolution_reached)}


def _verdict_text(v) -> str:
    if isinstance(v, Efficient):
        return f"Efficient({v.certificate_kind})"
    if isinstance(v, Dominated):
        return f"Dominated(by {v.witness} with values {', '.join(_q(x) for x in v.witness_values)})"
    return f"Undetermined(margin {v.best_margin}, grid {v.resolution_reached})"


def _load(path: str):
    try:
        return load_game(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _params(args) -> SearchParams:
    try:
        return SearchParams(resolution=args.grid, max_refinements=args.max_refine)
    except GameError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, data: dict, lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(lines))


# ---------------------------------------------------------------- commands

def cmd_solve(args) -> int:
    game = _load(args.file)
    if not isinstance(game, BimatrixGame):
        raise UsageError("solve handles two-player games; use check for n >= 3")
    report = find_sne(game, args.mode, _params(args))
    d = report.diagnostics
    diag = {
        "pure_profiles_scanned": d.pure_profiles_scanned,
        "pure_nash_found": d.pure_nash_found,
        "condition1_hit": d.condition1_hit,
        "condition1_witness": None if d.condition1_witness is None else {
            "rows": [i + 1 for i in d.condition1_witness.rows],
            "cols": [j + 1 for j in d.condition1_witness.cols]},
        "condition2_hit": d.condition2_hit,
        "condition2_witness": None if d.condition2_witness is None else {
            "kind": d.condition2_witness.kind, "line": d.condition2_witness.line + 1,
            "pair": [a + 1 for a in d.condition2_witness.pair]},
        "mixed_branch_run": d.mixed_branch_run,
        "supports_enumerated": d.supports_enumerated,
        "theorem1_rejections": d.theorem1_rejections,
        "elapsed_s": round(d.elapsed_s, 6),
    }
    data = {"outcome": report.tag, "mode": args.mode, "diagnostics": diag}
    lines = [f"{report.tag} ({args.mode})"]
    out = report.outcome
    if isinstance(out, SNE):
        data["witness"] = _profile_json(out.witness.profile)
        data["values"] = [_q(v) for v in out.witness.values]
        data["coalitions"] = {_coalition_key(c): _verdict_json(v) for c, v in out.efficiency.items()}
        lines.append(f"  profile: {out.witness.profile}")
        lines.append(f"  values:  {', '.join(_q(v) for v in out.witness.values)}")
        lines += [f"  {_coalition_key(c)}: {_verdict_text(v)}" for c, v in out.efficiency.items()]
    elif isinstance(out, UndeterminedOutcome):
        data["candidates"] = [
            {"profile": _profile_json(w.profile), "values": [_q(v) for v in w.values], **_verdict_json(v)}
            for w, v in out.candidates
        ]
        lines += [f"  candidate {w.profile}: {_verdict_text(v)}" for w, v in out.candidates]
    lines.append("  " + ", ".join(f"{k}={v}" for k, v in diag.items() if not k.endswith("witness")))
    _emit(args, data, lines)
    return {"SNE": EX_OK, "NonExistence": EX_NONE}.get(report.tag, EX_UNDETERMINED)


def cmd_check(args) -> int:
    game = _load(args.file)
    try:
        profile = parse_profile(args.profile)
        query = KStrongQuery(game, profile, args.k or game.n_players, args.mode, _params(args))
    except GameError as exc:
        raise UsageError(str(exc)) from None
    res = verify_k_strong(query)
    label = f"{query.k}-{'super-' if args.mode == 'super' else ''}strong"
    dom = dominated_outcome_witness(game, profile)
    data = {
        "overall": res.overall, "property": label, "is_nash": res.is_nash,
        "values": [_q(v) for v in res.values],
        "coalitions": {_coalition_key(c): _verdict_json(v) for c, v in res.verdicts.items()},
        "dominated_outcome": None if dom is None else {
            "cell": [a + 1 for a in dom[0]], "payoff": [_q(v) for v in dom[1]]},
    }
    verdict_line = {
        "Efficient": f"{label}: yes", "NotNash": "not a Nash equilibrium",
        "Dominated": f"{label}: no", "Undetermined": f"{label}: undetermined",
    }[res.overall]
    lines = [f"{res.overall} ({verdict_line})", f"  values: {', '.join(_q(v) for v in res.values)}"]
    lines += [f"  {_coalition_key(c)}: {_verdict_text(v)}" for c, v in res.verdicts.items()]
    if dom is not None:
        lines.append(f"  dominated outcome: cell {tuple(a + 1 for a in dom[0])} "
                     f"pays {', '.join(_q(v) for v in dom[1])}")
    _emit(args, data, lines)
    return {"Efficient": EX_OK, "Undetermined": EX_UNDETERMINED}.get(res.overall, EX_NONE)


def cmd_classify(args) -> int:
    game = _load(args.file)
    if not isinstance(game, BimatrixGame):
        raise UsageError("classify handles two-player games only")
    line = classify_line(game)
    c1, c2 = condition1(game), condition2(game)
    competitive = is_strictly_competitive(game)
    data = {
        "line_class": str(line), "kind": line.kind,
        "slope": None if line.slope is None else _q(line.slope),
        "through_origin": line.through_origin,
        "strictly_competitive": competitive,
        "condition1": None if c1 is None else {"rows": [i + 1 for i in c1.rows], "cols": [j + 1 for j in c1.cols]},
        "condition2": None if c2 is None else {"kind": c2.kind, "line": c2.line + 1, "pair": [a + 1 for a in c2.pair]},
    }
    lines = [
        f"line class: {line}",
        f"strictly competitive: {str(competitive).lower()}",
        "condition 1: " + ("no" if c1 is None else f"rows {c1.rows[0] + 1},{c1.rows[1] + 1} x cols {c1.cols[0] + 1},{c1.cols[1] + 1}"),
        "condition 2: " + ("no" if c2 is None else f"{c2.kind}, line {c2.line + 1}, pair {c2.pair[0] + 1},{c2.pair[1] + 1}"),
    ]
    _emit(args, data, lines)
    return EX_OK


def cmd_nash(args) -> int:
    game = _load(args.file)
    pure = enumerate_pure_nash(game)
    data = {"pure": [[a + 1 for a in cell] for cell in pure]}
    lines = [f"pure Nash equilibria: {len(pure)}"]
    lines += [f"  {tuple(a + 1 for a in cell)} pays {', '.join(_q(v) for v in game.outcome(cell))}" for cell in pure]
    if args.enumerate_supports:
        if not isinstance(game, BimatrixGame):
            raise UsageError("support enumeration handles two-player games only")
        eqs = enumerate_support_equilibria(game, include_pure=False)
        data["supports"] = [{"profile": _profile_json(w.profile), "values": [_q(v) for v in w.values]} for w in eqs]
        lines.append(f"mixed support equilibria: {len(eqs)}")
        lines += [f"  {w.profile} pays {', '.join(_q(v) for v in w.values)}" for w in eqs]
    _emit(args, data, lines)
    return EX_OK


def cmd_bench(args) -> int:
    if args.trials < 1 or args.grain < 1 or args.sigma < 0:
        raise UsageError("trials and grain must be >= 1, sigma >= 0")
    base = args.base if args.base in ("random", "zero") else _load(args.base)
    sizes = args.sizes
    if not isinstance(base, str):
        if not isinstance(base, BimatrixGame):
            raise UsageError("bench needs a two-player base game")
        sizes = [base.dims]
    spec = PerturbSpec(args.sigma, args.grain, args.seed)
    stats = run_smoothed_bench(sizes, args.trials, spec, base)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(stats, fh, timing=not args.no_timing)
    else:
        write_csv(stats, sys.stdout, timing=not args.no_timing)
    for s in stats:
        for trial, _ in s.anomalies:
            print(f"anomaly: size {s.m1}x{s.m2} trial {trial} triggered a geometric gate", file=sys.stderr)
    return EX_OK


COMMANDS = {"solve": cmd_solve, "check": cmd_check, "classify": cmd_classify, "nash": cmd_nash, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"strongnash: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except ParseError as exc:
        print(f"strongnash: parse error: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":   # pragma: no cover
    sys.exit(main())
