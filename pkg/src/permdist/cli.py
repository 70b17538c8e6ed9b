"""
Command-line interface: ``python3 -m permdist <command> ...``.

Exit status is 0 on success, 1 when the input is well formed but mathematically
rejected (not reduced, not equivalent, a failed validation ...), and 2 on usage
errors, including malformed words.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import experiments as ex
from .derivations import DEFAULT_NODE_LIMIT, Derivation, certify, dist_bfs
from .errors import PermDistError
from .families import flip_pair, quartic_pair, validate_ba, validate_dc, validate_quartic
from .invariants import format_name, lower_bound_split
from .normalform import derive, nf, nf_budget
from .render import FORMATS, render
from .reversing import DEFAULT_BUDGET, TileType, certify_digon_free, compact, reverse_pair, reversing_diagram
from .words import Word, equivalent, evaluate

EXPERIMENT_HELP = """\
CSV columns:
  quartic        ell, engine_count, formula_value, typeI, typeII, typeIII, digon_free
  equality       n, mode, pairs, equal, counterexamples
  growth         n, ell, samples, max_compl, mean_compl, max_over_n2l
  stabilization  ell, n, method, pairs, max_compl
"""


class UsageError(Exception):
    pass


def _word(text: str, n: int, flag: str = "word") -> Word:
    try:
        return Word.parse(text, n)
    except PermDistError:
        raise
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _pair(args) -> tuple[Word, Word]:
    return _word(args.u, args.n, "u"), _word(args.v, args.n, "v")


def _emit(args, text: str, payload: dict | list | None = None) -> None:
    out = json.dumps(payload, ensure_ascii=False) + "\n" if args.json and payload is not None else text
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _counts(counter) -> dict[str, int]:
    return {t.value: counter[t] for t in TileType if counter[t]}


# -- commands -----------------------------------------------------------------------


def cmd_nf(args) -> None:
    w = _word(args.word, args.n)
    out = nf(w)
    _emit(args, f"{out}\n", {"word": str(w), "nf": str(out)})


def cmd_equiv(args) -> None:
    u, v = _pair(args)
    same = equivalent(u, v)
    _emit(args, f"{'equivalent' if same else 'not equivalent'}\n", {"equivalent": same, "perm": list(evaluate(u).images)})


def cmd_lower(args) -> None:
    u, v = _pair(args)
    t1, t2 = lower_bound_split(u, v)
    _emit(args, f"lower={t1 + t2} (i3={t1} i22={t2})\n", {"lower": t1 + t2, "i3": t1, "i22": t2})


def cmd_dist(args) -> None:
    u, v = _pair(args)
    t1, t2 = lower_bound_split(u, v)
    bfs = dist_bfs(u, v, args.node_limit)
    upper = nf_budget(u.n, len(u))
    derived = len(derive(u, v))
    text = f"lower={t1 + t2} bfs={bfs} upper≤{upper} derived={derived}\n"
    _emit(args, text, {"lower": t1 + t2, "i3": t1, "i22": t2, "bfs": bfs, "upper": upper, "derived": derived})


def cmd_derive(args) -> None:
    u, v = _pair(args)
    d = derive(u, v)
    lines = [str(d.start)]
    for step, w in zip(d.steps, list(d.words())[1:]):
        lines.append(f"  {step.kind} at {step.pos + 1} ({step.relation.direction}) -> {w}")
    _emit(args, "\n".join(lines) + "\n", d.to_json())


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def cmd_certify(args) -> None:
    try:
        data = _read_json(args.file)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"file: {exc}") from None
    d = Derivation.from_json(data, args.n)
    cert = certify(d)
    text = f"{cert.verdict} ({len(d)} steps)\n"
    if cert.duplicates:
        text += "duplicate names: " + " ".join(format_name(x) for x in cert.duplicates) + "\n"
    _emit(args, text, cert.to_json())


def cmd_reverse(args) -> None:
    u, v = _pair(args)
    if args.format:
        g = reversing_diagram(u, v, args.budget)
        _emit_raw(args, render(g, args.format))
        return
    r = reverse_pair(u, v, args.strategy, args.budget)
    payload = {
        "terminal": str(r.terminal),
        "u_prime": str(r.u_prime),
        "v_prime": str(r.v_prime),
        "counts": _counts(r.counts),
        "steps": [{"pos": s.position + 1, "tile": s.tile.value, "i": s.i, "j": s.j} for s in r.steps],
    }
    _emit(args, f"{r.terminal}\nu'={r.u_prime} v'={r.v_prime}\n{r.summary()}\n", payload)


def _emit_raw(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_compl(args) -> None:
    u, v = _pair(args)
    r = reverse_pair(u, v, budget=args.budget)
    _emit(args, f"{r.summary()}\n", {"compl": r.nontrivial, "counts": _counts(r.counts)})


def cmd_compact(args) -> None:
    u, v = _pair(args)
    g = reversing_diagram(u, v, args.budget)
    c = compact(g)
    if args.format:
        _emit_raw(args, render(c, args.format))
        return
    payload = {"compl": c.nontrivial, "counts": _counts(c.counts)}
    text = f"{c.nontrivial} nontrivial tiles: " + " ".join(f"{k}={n}" for k, n in payload["counts"].items()) + "\n"
    uv, vu = g.boundary_words()
    try:
        cert = certify_digon_free(g)
    except PermDistError as exc:
        text += f"not certifiable: {exc}\n"
        payload["certificate"] = None
    else:
        text += f"{cert.verdict} for {uv} ~ {vu}\n"
        payload["certificate"] = cert.to_json()
    _emit(args, text, payload)


def cmd_export(args) -> None:
    u, v = _pair(args)
    g = reversing_diagram(u, v, args.budget)
    if args.compacted:
        g = compact(g)
    _emit_raw(args, render(g, args.format))


def cmd_family(args) -> None:
    kind = args.kind
    if kind in ("flip", "quartic"):
        if kind == "flip":
            if args.n is None:
                raise UsageError("--n is required for family flip")
            u, v = flip_pair(args.n)
        else:
            if args.l is None:
                raise UsageError("--l is required for family quartic")
            u, v = quartic_pair(args.l)
        _emit(args, f"{u}\n{v}\n", {"n": u.n, "u": str(u), "v": str(v)})
        return
    if kind in ("ba", "dc"):
        if args.p is None:
            raise UsageError(f"--p is required for family {kind}")
        report = (validate_ba if kind == "ba" else validate_dc)(args.p)
    else:
        if args.l is None:
            raise UsageError("--l is required for family quartic-check")
        report = validate_quartic(args.l)
    _emit(args, report.describe() + "\n", {"expected": report.expected, "actual": report.actual, "ok": report.ok})
    if args.strict:
        report.check()


def cmd_experiment(args) -> None:
    kind = args.kind
    if kind == "quartic":
        rows, cols = ex.quartic_rows(args.lmax, args.workers), ex.QUARTIC_COLUMNS
    elif kind == "equality":
        rows, cols = ex.equality_report(args.samples, args.seed), ex.EQUALITY_COLUMNS
    elif kind == "growth":
        ns = range(3, (args.n or 8) + 1)
        rows = ex.growth_rows(ns, range(2, args.lmax + 1), args.samples, args.seed, args.workers)
        cols = ex.GROWTH_COLUMNS
    else:
        rows = ex.stabilization_rows(args.lmax, args.n, args.samples, args.seed, args.workers)
        cols = ex.STABILIZATION_COLUMNS
    _emit_raw(args, ex.csv_text(rows, cols))


# -- parser ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permdist", description="Braid-relation distances between reduced words.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", help="write output to this file instead of stdout")
    strands = argparse.ArgumentParser(add_help=False)
    strands.add_argument("--n", type=_positive, required=True, help="number of strands")
    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("u", help="first word, e.g. 1.2.1 (e for the empty word)")
    pair.add_argument("v", help="second word")
    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="maximum reversing steps")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", parents=[common, strands], help="normal expression of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("equiv", parents=[common, strands, pair], help="do two words give the same permutation")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("lower", parents=[common, strands, pair], help="name-sequence lower bound")
    p.set_defaults(func=cmd_lower)

    p = sub.add_parser("dist", parents=[common, strands, pair], help="lower bound, exact distance, upper bounds")
    p.add_argument("--node-limit", type=_positive, default=DEFAULT_NODE_LIMIT)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("derive", parents=[common, strands, pair], help="derivation through the normal expression")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("certify", parents=[common], help="check a derivation JSON file for repeated names")
    p.add_argument("file", help="derivation JSON, or - for stdin")
    p.add_argument("--n", type=_positive, help="strand count (defaults to the file's)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("reverse", parents=[common, strands, pair, budget], help="reverse ū v")
    p.add_argument("--strategy", choices=("leftmost", "rightmost"), default="leftmost")
    p.add_argument("--format", choices=FORMATS, help="export the reversing diagram instead")
    p.set_defaults(func=cmd_reverse)

    p = sub.add_parser("compl", parents=[common, strands, pair, budget], help="reversing complexity")
    p.set_defaults(func=cmd_compl)

    p = sub.add_parser("compact", parents=[common, strands, pair, budget], help="compact and certify a diagram")
    p.add_argument("--format", choices=FORMATS, help="export the compacted diagram instead")
    p.set_defaults(func=cmd_compact)

    p = sub.add_parser("export", parents=[strands, pair, budget], help="export a reversing diagram")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--out")
    p.add_argument("--compacted", action="store_true")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("family", parents=[common], help="family words and count validators")
    p.add_argument("kind", choices=("flip", "quartic", "ba", "dc", "quartic-check"))
    p.add_argument("--n", type=_positive, help="strand count (flip)")
    p.add_argument("--l", type=_positive, help="length parameter (quartic)")
    p.add_argument("--p", type=_positive, help="block width (ba, dc)")
    p.add_argument("--strict", action="store_true", help="exit 1 when a count disagrees with its closed form")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser(
        "experiment",
        help="measurement runs written as CSV",
        epilog=EXPERIMENT_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("kind", choices=("quartic", "equality", "growth", "stabilization"))
    p.add_argument("--lmax", type=_positive, default=5)
    p.add_argument("--n", type=_positive, help="largest strand count (growth, stabilization)")
    p.add_argument("--samples", type=_positive, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_positive)
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except PermDistError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
