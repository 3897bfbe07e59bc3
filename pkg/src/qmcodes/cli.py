"""Command-line front end.

Exit status: 0 when the analysis ran (whatever the verdicts), 2 for invalid
input or flags, 3 when a size cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import automata as fa
from . import codes
from . import conditions as cond
from . import embedding as emb
from .automata import DEFAULT_STATE_CAP, ResourceError
from .regex import RegexError
from .relations import FACTOR_K_CAP, RelationSpec
from .words import Alphabet, ThetaSpec, WordError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3


class InputError(ValueError):
    pass


def _add_common(p: argparse.ArgumentParser, relation: bool = True) -> None:
    p.add_argument("--alphabet", help="symbols in order, e.g. 'ab' (default: symbols used, sorted)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--words", help="comma-separated finite list; '_' is the empty word")
    src.add_argument("--regex", help="regular expression; '-' reads it from stdin")
    if relation:
        p.add_argument("--metric", choices=["prefix", "suffix", "factor", "theta"], default="prefix")
        p.add_argument("-k", type=int, default=1, help="distance tolerance (theta: must be 1)")
        p.add_argument("--perm", help="theta letter map, e.g. 'a:b,b:a'")
        p.add_argument("--kind", choices=["auto", "anti"], default="auto", help="theta kind")
        p.add_argument("--max-k", type=int, default=FACTOR_K_CAP, help="largest factor tolerance allowed")
    p.add_argument("--cap", type=int, default=DEFAULT_STATE_CAP, help="subset-construction state cap")
    p.add_argument("--json", action="store_true", help="emit a JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmcodes", description="Error-detection conditions for regular codes.")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="decide c1-c4 for a relation")
    _add_common(check)
    check.add_argument("--cond", default="c1,c2,c3,c4", help="comma-separated subset of c1,c2,c3,c4")
    _add_common(sub.add_parser("embed", help="embed into a complete independent code"))
    _add_common(sub.add_parser("measure", help="uniform Bernoulli measure and completeness"), relation=False)
    trace = sub.add_parser("sp-trace", help="quotient sets of the unique-decipherability test")
    _add_common(trace, relation=False)
    trace.add_argument("--show-len", type=int, default=6, help="list words up to this length per set")
    return parser


def _split_words(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _parse_perm(text: str) -> dict[str, str]:
    pairs = {}
    for item in _split_words(text):
        src, sep, dst = item.partition(":")
        if not sep or len(src) != 1 or len(dst) != 1:
            raise InputError(f"--perm: malformed pair {item!r} (expected 'x:y')")
        if src in pairs:
            raise InputError(f"--perm: symbol {src!r} mapped twice")
        pairs[src] = dst
    return pairs


def _alphabet(args, words: list[str] | None, expr: str | None, perm: dict[str, str] | None) -> Alphabet:
    if args.alphabet:
        return Alphabet(args.alphabet)
    used = set()
    for w in words or ():
        used.update(c for c in w if c != "_")
    if expr is not None:
        used.update(c for c in expr if not c.isspace() and c not in "()+*_")
    if perm:
        used.update(perm)
        used.update(perm.values())
    if len(used) < 2:
        used.update("ab")
    return Alphabet(sorted(used))


def load_input(args):
    """Return ``(alphabet, nfa, input_text, perm)``."""
    perm = _parse_perm(args.perm) if getattr(args, "perm", None) else None
    if args.words is not None:
        words = _split_words(args.words)
        al = _alphabet(args, words, None, perm)
        try:
            parsed = [al.parse(w) for w in words]
        except WordError as e:
            raise InputError(f"--words: {e}") from None
        return al, fa.from_words(al, parsed), args.words, perm
    expr = sys.stdin.read().strip() if args.regex == "-" else args.regex
    al = _alphabet(args, None, expr, perm)
    try:
        nfa = fa.compile_regex(expr, al)
    except RegexError as e:
        raise InputError(f"--regex: {e}") from None
    return al, nfa, expr, perm


def relation_spec(args, al: Alphabet, perm) -> RelationSpec:
    if args.k < 1:
        raise InputError("-k: must be at least 1")
    if args.metric == "theta":
        if perm is None:
            raise InputError("--perm: required for --metric theta")
        if args.k != 1:
            raise InputError("-k: the theta metric only supports k=1")
        try:
            theta = ThetaSpec.from_pairs(al, perm, args.kind)
        except WordError as e:
            raise InputError(f"--perm: {e}") from None
        return RelationSpec("theta", 1, theta)
    return RelationSpec(args.metric, args.k)


def _cmd_check(args, out) -> int:
    al, x, text, perm = load_input(args)
    spec = relation_spec(args, al, perm)
    wanted = tuple(_split_words(args.cond))
    bad = [c for c in wanted if c not in cond.CONDITIONS]
    if bad:
        raise InputError(f"--cond: unknown condition(s) {', '.join(bad)}")
    report = cond.analyze(x, spec, wanted, args.cap, args.max_k, input_text=text)
    if args.json:
        print(report.to_json(), file=out)
        return EXIT_OK
    d = report.to_dict()
    print(f"relation: {spec.family} k={spec.k}", file=out)
    print(f"code: {d['is_code']}  measure: {d['measure']}  complete: {d['complete']}", file=out)
    for name, v in d["conditions"].items():
        line = f"{name}: {v['holds']}"
        if "witness" in v:
            w = v["witness"]
            line += f"  (x={w['x']}, y={w['y']}, d={w['distance']})"
        print(line, file=out)
    return EXIT_OK


def _cmd_embed(args, out) -> int:
    al, x, _, perm = load_input(args)
    spec = relation_spec(args, al, perm)
    try:
        result = emb.embed(x, spec, args.cap, args.max_k)
    except emb.EmbeddingError as e:
        raise InputError(f"embed refused ({e.kind}): {e}") from None
    result.verify(args.cap, args.max_k)
    if args.json:
        print(result.to_json(args.cap), file=out)
    else:
        d = result.to_dict(args.cap)
        print(f"z0: {d['z0']}  z: {d['z']}", file=out)
        print(f"Z = {d['regex']}", file=out)
        print("checks: " + ", ".join(f"{k}={v}" for k, v in d["checks"].items()), file=out)
    return EXIT_OK


def _cmd_measure(args, out) -> int:
    al, x, text, _ = load_input(args)
    d = {
        "input": text,
        "measure": codes.format_measure(codes.measure(x, args.cap)),
        "partial_measure_32": codes.format_measure(codes.partial_measure(x, 32, args.cap)),
        "complete": codes.is_complete(x, args.cap),
    }
    if args.json:
        print(json.dumps(d, sort_keys=True, indent=2), file=out)
    else:
        print(f"measure: {d['measure']}  complete: {d['complete']}", file=out)
    return EXIT_OK


def _cmd_trace(args, out) -> int:
    al, x, text, _ = load_input(args)
    try:
        chain = codes.sardinas_patterson(x, args.cap)
    except WordError as e:
        raise InputError(str(e)) from None
    sets = chain.describe(args.show_len)
    if args.json:
        d = {"input": text, "verdict": chain.verdict, "reason": chain.reason, "sets": sets}
        print(json.dumps(d, sort_keys=True, indent=2), file=out)
    else:
        for i, s in enumerate(sets):
            print(f"U{i} = {{{', '.join(s)}}}", file=out)
        print(f"{chain.verdict} ({chain.reason})", file=out)
    return EXIT_OK


COMMANDS = {"check": _cmd_check, "embed": _cmd_embed, "measure": _cmd_measure, "sp-trace": _cmd_trace}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except ResourceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, WordError, cond.NotACodeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
