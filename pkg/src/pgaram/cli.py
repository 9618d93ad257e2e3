"""Command line front end.

Exit status: 0 success or equivalent, 1 not equivalent or check failed,
2 usage or parse error, 3 inconclusive (step limit reached).
"""

import argparse
import json
import sys
from pathlib import Path

from .bits import check_bits
from .execution import Case, Outcome, RunLimits, check_computes, polynomial, run
from .extraction import behaviourally_equivalent, extract
from .memory import EMPTY_STATE, MemoryFormatError, format_memory, parse_memory, with_inputs
from .pga import canonicalize, jump_normalize, seq_equal, struct_equal
from .srram import classify_program
from .syntax import ParseError, format_sequence, parse_sequence
from .threads import format_thread, to_dot

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

EMPTY_WORD = ("ε", "e")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _program(path: str):
    try:
        return parse_sequence(_read(path))
    except ParseError as exc:
        raise UsageError(f"{path}:{exc.line}:{exc.column}: {exc.message}") from None


def _word(text: str) -> str:
    text = text.strip()
    if text in EMPTY_WORD:
        return ""
    try:
        return check_bits(text)
    except ValueError:
        raise UsageError(f"not a bit string: {text!r}") from None


def parse_words(text: str) -> list:
    """Comma separated bit strings; ``ε`` or an empty field is the empty word."""
    if not text.strip():
        return []
    return [_word(w) for w in text.split(",")]


def parse_check_spec(text: str):
    """Read a check file into ``(cases, T coefficients, S coefficients)``."""
    cases, T, S = [], None, None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        try:
            if key in ("T", "S") and sep:
                coeffs = [int(c) for c in rest.split(",") if c.strip()]
                if not coeffs:
                    raise ValueError("empty coefficient list")
                if key == "T":
                    T = coeffs
                else:
                    S = coeffs
            elif key == "in" and sep:
                ins, sep2, out = rest.partition(";")
                out_key, sep3, out_val = out.partition(":")
                if not sep2 or not sep3 or out_key.strip() != "out":
                    raise ValueError("expected 'in: w1,w2 ; out: w'")
                out_val = out_val.strip()
                expected = None if out_val == "undefined" else _word(out_val)
                cases.append(Case(tuple(parse_words(ins)), expected))
            else:
                raise ValueError(f"unknown line {line!r}")
        except (ValueError, UsageError) as exc:
            raise UsageError(f"line {lineno}: {exc}") from None
    return cases, T, S


def cmd_asm(args):
    s = _program(args.file)
    cls = classify_program(s)
    print(format_sequence(s))
    print(f"srram={str(cls.is_srram).lower()}")
    print(f"standard={str(cls.is_standard).lower()}")
    print(f"successor={str(cls.is_successor).lower()}")
    return EXIT_OK


def cmd_norm(args):
    s = _program(args.file)
    print(format_sequence(jump_normalize(s) if args.struct else canonicalize(s)))
    return EXIT_OK


def cmd_extract(args):
    t = extract(_program(args.file))
    print(to_dot(t) if args.dot else format_thread(t))
    return EXIT_OK


def cmd_equiv(args):
    s1, s2 = _program(args.file1), _program(args.file2)
    check = {"seq": seq_equal, "struct": struct_equal, "behav": behaviourally_equivalent}[args.mode]
    same = check(s1, s2)
    print("equivalent" if same else "not equivalent")
    return EXIT_OK if same else EXIT_FALSE


def _report_lines(report, measure):
    d = report.as_dict()
    time = report.uniform_steps if measure == "uniform" else report.bit_cost
    d["time"] = time
    d["measure"] = measure
    return d


def cmd_run(args):
    s = _program(args.program)
    base = EMPTY_STATE
    if args.memory:
        try:
            base = parse_memory(_read(args.memory))
        except MemoryFormatError as exc:
            raise UsageError(f"{args.memory}: {exc}") from None
    words = parse_words(args.inputs or "")
    initial = with_inputs(words, base)
    memory, report, trace = run(s, initial, RunLimits(args.max_steps), len(words), args.trace)
    fields = _report_lines(report, args.measure)
    if args.json:
        doc = {
            "memory": {str(i): memory.state[i] for i in memory.state} if memory.operative else None,
            "report": fields,
        }
        if args.trace:
            doc["trace"] = [{"node": c.node, "memory": {str(i): c.memory[i] for i in c.memory}} for c in trace]
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        if memory.operative:
            sys.stdout.write(format_memory(memory.state))
        else:
            print("# inoperative")
        for k, c in enumerate(trace):
            regs = " ".join(f"{i}={c.memory[i]}" for i in c.memory)
            print(f"# trace {k} node={c.node} {regs}".rstrip())
        print("# report")
        for key, value in fields.items():
            print(f"{key}={'none' if value is None else value}")
    return EXIT_INCONCLUSIVE if report.outcome is Outcome.STEP_LIMIT else EXIT_OK


def cmd_check(args):
    s = _program(args.program)
    cases, T, S = parse_check_spec(_read(args.spec))
    result = check_computes(
        s,
        cases,
        polynomial(T) if T else None,
        polynomial(S) if S else None,
        args.measure,
        RunLimits(args.max_steps),
    )
    for k, r in enumerate(result.results, start=1):
        ins = ",".join(w or "ε" for w in r.case.inputs)
        line = f"case {k} [{ins}]: {r.verdict}"
        if r.reasons:
            line += " (" + "; ".join(r.reasons) + ")"
        print(line)
    print(f"verdict={result.verdict}")
    return {"pass": EXIT_OK, "fail": EXIT_FALSE, "inconclusive": EXIT_INCONCLUSIVE}[result.verdict]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pgaram", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("asm", help="parse and classify a program")
    p.add_argument("file")
    p.set_defaults(func=cmd_asm)

    p = sub.add_parser("norm", help="print the canonical form")
    p.add_argument("file")
    p.add_argument("--struct", action="store_true", help="also normalise jumps")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("extract", help="print the extracted thread")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("equiv", help="compare two programs")
    p.add_argument("file1")
    p.add_argument("file2")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--seq", dest="mode", action="store_const", const="seq")
    mode.add_argument("--struct", dest="mode", action="store_const", const="struct")
    mode.add_argument("--behav", dest="mode", action="store_const", const="behav")
    p.set_defaults(func=cmd_equiv, mode="behav")

    for name, func in (("run", cmd_run), ("check", cmd_check)):
        p = sub.add_parser(name, help=f"{name} a program")
        p.add_argument("--program", required=True)
        p.add_argument("--max-steps", type=int, default=100_000)
        p.add_argument("--measure", choices=("uniform", "bit"), default="uniform")
        if name == "run":
            p.add_argument("--memory")
            p.add_argument("--inputs")
            p.add_argument("--trace", action="store_true")
            p.add_argument("--json", action="store_true")
        else:
            p.add_argument("--spec", required=True)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_steps", 1) < 1:
        parser.error("--max-steps must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pgaram {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
