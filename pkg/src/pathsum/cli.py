"""``sop`` command-line interface.

Exit codes: 0 success (``equiv``: equal), 1 distinct, 2 unknown, 64 bad usage,
65 unreadable or malformed input, 66 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence, TextIO

from .circuit import amplitude, circuit_to_sop, parse_circuit, probability
from .errors import (
    MalformedInput,
    PolyTooLarge,
    SopError,
    StepLimitExceeded,
    StrategyError,
    TooManyVariables,
)
from .rewrite import DEFAULT_MAX_STEPS, Verdict, default_strategy, equiv, measure_tuple, reduce, strategy_name
from .semantics import DEFAULT_VAR_CAP, interp, interp_ground
from .term import SopTerm, alpha_canonicalize, is_clifford, loads, term_size
from .zh import ZhDiagram, sop_to_zh, zh_to_sop

EX_USAGE = 64
EX_DATAERR = 65
EX_CAP = 66

STRATEGY_CHOICES = ("clif", "clif+", "ground", "clif_plus", "clif_ground")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from exc


def load_term(path: str) -> SopTerm:
    """Read a term from JSON or from circuit text (``*.sopc`` or non-JSON content)."""
    text = _read_text(path)
    if path.endswith(".sopc") or not text.lstrip().startswith("{"):
        return circuit_to_sop(parse_circuit(text))
    obj = json.loads(text) if text.strip() else None
    if isinstance(obj, dict) and "nodes" in obj:
        return zh_to_sop(ZhDiagram.from_json(obj))
    return loads(text)


def _strategy(args, *terms: SopTerm) -> str:
    if args.strategy is None:
        return default_strategy(*terms)
    return strategy_name(args.strategy)


def _write_trace(args, reductions: Sequence[tuple[str, object]]) -> None:
    if not args.trace:
        return
    with open(args.trace, "w") as fh:
        for label, red in reductions:
            for st in red.trace:  # type: ignore[attr-defined]
                rec = st.to_json()
                if label:
                    rec = {"term": label, **rec}
                fh.write(json.dumps(rec) + "\n")


def _emit_term(t: SopTerm, fmt: str, out: TextIO) -> None:
    if fmt == "text":
        out.write(str(t) + "\n")
    else:
        out.write(t.dumps() + "\n")


# -- subcommands --------------------------------------------------------------------------------


def cmd_reduce(args, out: TextIO) -> int:
    t = load_term(args.input)
    red = reduce(t, _strategy(args, t), args.max_steps)
    _write_trace(args, [("", red)])
    _emit_term(alpha_canonicalize(red.term), args.format or "json", out)
    return 0


def _equiv_pair(a: str, b: str, strategy: str | None, var_cap: int, max_steps: int) -> Verdict:
    t1, t2 = load_term(a), load_term(b)
    strat = strategy_name(strategy) if strategy else default_strategy(t1, t2)
    return equiv(t1, t2, strat, var_cap=var_cap, max_steps=max_steps)


def _parse_manifest(path: str) -> list[tuple[str, str]]:
    base = Path(path).parent if path != "-" else Path(".")
    pairs = []
    for lineno, raw in enumerate(_read_text(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedInput(f"manifest line {lineno}: expected two paths")
        pairs.append(tuple(str(base / p) if not Path(p).is_absolute() else p for p in parts))
    return pairs  # type: ignore[return-value]


def cmd_equiv(args, out: TextIO) -> int:
    if args.batch:
        if args.inputs:
            raise UsageError("--batch takes no positional inputs")
        pairs = _parse_manifest(args.batch)
        jobs = [(a, b, args.strategy, args.var_cap, args.max_steps) for a, b in pairs]
        if args.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                verdicts = list(pool.map(_equiv_job, jobs))
        else:
            verdicts = [_equiv_job(j) for j in jobs]
        code = 0
        for (a, b), v in zip(pairs, verdicts):
            if isinstance(v, Verdict):
                out.write(f"{a} {b} {v.value}\n")
                code = max(code, v.exit_code)
            else:
                out.write(f"{a} {b} error: {v}\n")
                code = max(code, 2)
        return code
    if len(args.inputs) != 2:
        raise UsageError("equiv needs exactly two inputs (or --batch MANIFEST)")
    a, b = args.inputs
    t1, t2 = load_term(a), load_term(b)
    strat = _strategy(args, t1, t2)
    if args.trace:
        _write_trace(args, [("1", reduce(t1, strat, args.max_steps)), ("2", reduce(t2, strat, args.max_steps))])
    v = equiv(t1, t2, strat, var_cap=args.var_cap, max_steps=args.max_steps)
    out.write(v.value + "\n")
    return v.exit_code


def _equiv_job(job) -> Verdict | str:
    try:
        return _equiv_pair(*job)
    except SopError as exc:
        return str(exc)


def cmd_interp(args, out: TextIO) -> int:
    t = load_term(args.input)
    if not args.raw:
        red = reduce(t, _strategy(args, t), args.max_steps)
        _write_trace(args, [("", red)])
        t = red.term
    m = interp_ground(t, var_cap=args.var_cap) if t.discard else interp(t, var_cap=args.var_cap)
    fmt = args.format or "text"
    if fmt == "json":
        out.write(m.dumps() + "\n")
    else:
        out.write(m.to_text() + "\n")
    if args.approx:
        import numpy as np

        with np.printoptions(precision=6, suppress=True):
            out.write(str(m.to_complex()) + "\n")
    return 0


def cmd_amplitude(args, out: TextIO) -> int:
    c = parse_circuit(_read_text(args.circuit))
    if c.is_pure:
        val = amplitude(c, args.in_bits, args.out_bits, var_cap=args.var_cap)
    else:
        val = probability(c, args.in_bits, args.out_bits, var_cap=args.var_cap)
    out.write(str(val) + "\n")
    if args.approx:
        out.write(f"{complex(val):.12g}\n")
    return 0


def cmd_to_zh(args, out: TextIO) -> int:
    d = sop_to_zh(load_term(args.input))
    if (args.format or "json") == "dot":
        out.write(d.to_dot())
    else:
        out.write(d.dumps() + "\n")
    return 0


def cmd_from_zh(args, out: TextIO) -> int:
    t = zh_to_sop(ZhDiagram.loads(_read_text(args.input)))
    if args.reduce:
        t = alpha_canonicalize(reduce(t, _strategy(args, t), args.max_steps).term)
    _emit_term(t, args.format or "json", out)
    return 0


def _metrics(t: SopTerm) -> dict:
    return {
        "n_in": t.n_in,
        "n_out": t.n_out,
        "vars": len(t.vars),
        "phase_monomials": len(t.phase),
        "phase_degree": max(t.phase.degree(), 0),
        "discards": len(t.discard),
        "size": term_size(t),
        "clifford": is_clifford(t),
        "measure": list(measure_tuple(t)),
    }


def cmd_stats(args, out: TextIO) -> int:
    t = load_term(args.input)
    red = reduce(t, _strategy(args, t), args.max_steps)
    _write_trace(args, [("", red)])
    report = {"input": _metrics(t), "reduced": _metrics(red.term), "steps": red.steps}
    if (args.format or "json") == "text":
        for section in ("input", "reduced"):
            out.write(f"{section}:\n")
            for k, v in report[section].items():  # type: ignore[union-attr]
                out.write(f"  {k}: {v}\n")
        out.write(f"steps: {red.steps}\n")
    else:
        out.write(json.dumps(report) + "\n")
    return 0


# -- parser ---------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strategy", choices=STRATEGY_CHOICES, help="rewrite strategy (default: by discards)")
    common.add_argument("--trace", metavar="FILE", help="write the rewrite trace as JSON lines")
    common.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS, metavar="N")
    common.add_argument("--var-cap", type=int, default=DEFAULT_VAR_CAP, metavar="N")
    common.add_argument("--format", choices=("json", "text", "dot"))
    common.add_argument("--seed", type=int, metavar="N", help="seed for randomized helpers")

    p = _Parser(prog="sop", description="Sum-over-paths rewriting and equivalence checking.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("reduce", parents=[common], help="reduce a term to canonical normal form")
    s.add_argument("input")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("equiv", parents=[common], help="decide equality of two terms")
    s.add_argument("inputs", nargs="*")
    s.add_argument("--batch", metavar="MANIFEST", help="file with one 'a b' pair per line")
    s.add_argument("--jobs", type=int, default=1, metavar="N")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("interp", parents=[common], help="exact matrix of a term")
    s.add_argument("input")
    s.add_argument("--raw", action="store_true", help="skip reduction before enumerating")
    s.add_argument("--approx", action="store_true", help="also print a floating-point matrix")
    s.set_defaults(func=cmd_interp)

    s = sub.add_parser("amplitude", parents=[common], help="exact <out|C|in> of a circuit")
    s.add_argument("circuit")
    s.add_argument("in_bits")
    s.add_argument("out_bits")
    s.add_argument("--approx", action="store_true")
    s.set_defaults(func=cmd_amplitude)

    s = sub.add_parser("to-zh", parents=[common], help="translate a term to a ZH diagram")
    s.add_argument("input")
    s.set_defaults(func=cmd_to_zh)

    s = sub.add_parser("from-zh", parents=[common], help="translate a ZH diagram to a term")
    s.add_argument("input")
    s.add_argument("--reduce", action="store_true")
    s.set_defaults(func=cmd_from_zh)

    s = sub.add_parser("stats", parents=[common], help="term metrics before and after reduction")
    s.add_argument("input")
    s.set_defaults(func=cmd_stats)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.func(args, out)
    except (UsageError, StrategyError) as exc:
        print(f"sop: {exc}", file=sys.stderr)
        return EX_USAGE
    except (TooManyVariables, StepLimitExceeded, PolyTooLarge) as exc:
        print(f"sop: {exc}", file=sys.stderr)
        return EX_CAP
    except (SopError, json.JSONDecodeError, ValueError) as exc:
        print(f"sop: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
