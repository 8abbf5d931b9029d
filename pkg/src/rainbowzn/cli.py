"""Command-line interface.

Exit codes: 0 success / rainbow-free, 1 rainbow witness found, 2 input
error, 3 certification bound refused.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import analyzer, certify, construct, formulas, reduce, solver
from .group import Coloring, LinearEquation, RainbowWitness, equation_by_name
from .io import ColoringParseError, coloring_to_dict, format_coloring, read_coloring, write_coloring

EXIT_OK, EXIT_WITNESS, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3


class InputError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_equation(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eq", default="sidon", choices=["sidon", "schur"], help="named equation")
    p.add_argument("--coeffs", type=_ints, help="custom coefficients a1,a2,...")
    p.add_argument("--const", type=int, default=0, help="constant of the custom equation")


def _equation(args) -> LinearEquation:
    if args.coeffs:
        try:
            return LinearEquation(tuple(args.coeffs), args.const)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    return equation_by_name(args.eq)


def _load(path: str) -> Coloring:
    try:
        return read_coloring(path)
    except ColoringParseError as exc:
        raise InputError(f"{path}: {exc}") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _emit(args, obj: dict, text: str) -> None:
    print(json.dumps(obj, indent=2) if args.json else text)


def _witness_text(w: RainbowWitness | None) -> str:
    return "NONE" if w is None else f"{w.equation.format_solution(w.elements)}  colors {w.colors}"


def cmd_rb(args) -> int:
    n = args.n
    if not 1 <= n <= formulas.MAX_ORDER or (args.eq == "schur" and n < 2):
        raise InputError(f"invalid n={n} for {args.eq}")
    if args.eq == "sidon":
        value = formulas.rb_sidon(n)
    else:
        value = formulas.rb_schur(n)
    obj: dict = {"n": n, "equation": args.eq, "rb": value}
    lines = [str(value)]
    if args.explain and n >= 2:
        prof = formulas.factor_profile(n)
        obj["profile"] = prof.to_dict()
        lines.append(f"factors: {' * '.join(map(str, prof.factors))}")
        if args.eq == "sidon":
            lines.append(f"p_m={prof.p_m} (m={prof.m}), f1={prof.f1}, f2={prof.f2}")
            base = formulas.rb_sidon(prof.p_m)
            lines.append(f"rb = rb(Z_{prof.p_m}) + f1 + 2*f2 = {base} + {prof.f1} + {2 * prof.f2} = {value}")
        else:
            k = prof.k
            lines.append(f"rb = 2(1-{k}) + sum of prime values = {value}")
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.n < 2:
        raise InputError(f"construct needs n >= 2, got {args.n}")
    c = construct.extremal_coloring(args.n)
    if args.output:
        try:
            write_coloring(c, args.output, as_json=args.json)
        except OSError as exc:
            raise InputError(f"{args.output}: {exc.strerror}") from None
        print(f"wrote {args.output}: n={c.n} colors={c.r}")
    else:
        _emit(args, coloring_to_dict(c), format_coloring(c).rstrip("\n"))
    return EXIT_OK


def cmd_check(args) -> int:
    c = _load(args.file)
    eq = _equation(args)
    w = solver.find_rainbow_witness(c, eq)
    obj = {"n": c.n, "r": c.r, "equation": eq.label, "rainbow_free": w is None,
           "witness": None if w is None else w.to_dict()}
    _emit(args, obj, "RAINBOW_FREE" if w is None else _witness_text(w))
    return EXIT_OK if w is None else EXIT_WITNESS


def cmd_witness(args) -> int:
    c = _load(args.file)
    if args.strategy == "reduce":
        if args.coeffs or args.eq != "sidon":
            raise InputError("the reduce strategy only handles the Sidon equation")
        w = reduce.find_witness_by_reduction(c)
        if w is not None:
            solver.validate_witness(w, c)
    else:
        w = solver.find_rainbow_witness(c, _equation(args))
    obj = {"strategy": args.strategy, "witness": None if w is None else w.to_dict()}
    _emit(args, obj, _witness_text(w))
    return EXIT_OK if w is None else EXIT_WITNESS


def cmd_certify(args) -> int:
    eq = _equation(args)
    if args.n < 1:
        raise InputError("n must be positive")
    if args.override_bound:
        print("warning: desk bound overridden, this may run long", file=sys.stderr)
    threads = args.threads or os.cpu_count() or 1
    result = certify.certify_rb(args.n, eq, threads=threads, override=args.override_bound)
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(result.to_dict(), fh, indent=2)
    lines = [f"{'r':>3}  {'verdict':<17} {'nodes':>9} {'time[s]':>8}  counterexample"]
    for rep in result.levels:
        cex = "" if rep.counterexample is None else " ".join(map(str, rep.counterexample.colors))
        lines.append(f"{rep.r:>3}  {rep.verdict.value:<17} {rep.stats.nodes:>9} {rep.stats.wall_time:>8.2f}  {cex}")
    lines.append(f"rb(Z_{args.n}, {eq.label}) = {result.rb}")
    _emit(args, result.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_analyze(args) -> int:
    c = _load(args.file)
    obj: dict = {"n": c.n, "r": c.r}
    lines = [f"n={c.n} r={c.r}"]
    if args.dominance:
        steps = args.step or list(range(1, c.n))
        dom = {}
        for i in steps:
            g = analyzer.dominance_graph(c, i)
            d = sorted(analyzer.i_dominant_colors(c, i))
            dom[str(i)] = {"dominant": d, "edges": g.sorted_edges()}
            lines.append(f"i={i}: dominant {d or '-'}  edges {g.sorted_edges()}")
        obj["dominance"] = dom
    if args.pattern is not None:
        hits = sorted(analyzer.find_pattern(c, args.pattern))
        obj["pattern"] = {"pattern": args.pattern, "positions": hits}
        lines.append(f"pattern {args.pattern}: " + (", ".join(map(str, hits)) if hits else "no occurrence"))
    if args.strings is not None:
        runs = analyzer.maximal_strings(c, args.strings)
        obj["strings"] = [{"start": iv.start, "end": iv.end, "length": iv.length} for iv in runs]
        lines.append(f"maximal {set(args.strings)}-strings: " + (" ".join(map(str, runs)) or "none"))
    if args.periodic is not None:
        if len(args.periodic) != 3:
            raise InputError("--periodic takes start,length,period")
        start, length, i = args.periodic
        ok = analyzer.is_periodic(c, analyzer.CyclicInterval(c.n, start, length), i)
        obj["periodic"] = ok
        lines.append(f"interval start={start} length={length} {i}-periodic: {ok}")
    if args.cosets is not None:
        table = analyzer.coset_color_table(c, args.cosets)
        obj["cosets"] = {str(i): sorted(v) for i, v in table.items()}
        lines.append("cosets: " + ", ".join(f"R_{i}: {sorted(v)}" for i, v in table.items()))
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_reduce(args) -> int:
    c = _load(args.file)
    if not formulas.is_prime(args.p) or c.n % args.p:
        raise InputError(f"{args.p} is not a prime divisor of {c.n}")
    out = reduce.reduce_once(c, args.p)
    if isinstance(out, RainbowWitness):
        _emit(args, {"witness": out.to_dict()}, "short-circuit witness: " + _witness_text(out))
        return EXIT_WITNESS
    d = out.to_dict()
    text = "\n".join([
        f"p={out.p} t={out.t} j={out.shift}",
        f"base colors: {sorted(out.base_colors)}",
        f"child ({out.t} {out.child.r}): {' '.join(map(str, out.child.colors))}  alpha={out.alpha}",
        f"child colors: {d['child_colors']}",
        f"representatives: {d['representatives']}",
    ])
    _emit(args, d, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rainbowzn", description="Rainbow numbers of cyclic groups")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rb", help="closed-form rainbow number")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eq", default="sidon", choices=["sidon", "schur"])
    p.add_argument("--explain", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rb)

    p = sub.add_parser("construct", help="extremal rainbow-Sidon-free coloring")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="rainbow-freeness of a coloring file")
    p.add_argument("file")
    _add_equation(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("witness", help="find a rainbow witness")
    p.add_argument("file")
    p.add_argument("--strategy", choices=["brute", "reduce"], default="brute")
    _add_equation(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("certify", help="exhaustive rainbow number")
    p.add_argument("--n", type=int, required=True)
    _add_equation(p)
    p.add_argument("--threads", type=int, default=0, help="worker processes (default: all cores)")
    p.add_argument("--override-bound", action="store_true", help="run beyond the desk bound")
    p.add_argument("--report", help="write the structured report to this path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("analyze", help="structural report of a coloring file")
    p.add_argument("file")
    p.add_argument("--dominance", action="store_true")
    p.add_argument("--step", type=int, action="append", help="restrict --dominance to these steps")
    p.add_argument("--pattern", type=_ints)
    p.add_argument("--strings", type=_ints, help="colorset of one or two colors")
    p.add_argument("--periodic", type=_ints, metavar="START,LENGTH,PERIOD")
    p.add_argument("--cosets", type=int, metavar="T")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reduce", help="one coset reduction step")
    p.add_argument("file")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except certify.BoundExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
