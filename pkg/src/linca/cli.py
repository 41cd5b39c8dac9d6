"""Command-line front end.

Exit codes: 0 ok, 2 parse error, 3 semantic error, 4 not invertible,
5 verification failure, 6 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import directional as dirn
from .ca import LocalRule, is_leftmost_permutative, is_rightmost_permutative
from .entropy import LogLinearValue, prime_profiles, topological_entropy
from .errors import BudgetExceededError, LincaError, NotInvertibleError
from .invert import inverse, invertibility_profile
from .modular import MAX_MODULUS, factorize
from .oracle import (
    block_count_estimate,
    iterate_extremes,
    verify_inverse_roundtrip,
)
from .plot import render_svg

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_NOT_INVERTIBLE, EXIT_FAIL, EXIT_BUDGET = 0, 2, 3, 4, 5, 6


class RuleSpecError(LincaError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SemanticError(LincaError):
    pass


def parse_rule_spec(text: str) -> LocalRule:
    """Parse ``m=<uint>; l=<int>; c=<int>,<int>,...`` (whitespace ignored)."""
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def literal(tok):
        nonlocal pos
        skip()
        if not text.startswith(tok, pos):
            raise RuleSpecError(f"expected {tok!r}", pos)
        pos += len(tok)

    def integer(signed):
        nonlocal pos
        skip()
        start = pos
        if signed and pos < len(text) and text[pos] in "+-":
            pos += 1
        digits = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == digits:
            raise RuleSpecError("expected an integer", start)
        return int(text[start:pos])

    literal("m")
    literal("=")
    m = integer(signed=False)
    literal(";")
    literal("l")
    literal("=")
    l = integer(signed=True)
    literal(";")
    literal("c")
    literal("=")
    coeffs = [integer(signed=True)]
    skip()
    while pos < len(text) and text[pos] == ",":
        pos += 1
        coeffs.append(integer(signed=True))
        skip()
    if pos < len(text) and text[pos] == ";":
        pos += 1
        skip()
    if pos != len(text):
        raise RuleSpecError("unexpected trailing input", pos)
    if m < 2 or m > MAX_MODULUS:
        raise SemanticError(f"modulus must be in [2, 2^64), got {m}")
    return LocalRule(m, l, tuple(coeffs))


def _emit(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _factor_str(m: int) -> str:
    return " * ".join(f"{p}^{k}" if k > 1 else str(p) for p, k in factorize(m))


def _entropy_json(value: LogLinearValue) -> dict:
    return {"terms": value.to_json(), "nats": float(value)}


def cmd_info(rule: LocalRule, args) -> int:
    inv = invertibility_profile(rule)
    profiles = prime_profiles(rule)
    h = topological_entropy(rule)
    if args.format == "json":
        obj = {
            "rule": rule.spec(),
            "factorization": [[p, k] for p, k in factorize(rule.m)],
            "leftmost_permutative": is_leftmost_permutative(rule),
            "rightmost_permutative": is_rightmost_permutative(rule),
            "primes": [
                {
                    "p": pr.p,
                    "k": pr.k,
                    "P": sorted(pr.P),
                    "L": pr.L,
                    "R": pr.R,
                    "units": list(st.units),
                    "status": "invertible" if st.invertible else st.reason,
                }
                for pr, st in zip(profiles, inv.statuses)
            ],
            "invertible": inv.invertible,
            "entropy": _entropy_json(h),
        }
        _emit(_json(obj), args.out)
        return EXIT_OK
    yes = {True: "yes", False: "no"}
    lines = [
        f"rule: {rule.spec()}",
        f"local rule: {rule}",
        f"factorization: {_factor_str(rule.m)}",
        f"leftmost permutative: {yes[is_leftmost_permutative(rule)]}",
        f"rightmost permutative: {yes[is_rightmost_permutative(rule)]}",
    ]
    for pr, st in zip(profiles, inv.statuses):
        P = ",".join(map(str, sorted(pr.P)))
        lines.append(f"p={pr.p} k={pr.k}: P={{{P}}} L={pr.L} R={pr.R}; {st.explain()}")
    lines.append("invertible" if inv.invertible else inv.explain())
    lines.append(f"entropy: {h} = {float(h):.12g} nats")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_entropy(rule: LocalRule, args) -> int:
    h = topological_entropy(rule)
    if args.format == "json":
        _emit(_json(_entropy_json(h)), args.out)
    else:
        _emit(f"{h}\n{float(h):.12g}\n", args.out)
    return EXIT_OK


def cmd_invert(rule: LocalRule, args) -> int:
    prof = invertibility_profile(rule)
    if not prof.invertible:
        if args.format == "json":
            obj = {
                "invertible": False,
                "primes": [
                    {"p": s.p, "reason": s.reason, "units": list(s.units)}
                    for s in prof.failures()
                ],
            }
            _emit(_json(obj), args.out)
        else:
            _emit(prof.explain() + "\n", args.out)
        return EXIT_NOT_INVERTIBLE
    g = inverse(rule)
    if args.format == "json":
        _emit(_json({"invertible": True, "inverse": g.spec()}), args.out)
    else:
        _emit(g.spec() + "\n", args.out)
    return EXIT_OK


RAW_NOTE = (
    "note: raw mode reports the closed-form sum as is; it can be negative past pi/2 "
    "and can jump where a prime leaves its middle regime. Use --mode abs for |h|."
)


def _profile(rule: LocalRule, mode: str) -> dirn.PiecewiseProfile:
    prof = dirn.directional_profile(rule)
    return dirn.abs_normalize(prof) if mode == "abs" else prof


def cmd_directional(rule: LocalRule, args) -> int:
    if args.samples < 2:
        raise SemanticError(f"--samples must be >= 2, got {args.samples}")
    prof = _profile(rule, args.mode)
    fmt = args.format
    if fmt == "json":
        obj = {"rule": rule.spec(), "mode": args.mode, **prof.to_json()}
        _emit(_json(obj), args.out)
    elif fmt == "csv":
        rows = ["theta,entropy_nats"]
        rows += [f"{t:.12g},{v + 0.0:.12g}" for t, v in dirn.sample(prof, args.samples)]
        _emit("\n".join(rows) + "\n", args.out)
    elif fmt == "svg":
        _emit(render_svg(prof, args.samples, title=f"h(θ), {rule.spec()} [{args.mode}]"), args.out)
    else:
        lines = [f"rule: {rule.spec()}", f"mode: {args.mode}", f"pieces: {len(prof)}"]
        for i, p in enumerate(prof, 1):
            lines.append(f"{i}. theta in [{p.start}, {p.end}]:  a = {p.a};  b = {p.b}")
        lines.append("h(theta) = a*cos(theta) + b*sin(theta) on each piece")
        if args.mode == "raw":
            lines.append(RAW_NOTE)
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_verify(rule: LocalRule, args) -> int:
    report: dict = {"rule": rule.spec(), "oracle": args.oracle}
    if args.oracle == "blocks":
        target = topological_entropy(rule)
        try:
            rep = block_count_estimate(rule, args.width, args.tmax)
        except BudgetExceededError as exc:
            report.update(passed=False, error=str(exc), required=exc.required)
            return _verify_out(report, args, EXIT_BUDGET)
        if target:
            rel = abs(rep.estimate - float(target)) / float(target)
            passed = rel <= args.tolerance
        else:
            rel = None
            passed = rep.estimate == 0.0
        report.update(
            width=rep.width,
            t_max=rep.t_max,
            counts=list(rep.counts),
            estimate=rep.estimate,
            target=_entropy_json(target),
            relative_error=rel,
            tolerance=args.tolerance,
            passed=passed,
        )
    elif args.oracle == "inverse":
        passed = verify_inverse_roundtrip(rule, args.trials, args.cells, args.seed)
        report.update(trials=args.trials, cells=args.cells, seed=args.seed, passed=passed)
    else:
        checks = iterate_extremes(rule, args.n)
        passed = all(c.ok for c in checks)
        report.update(
            n=args.n,
            primes=[
                {"p": c.p, "expected": list(c.expected), "observed": list(c.observed) if c.observed else None}
                for c in checks
            ],
            passed=passed,
        )
    return _verify_out(report, args, EXIT_OK if report["passed"] else EXIT_FAIL)


def _verify_out(report: dict, args, code: int) -> int:
    if args.format == "json":
        _emit(_json(report), args.out)
    else:
        lines = [f"{k}: {v}" for k, v in report.items() if k != "passed"]
        lines.append("PASS" if report["passed"] else "FAIL")
        _emit("\n".join(lines) + "\n", args.out)
    return code


COMMANDS = {
    "info": cmd_info,
    "entropy": cmd_entropy,
    "invert": cmd_invert,
    "directional": cmd_directional,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linca",
        description="Entropy, inverses and directional entropy of linear CA over Z_m.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, formats=("text", "json")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("rule", help="rule spec, e.g. 'm=4; l=1; c=2,2,2,1'")
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        return sp

    add("info", "factorization, P-sets, permutivity and invertibility")
    add("entropy", "exact topological entropy")
    add("invert", "inverse rule, or why none exists")
    sp = add("directional", "piecewise directional entropy profile", ("text", "json", "csv", "svg"))
    sp.add_argument("--mode", choices=("raw", "abs"), default="raw")
    sp.add_argument("--samples", type=int, default=360)
    sp = add("verify", "run a brute-force oracle")
    sp.add_argument("--oracle", choices=("blocks", "inverse", "iterates"), required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--width", type=int, default=2)
    sp.add_argument("--tmax", type=int, default=8)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--cells", type=int, default=32)
    sp.add_argument("--tolerance", type=float, default=0.15)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rule = parse_rule_spec(args.rule)
    except RuleSpecError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LincaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    try:
        return COMMANDS[args.command](rule, args)
    except NotInvertibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_INVERTIBLE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except LincaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
