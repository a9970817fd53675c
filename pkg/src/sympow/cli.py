"""Command-line front end.

Every subcommand except ``run`` and ``verify`` is turned into a one-command
script, so the CLI and script files share one parser and one interpreter.
Ideal arguments are generator lists (``"x*y, x*z"``) or ideal expressions over
names bound with ``--let NAME=GENS``.  Without ``--ring`` the ring is
``Q[...] grevlex`` over the variables in natural sort order (``p`` first
for ``testideal-snc``).

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource limit.  Defaults for ``--timeout``, ``--parallel``, ``--seed`` and
``--p`` can be set with ``SYMPOW_TIMEOUT``, ``SYMPOW_PARALLEL``, ``SYMPOW_SEED``
and ``SYMPOW_P``; ``SYMPOW_MAX_DEGREE`` and ``SYMPOW_MAX_TERMS`` adjust the
engine guardrails.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from .errors import ParseError, ResourceLimit, SympowError, limits
from .parser import parse_script, tokenize

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
ENV_PREFIX = "SYMPOW_"


def _env(name: str, default=None, cast=str):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw in (None, ""):
        return default
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(f"error: {ENV_PREFIX}{name}={raw!r} is not a valid value")


# subcommand -> (ideal positional names, other positional names)
SIMPLE = {
    "gb": (["ideal"], []),
    "sympow": (["ideal"], ["n"]),
    "contain": (["big", "small"], []),
    "closure": (["ideal"], []),
    "multiplier": (["ideal"], ["t"]),
    "minprimes": (["ideal"], []),
    "rees": (["ideal"], []),
    "chart": (["ideal"], ["i"]),
    "asymptotic": (["ideal"], ["n"]),
    "pipeline": (["ideal"], ["m"]),
}
IDEAL_OPS = {
    "sum": ("ideal", "ideal"),
    "product": ("ideal", "ideal"),
    "intersect": ("ideal", "ideal"),
    "power": ("ideal", "int"),
    "colon": ("ideal", "poly"),
    "saturate": ("ideal", "poly"),
}
HELP = {
    "gb": "reduced Groebner basis",
    "sympow": "symbolic power (squarefree monomial, or a prime with --witness)",
    "contain": "does BIG contain SMALL",
    "closure": "integral closure of a monomial ideal",
    "multiplier": "multiplier ideal J(M^t) of a monomial ideal",
    "minprimes": "minimal primes of a squarefree monomial ideal",
    "rees": "presentation of the Rees algebra",
    "chart": "affine chart i of the blowup",
    "asymptotic": "stabilized asymptotic multiplier ideal at level n",
    "pipeline": "check the chain I^(hm) <= ... <= I^m link by link",
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", metavar="PATH", help="also write machine-readable output here")
    p.add_argument("--timeout", type=float, default=_env("TIMEOUT", None, float), help="seconds")


def _ring_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ring", help='ring declaration, e.g. "Q[x,y,z] grevlex"')
    p.add_argument("--let", action="append", default=[], metavar="NAME=GENS", help="bind an ideal name")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sympow", description="Symbolic powers, test ideals and friends.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("run", help="execute a script file ('-' for stdin)")
    p.add_argument("script")
    p.add_argument("--p", type=int, default=_env("P", 2, int), help="residue characteristic for testideal-snc")
    _common(p)

    for name, (ideals, others) in SIMPLE.items():
        p = sub.add_parser(name, help=HELP[name])
        for a in ideals + others:
            p.add_argument(a)
        if name == "sympow":
            p.add_argument("--witness", help="polynomial outside the prime used for saturation")
        if name == "multiplier":
            p.add_argument("--plot", metavar="PATH", help="draw the Newton polygon (two variables)")
        if name == "asymptotic":
            p.add_argument("--sequence", choices=("symbolic", "powers"), default="symbolic")
        _ring_opts(p)
        _common(p)

    p = sub.add_parser("ideal", help="ideal arithmetic")
    p.add_argument("op", choices=sorted(IDEAL_OPS))
    p.add_argument("first")
    p.add_argument("second")
    _ring_opts(p)
    _common(p)

    p = sub.add_parser("testideal-snc", help="test ideal of p^a0*x1^a1*... at exponent t")
    p.add_argument("f", nargs="?")
    p.add_argument("t", nargs="?")
    p.add_argument("--f", dest="f_opt", help="monomial (alternative to the positional)")
    p.add_argument("--t", dest="t_opt", help="exponent (alternative to the positional)")
    p.add_argument("--p", type=int, default=_env("P", 2, int), help="value of p")
    _ring_opts(p)
    _common(p)

    p = sub.add_parser("kcanonical", help="coefficient of E in K_{Y/X} for the blowup of the origin")
    p.add_argument("d", type=int)
    _common(p)

    p = sub.add_parser("verify", help="run the verification corpus")
    p.add_argument("--corpus", help="JSON Lines corpus (default: the shipped corpus)")
    p.add_argument("--kind", help="only cases of this kind")
    p.add_argument("--id", dest="pattern", help="only ids matching this glob")
    p.add_argument("--random", type=int, default=0, metavar="N", help="add N random cases per kind")
    p.add_argument("--seed", type=int, default=_env("SEED", 0, int))
    p.add_argument("--parallel", type=int, default=_env("PARALLEL", 1, int))
    p.add_argument("--figures", metavar="DIR", help="write summary figures here")
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    p.add_argument("--timeout", type=float, default=_env("TIMEOUT", 30.0, float), help="seconds per case")
    return ap


def _natural(name: str):
    return [int(c) if c.isdigit() else c for c in re.split(r"(\d+)", name)]


def _names(texts, bound) -> list:
    found = {tok.text for text in texts for tok in tokenize(text) if tok.kind == "name"}
    return sorted(found - set(bound) - {"powers", "symbolic"}, key=_natural)


def _build_script(args, command: str, ideal_args: list, plain_args: list, poly_args=(), p_first=False):
    lets = []
    for item in args.let:
        if "=" not in item:
            raise ParseError(f"--let expects NAME=GENS, got {item!r}")
        name, gens = item.split("=", 1)
        lets.append((name.strip(), gens))
    bound = {n for n, _ in lets}
    if args.ring:
        ring = args.ring
    else:
        names = _names([g for _, g in lets] + ideal_args + list(poly_args), bound)
        if p_first:
            names = ["p"] + [n for n in names if n != "p"]
        if not names:
            names = ["x"]
        ring = f"Q[{','.join(names)}] grevlex"
    lines = [f"ring {ring};"]
    lines += [f"ideal {n} = {g};" for n, g in lets]
    refs = []
    for k, text in enumerate(ideal_args, start=1):
        lines.append(f"ideal ARG{k} = {text};")
        refs.append(f"ARG{k}")
    lines.append(" ".join([command] + refs + [str(a) for a in plain_args]) + ";")
    return "\n".join(lines)


def _emit(results, json_path, extra=None) -> int:
    failed = False
    for r in results:
        print(r.text)
        failed = failed or r.failed
    if json_path:
        payload = {"results": [{"command": r.command, "line": r.line, "text": r.text, "data": r.data}
                               for r in results]}
        if extra:
            payload.update(extra)
        Path(json_path).write_text(json.dumps(payload, indent=2, default=str))
    return EXIT_FAIL if failed else EXIT_OK


def _run_script(text: str, args, p_value: int = 2):
    from .script import execute

    script = parse_script(text)
    with limits(timeout=args.timeout):
        return execute(script, p_value)


def _cmd_verify(args) -> int:
    from .harness import KINDS, generate_random_cases, load_corpus, run_corpus

    cases = load_corpus(args.corpus)
    if args.random:
        cases = cases + generate_random_cases(args.seed, {k: args.random for k in KINDS})
    report = run_corpus(cases, kind=args.kind, pattern=args.pattern, parallelism=max(1, args.parallel),
                        timeout=args.timeout)
    print(report.table())
    if args.json:
        Path(args.json).write_text(json.dumps(report.to_dict(), indent=2, default=str))
    if args.figures:
        from .plotting import verification_figures

        for path in verification_figures(report, args.figures):
            print(f"wrote {path}")
    return report.exit_code


def dispatch(args) -> int:
    cmd = args.cmd
    if cmd == "verify":
        return _cmd_verify(args)
    if cmd == "run":
        text = sys.stdin.read() if args.script == "-" else Path(args.script).read_text(encoding="utf-8")
        return _emit(_run_script(text, args, args.p), args.json)
    if cmd == "kcanonical":
        script = f"ring Q[x] grevlex;\nkcanonical {args.d};"
        return _emit(_run_script(script, args), args.json)
    if cmd == "testideal-snc":
        f = args.f_opt or args.f
        t = args.t_opt or args.t
        if f is None or t is None:
            raise ParseError("testideal-snc needs a monomial and an exponent")
        args.let = args.let or []
        script = _build_script(args, "testideal-snc", [], [f, t], poly_args=[f], p_first=True)
        return _emit(_run_script(script, args, args.p), args.json)
    if cmd == "ideal":
        kinds = IDEAL_OPS[args.op]
        ideals = [args.first] + ([args.second] if kinds[1] == "ideal" else [])
        plain = [] if kinds[1] == "ideal" else [args.second]
        script = _build_script(args, args.op, ideals, plain, poly_args=plain if kinds[1] == "poly" else ())
        return _emit(_run_script(script, args), args.json)
    ideal_names, other_names = SIMPLE[cmd]
    ideals = [getattr(args, n) for n in ideal_names]
    plain = [getattr(args, n) for n in other_names]
    polys = []
    if cmd == "sympow" and args.witness:
        plain.append(args.witness)
        polys.append(args.witness)
    if cmd == "asymptotic":
        plain.append(args.sequence)
    script = _build_script(args, cmd, ideals, plain, poly_args=polys)
    code = _emit(_run_script(script, args), args.json)
    if cmd == "multiplier" and args.plot:
        from .monomial import MonomialIdeal
        from .parser import parse_rational
        from .plotting import newton_polygon_figure
        from .script import Interpreter, as_monomial

        parsed = parse_script(script)
        interp = Interpreter(parsed)
        M = as_monomial(interp.ideal(parsed.env["ARG1"]))
        path = newton_polygon_figure(MonomialIdeal(M.ring, M.exponents), parse_rational(args.t), args.plot)
        print(f"wrote {path}")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return dispatch(args)
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SympowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
