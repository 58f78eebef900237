"""Command-line interface.

Exit status::

    0  success; every check passed or the query answered yes
    1  a check failed, a membership query answered no, or a computation raised
    2  bad usage, unreadable input or a parse error
    3  a step limit or enumeration budget ran out
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys

from .errors import BudgetExceeded, JetlabError, ParseError, StepLimitExceeded, UnknownScenario
from .greenberg import DEFAULT_BUDGET, LiftProblem, enumerate_jets, greenberg_scan, hensel_lift
from .groebner import (
    DEFAULT_STEP_LIMIT,
    Ideal,
    ideal_member,
    krull_dimension,
    radical_member,
    saturate,
    step_limit_scope,
)
from .jets import jet_ideal
from .poly import LEX, DEGREVLEX
from .scenarios import SCENARIOS, render_report, run_scenario
from .smoothness import nonsmooth_ideal
from .varieties import parse_arc, parse_arc_vectors, parse_variety

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_variety(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc.message}", exc.line, exc.column) from None


def _emit(args, text, payload):
    if args.format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def cmd_jet(args):
    spec = _load(args.file)
    J = jet_ideal(spec.gens, args.order)
    lines = [f"F_{i}[{k}] = {f}" for i, row in enumerate(J.F) for k, f in enumerate(row)]
    _emit(args, "\n".join(lines), {"level": args.order, "variables": list(J.ctx.names), "generators": J.strings()})
    return EXIT_OK


def cmd_gb(args):
    spec = _load(args.file)
    order = LEX if args.order == "lex" else DEGREVLEX
    G = Ideal(spec.gens).groebner(order)
    _emit(args, "\n".join(G.strings()), {"order": args.order, "basis": G.strings()})
    return EXIT_OK


def cmd_dim(args):
    spec = _load(args.file)
    d = krull_dimension(Ideal(spec.gens))
    _emit(args, str(d), {"dimension": d})
    return EXIT_OK


def cmd_nsm(args):
    spec = _load(args.file)
    N = nonsmooth_ideal(spec.gens, args.codim or spec.codim or 1)
    gens = [str(g) for g in N.gens]
    _emit(args, "\n".join(gens), {"generators": gens})
    return EXIT_OK


def _membership(args, fn):
    spec = _load(args.file)
    f = spec.parse(args.poly)
    ok = fn(f, Ideal(spec.gens))
    _emit(args, "true" if ok else "false", {"poly": str(f), "member": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_member(args):
    return _membership(args, ideal_member)


def cmd_radical_member(args):
    return _membership(args, radical_member)


def cmd_saturate(args):
    spec = _load(args.file)
    S = saturate(Ideal(spec.gens), spec.parse(args.poly))
    gens = [str(g) for g in S.gens]
    _emit(args, "\n".join(gens) if gens else "0", {"generators": gens})
    return EXIT_OK


def cmd_lift(args):
    spec = _load(args.file)
    solve = [v for v in args.solve.replace(",", " ").split() if v]
    vectors = parse_arc_vectors(args.arc, spec)
    nu = args.nu
    if nu is None:
        nu = min((len(vectors[v]) for v in solve if v in vectors), default=1)
    arc = parse_arc(args.arc, spec)
    lift = hensel_lift(LiftProblem(spec.gens, arc, nu, args.to, solve))
    _emit(args, str(lift), {"level": lift.level, "nu": nu, "arc": {n: [str(c) for c in lift.vector(n)] for n in lift.names}})
    return EXIT_OK


def cmd_enumerate(args):
    spec = _load(args.file)
    pts = sorted(enumerate_jets(spec.gens, args.q, args.order, args.budget), key=lambda a: a.coeffs)
    text = "\n".join([str(p) for p in pts] + [f"count: {len(pts)}"])
    _emit(args, text, {"q": args.q, "level": args.order, "count": len(pts), "points": [str(p) for p in pts]})
    return EXIT_OK


def cmd_greenberg(args):
    spec = _load(args.file)
    rep = greenberg_scan(spec.gens, args.q, args.nu, args.max, args.budget)
    _emit(args, rep.summary(), rep.to_dict())
    return EXIT_OK


def cmd_verify(args):
    options = {"p": args.p, "n": args.n, "d": args.d, "q": args.q, "nu": args.nu, "m_max": args.max}
    if args.file:
        options["spec"] = _load(args.file)
    names = list(SCENARIOS) if args.scenario == "all" else [args.scenario]
    reports = []
    for name in names:
        opts = _accepted(name, options) if args.scenario != "all" else {}
        reports.append(run_scenario(name, **opts))
    if args.format == "json":
        payload = [r.to_dict() for r in reports]
        print(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2, ensure_ascii=False))
    else:
        print("\n\n".join(render_report(r) for r in reports))
    if any(r.hit_limit for r in reports):
        return EXIT_LIMIT
    return EXIT_OK if all(r.overall for r in reports) else EXIT_FAIL


def _accepted(name, opts):
    if name not in SCENARIOS:
        raise UnknownScenario(f"unknown scenario {name!r}; known: all, {', '.join(SCENARIOS)}")
    params = inspect.signature(SCENARIOS[name]).parameters
    unknown = [k for k, v in opts.items() if v is not None and k not in params]
    if unknown:
        raise UnknownScenario(f"scenario {name!r} takes no option(s) {', '.join(unknown)}")
    return {k: v for k, v in opts.items() if k in params}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    common.add_argument("--step-limit", type=int, default=argparse.SUPPRESS, metavar="K")

    p = argparse.ArgumentParser(prog="jetlab", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = verb("jet", cmd_jet, "print the jet ideal generators")
    sp.add_argument("--order", type=int, required=True, metavar="N")
    sp.add_argument("file")

    sp = verb("gb", cmd_gb, "reduced Groebner basis")
    sp.add_argument("--order", choices=["degrevlex", "lex"], default="degrevlex")
    sp.add_argument("file")

    sp = verb("dim", cmd_dim, "Krull dimension")
    sp.add_argument("file")

    sp = verb("nsm", cmd_nsm, "non-smooth locus ideal (Jacobian criterion)")
    sp.add_argument("--codim", type=int)
    sp.add_argument("file")

    for name, fn in (("member", cmd_member), ("radical-member", cmd_radical_member), ("saturate", cmd_saturate)):
        sp = verb(name, fn, f"{name} query")
        sp.add_argument("poly")
        sp.add_argument("file")

    sp = verb("lift", cmd_lift, "Hensel-lift a truncated arc")
    sp.add_argument("file")
    sp.add_argument("--arc", required=True, help="e.g. 'x:(1,1); y:(1)'")
    sp.add_argument("--solve", required=True, help="solved variables, e.g. 'y'")
    sp.add_argument("--to", type=int, required=True, metavar="N")
    sp.add_argument("--nu", type=int, help="input precision (default: shortest solved vector)")

    sp = verb("enumerate", cmd_enumerate, "all F_q-points of a jet scheme")
    sp.add_argument("file")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--order", type=int, required=True, metavar="N")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = verb("greenberg", cmd_greenberg, "empirical Greenberg scan")
    sp.add_argument("file")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--nu", type=int, required=True)
    sp.add_argument("--max", type=int, required=True, metavar="M")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = verb("verify", cmd_verify, "run a named scenario (or 'all')")
    sp.add_argument("scenario", help=f"one of: all, {', '.join(SCENARIOS)}")
    sp.add_argument("--p", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--nu", type=int)
    sp.add_argument("--max", type=int, metavar="M")
    sp.add_argument("--file")
    return p


def _message(exc) -> str:
    # KeyError subclasses quote their argument in str(); print it plainly
    return exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.format = getattr(args, "format", "text")
    limit = getattr(args, "step_limit", DEFAULT_STEP_LIMIT)
    try:
        with step_limit_scope(limit):
            return args.func(args)
    except (ParseError, UnknownScenario) as exc:
        print(f"error: {_message(exc)}", file=sys.stderr)
        return EXIT_USAGE
    except (StepLimitExceeded, BudgetExceeded) as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except JetlabError as exc:
        print(f"error: {type(exc).__name__}: {_message(exc)}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
