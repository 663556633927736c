"""Command-line driver: ``cpw analyze | check | eval | witness``."""

import argparse
import json
import sys

from . import commutant as cm
from . import ideals as idl
from .crossed import format_element, parse_element
from .dynsys import model_from_config
from .errors import ConfigError, CpwError, ParseError, PreconditionFailed, Unsupported
from .suites import SUITES, CheckOptions, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_UNSUPPORTED, EXIT_USAGE = 0, 2, 3, 64
_STATUS_EXIT = {"pass": EXIT_PASS, "fail": EXIT_FAIL, "unsupported": EXIT_UNSUPPORTED}


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", path) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", path) from exc
    return model_from_config(cfg)


def analyze_report(s, per_bound=6):
    props = {
        "aperiodic_dense": s.aperiodic_points_dense(),
        "minimal": s.is_minimal(),
        "transitive": s.is_topologically_transitive(),
        "maximal_abelian": cm.is_maximal_abelian(s),
    }
    per_n = {str(n): str(s.per_n(n)) for n in range(-per_bound, per_bound + 1) if n}
    return {
        "schema_version": 1,
        "system": s.to_config(),
        "capabilities": s.capabilities.as_dict(),
        "properties": props,
        "per_n": per_n,
        "consistency": {
            "maximal_abelian_iff_aperiodic_dense": props["maximal_abelian"] == props["aperiodic_dense"],
        },
    }


def cmd_analyze(args):
    s = load_config(args.config)
    report = analyze_report(s, args.per_bound)
    print(_dump(report))
    return EXIT_PASS if report["consistency"]["maximal_abelian_iff_aperiodic_dense"] else EXIT_FAIL


def cmd_check(args):
    s = load_config(args.config)
    for name in ("degree", "radius", "samples"):
        if getattr(args, name) < 1:
            raise ConfigError("must be positive", f"--{name}")
    opts = CheckOptions(args.degree, args.radius, args.samples, args.seed)
    result = run_suite(args.suite, s, opts)
    report = _dump(result.to_json(args.timings))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report + "\n")
    for item in result.items:
        extra = f" [{item.capability}]" if item.capability else ""
        timing = f" ({item.elapsed * 1000:.1f} ms)" if args.timings else ""
        print(f"{item.status:<11} {item.name}{extra}{timing}")
    print(f"suite {result.suite}: {result.status}")
    return _STATUS_EXIT[result.status]


def cmd_eval(args):
    s = load_config(args.config)
    tokens = args.tokens
    if len(tokens) < 3 or len(tokens) % 2 == 0:
        raise ConfigError("expected <expr> <op> <expr> [<op> <expr> ...]", "eval")
    acc = parse_element(s, tokens[0])
    for op, text in zip(tokens[1::2], tokens[2::2]):
        x = parse_element(s, text)
        if op == "mul":
            acc = acc * x
        elif op == "add":
            acc = acc + x
        else:
            raise ConfigError(f"unknown operator {op!r}; use mul or add", "eval")
    print(format_element(acc))
    return EXIT_PASS


def cmd_witness(args):
    s = load_config(args.config)
    f = parse_element(s, args.expr)
    try:
        if args.mode == "in-a":
            _, cert = idl.witness_in_A(s, f)
            out = {"witness": format_element(cert.claim), "certificate": cert.to_json()}
        else:
            c, cert, iters = idl.witness_in_commutant(s, f)
            out = {"witness": format_element(c), "iterations": iters, "certificate": cert.to_json()}
    except (Unsupported, PreconditionFailed) as exc:
        print(_dump({"status": "unsupported", "capability": exc.capability, "reason": str(exc)}))
        return EXIT_UNSUPPORTED
    out["status"] = "pass" if cert.verify() else "fail"
    print(_dump(out))
    return _STATUS_EXIT[out["status"]]


def build_parser():
    p = argparse.ArgumentParser(prog="cpw", description="Exact computations in crossed products A x Z.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="dynamical properties and Per^n table")
    a.add_argument("-c", "--config", required=True)
    a.add_argument("--per-bound", type=int, default=6)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check", help="run a check suite")
    c.add_argument("suite", choices=sorted(SUITES))
    c.add_argument("-c", "--config", required=True)
    c.add_argument("--degree", type=int, default=5)
    c.add_argument("--radius", type=int, default=2)
    c.add_argument("--samples", type=int, default=20)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--json", metavar="PATH")
    c.add_argument("--timings", action="store_true", help="include per-item timings (JSON is then not reproducible)")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("eval", help="fold mul/add over element expressions")
    e.add_argument("-c", "--config", required=True)
    e.add_argument("tokens", nargs="+", metavar="EXPR|OP")
    e.set_defaults(func=cmd_eval)

    w = sub.add_parser("witness", help="constructive witness with certificate")
    w.add_argument("mode", choices=["in-a", "in-commutant"])
    w.add_argument("-c", "--config", required=True)
    w.add_argument("expr")
    w.set_defaults(func=cmd_witness)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        if exc.text is not None:
            print(f"  {exc.text}\n  {' ' * exc.position}^", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CpwError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
