"""Command-line interface: ``prolate {rule,eval,lambda,nselect,verify}``."""

from __future__ import annotations

import argparse
import sys

from . import reference, serialize, verify
from .errors import ProlateError
from .pswf import lambda_and_chi, lambda_value, n2_for_precision, n_for_precision, psi_and_dpsi, solve
from .quadrature import build_rule

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_BAD_INPUT, EXIT_IO = 0, 1, 2, 3


def _x_values(raw: list[str]) -> list[float]:
    out = []
    for item in raw:
        out.extend(float(v) for v in item.split(",") if v.strip())
    return out


def cmd_rule(args) -> int:
    rule = build_rule(args.c, args.n, seed=args.seed)
    text = serialize.to_json(rule) if args.format == "json" else serialize.to_csv(rule)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_eval(args) -> int:
    xs = _x_values(args.x)
    sol = solve(args.c, args.n, seed=args.seed)
    values, derivs = psi_and_dpsi(sol, xs)
    print("x,psi,dpsi")
    for x, v, d in zip(xs, values, derivs):
        print(f"{x:.17e},{v:.17e},{d:.17e}")
    return EXIT_OK


def cmd_lambda(args) -> int:
    sol = solve(args.c, args.n, seed=args.seed)
    lam = lambda_value(sol)
    print(f"lambda_abs={lam.magnitude:.16e}")
    print(f"phase=i^{lam.phase_exponent}")
    print(f"chi={sol.chi:.16e}")
    return EXIT_OK


def cmd_nselect(args) -> int:
    c, eps = args.c, args.eps
    n1 = n_for_precision(c, eps, "n1")
    n2 = n2_for_precision(c, eps)
    n3 = n_for_precision(c, eps, "n3")
    n4 = n_for_precision(c, eps, "n4")
    print(n1, n2, n3, n4)
    print(f"lambda_n1={lambda_and_chi(float(c), n1)[0]:.5e}")
    print(f"lambda_n2={lambda_and_chi(float(c), n2)[0]:.5e}")
    return EXIT_OK


def cmd_verify(args) -> int:
    opts = {"max_c": args.max_c, "jobs": args.jobs, "seed": args.seed}
    if args.c is not None:
        opts["c"] = args.c
    if args.n is not None:
        opts["n"] = args.n
    checks = verify.run(args.name, **opts)
    for check in checks:
        print(check.line())
    failed = sum(1 for ch in checks if ch.hard and not ch.passed)
    print(f"{args.name}: {len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prolate", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_n=True):
        p.add_argument("--c", type=float, required=True, help="band limit")
        if need_n:
            p.add_argument("--n", type=int, required=True, help="prolate index")
        p.add_argument("--seed", type=int, default=1, help="seed of the inverse power start vector")

    p = sub.add_parser("rule", help="build a quadrature rule and write it as CSV or JSON")
    common(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_rule)

    p = sub.add_parser("eval", help="evaluate psi_n and psi_n' at points of [-1, 1]")
    common(p)
    p.add_argument("--x", action="append", required=True, help="point(s), comma separated or repeated")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("lambda", help="print |lambda_n|, its phase and chi_n")
    common(p)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("nselect", help="print n1 n2 n3 n4 for accuracy eps")
    common(p, need_n=False)
    p.add_argument("--eps", type=float, required=True)
    p.set_defaults(func=cmd_nselect)

    p = sub.add_parser("verify", help="recompute a stored reference table or experiment")
    p.add_argument("name", choices=sorted(verify.SUITES))
    p.add_argument("--c", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--max-c", type=float, default=reference.DEFAULT_MAX_C, dest="max_c")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProlateError as exc:
        hypotheses = getattr(exc, "hypotheses", ())
        print(f"error: {exc}", file=sys.stderr)
        for h in hypotheses:
            print(f"violated hypothesis: {h}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
