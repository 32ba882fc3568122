"""Command line front end: ``e7-forge build|verify|sample|volume|integral``.

Exit codes: 0 success, 1 build or verification failure, 2 usage error.
"""

import argparse
import logging
import sys

from .e7mat import write_e7mat
from .errors import E7ForgeError
from .euler import SplitHaarSampler
from .generators import GeneratorSet
from .measures import TARGETS, group_volume, integral_closed, integral_quadrature, render_fraction
from .rep56 import evi_56, split_56, tits_56
from .rep133 import adjoint_133
from .sparse import SparseMatrix
from .suites import CONSTRUCTIONS, SUITE_NAMES, run_suite

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class UsageError(Exception):
    """Bad combination of otherwise valid flags."""


def build_generators(construction, rep, scalar):
    """The generator set ``build`` writes.

    Raises:
        UsageError: If the construction has no realization of that dimension.
    """
    exact = scalar == "exact"
    if rep == 133:
        if construction != "tits":
            raise UsageError(f"the {construction} construction is only available on the 56")
        return adjoint_133(exact)
    if construction == "tits":
        return tits_56(exact)
    if construction == "split":
        return split_56(exact)
    if exact:
        logger.warning("the evi basis is built in floating point; writing scalar=float")
    return evi_56()


def cmd_build(args):
    g = build_generators(args.construction, args.rep, args.scalar)
    if args.scalar == "exact" and not g.exact:
        logger.warning("%s did not stay exact; writing scalar=float", g.construction)
    write_e7mat(g, args.out)
    print(f"wrote {len(g)} generators ({g.rep_dim}x{g.rep_dim}) to {args.out}")
    return 0


def cmd_verify(args):
    report = run_suite(args.suite, args.construction, args.tol, args.seed)
    if args.report:
        report.write(args.report)
    print(report.get_as_string())
    worst = report.worst()
    if worst is not None:
        print(f"worst offender: {worst.name} (residual {worst.residual:.3e}, tolerance {worst.tolerance:g})",
              file=sys.stderr)
        return 1
    return 0


def cmd_sample(args):
    if args.n < 1:
        raise UsageError(f"--n must be at least 1, got {args.n}")
    sampler = SplitHaarSampler(seed=args.seed)
    mats, residual = [], 0.0
    for _ in range(args.n):
        g, _ = sampler.sample()
        residual = max(residual, g.unitarity_residual())
        mats.append(SparseMatrix.from_dense(g.matrix))
    samples = GeneratorSet("split-haar", 56, mats, [f"g_{k + 1}" for k in range(args.n)])
    write_e7mat(samples, args.out)
    with open(f"{args.out}.manifest", "w", encoding="utf-8") as f:
        f.write(f"seed={args.seed} count={args.n} max_unitarity_residual={residual:.3e}\n")
    print(f"wrote {args.n} samples to {args.out} (max unitarity residual {residual:.3e}, "
          f"acceptance rate {sampler.acceptance_rate:.3e})")
    return 0


def cmd_volume(args):
    print(group_volume(args.target))
    return 0


def cmd_integral(args):
    if min(args.a, args.b, args.c) < 1:
        raise UsageError("--a, --b and --c must be positive integers")
    closed = integral_closed(args.a, args.b, args.c)
    print(f"I({args.a},{args.b},{args.c}) = {render_fraction(closed)} = {closed}")
    print(f"8·I = {render_fraction(8 * closed)}")
    if args.n is not None:
        if args.n < 8:
            raise UsageError(f"--n must be at least 8, got {args.n}")
        estimate = integral_quadrature(args.a, args.b, args.c, args.n)
        print(f"quadrature n={args.n}: {estimate:.17g} (relative discrepancy "
              f"{abs(estimate - float(closed)) / float(closed):.3e})")
    return 0


def make_parser():
    parser = argparse.ArgumentParser(prog="e7-forge", description="Explicit E7 generators, charts and volumes.")
    parser.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write a generator set as E7MAT")
    p.add_argument("--construction", choices=CONSTRUCTIONS, required=True)
    p.add_argument("--rep", type=int, choices=[56, 133], default=56)
    p.add_argument("--scalar", choices=["exact", "float"], default="float")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run a verification suite and write a JSON report")
    p.add_argument("--suite", choices=SUITE_NAMES, default="all")
    p.add_argument("--construction", choices=CONSTRUCTIONS, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="Haar-sample E7 through the split chart")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("volume", help="exact group volume")
    p.add_argument("--target", choices=TARGETS, required=True)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("integral", help="closed form and quadrature of I(a,b,c)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_integral)
    return parser


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    logging.basicConfig(level=getattr(logging, args.log_level), format=LOG_FORMAT)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"e7-forge: error: {exc}", file=sys.stderr)
        return 2
    except E7ForgeError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
