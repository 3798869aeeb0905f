"""``stabgeom`` command line: exact counts, bounds, sampling, homology and experiments.

Exit codes: 0 success, 1 a result row failed its assertion, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction

from . import counts
from .errors import StabGeomError
from .experiments import ExperimentConfig, ExperimentResult, ghz_bound, run_experiment, run_oracle_suite
from .fileformat import load_subspace_file
from .homology import homology_profile

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))
    return [getattr(args, n) for n in names]


def _count(args) -> tuple[int, int | None]:
    """(value, total) where total is the size of the ambient set for --ratio."""
    fam, q = args.family, args.q
    if fam == "G":
        l, k = _need(args, "l", "k")
        return counts.grassmannian_count(l, k, q), counts.grassmannian_count(l, k, q)
    if fam == "F":
        l, k, j = _need(args, "l", "k", "j")
        return counts.avoid_count_F(l, k, j, q), counts.grassmannian_count(l, k, q)
    if fam == "H":
        l, k, j, s = _need(args, "l", "k", "j", "s")
        return counts.intersection_count_H(l, k, j, s, q), counts.grassmannian_count(l, k, q)
    if fam == "L":
        (l,) = _need(args, "l")
        return counts.lagrangian_count(l, q), counts.lagrangian_count(l, q)
    if fam == "Lk":
        l, k = _need(args, "l", "k")
        return counts.isotropic_count(l, k, q), None
    if fam == "K":
        l, j = _need(args, "l", "j")
        return counts.avoidE_count_K(l, j, q), counts.lagrangian_count(l, q)
    if fam == "J":
        l, j = _need(args, "l", "j")
        return counts.lag_avoid_count_J(l, j, q), counts.lagrangian_count(l, q)
    if fam == "M":
        l, j, s = _need(args, "l", "j", "s")
        return counts.lag_intersection_count_M(l, j, s, q), counts.lagrangian_count(l, q)
    if fam == "chi_css":
        l, k = _need(args, "l", "k")
        return counts.expected_euler_css(l, k), None
    (l,) = _need(args, "l")
    return counts.expected_euler_lag(l), None


def cmd_count(args, out) -> int:
    value, total = _count(args)
    print(value, file=out)
    if args.ratio:
        if total is None:
            raise UsageError(f"--ratio is not defined for family {args.family}")
        r = Fraction(value, total)
        print(f"{r.numerator}/{r.denominator} {float(r)!r}", file=out)
    return EXIT_OK


def cmd_bound(args, out) -> int:
    kind, q = args.kind, args.q
    if kind == "css":
        l, k, j, N = _need(args, "l", "k", "j", "N")
        value = counts.deviation_bound_css(l, k, j, _single(N), q)
    elif kind == "lag":
        l, j, N = _need(args, "l", "j", "N")
        value = counts.deviation_bound_lag(l, j, _single(N), q)
    elif kind == "tail":
        (N,) = _need(args, "N")
        value = counts.tail_bound(q, _single(N), 1.0 if args.epsilon is None else args.epsilon)
    else:
        l, N = _need(args, "l", "N")
        value = ghz_bound(l, _single(N))
    print(repr(value), file=out)
    return EXIT_OK


def _single(Ns: tuple[int, ...]) -> int:
    if len(Ns) != 1:
        raise UsageError("--N must be a single value here")
    return Ns[0]


def _config(args, kind: str) -> ExperimentConfig:
    kw = dict(kind=kind, q=args.q, k=args.k, j=args.j, epsilon=args.epsilon, seed=args.seed,
              workers=args.workers, stream=args.streams,
              space="lagrangian" if args.lagrangian else "grassmannian")
    (kw["l"],) = _need(args, "l")
    if args.N is not None:
        kw["N_values"] = args.N
    if args.trials is not None:
        kw["trials"] = args.trials
    if args.concentration:
        kw["concentration"] = True
    return ExperimentConfig(**kw)


def _emit(res: ExperimentResult, args, out) -> int:
    text = res.to_json() + "\n" if args.format == "json" else res.to_csv()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_sample(args, out) -> int:
    if args.trials is None:
        args.trials = 10_000
    return _emit(run_experiment(_config(args, "sample")), args, out)


def cmd_experiment(args, out) -> int:
    return _emit(run_experiment(_config(args, args.kind)), args, out)


def cmd_verify(args, out) -> int:
    return _emit(run_oracle_suite(), args, out)


def cmd_homology(args, out) -> int:
    sf = load_subspace_file(args.file)
    L = sf.subspace()
    prof = homology_profile(L, sf.parties())
    print("j\tdim C^j\tdim H^j", file=out)
    for j, (c, h) in enumerate(zip(prof.chain_dims, prof.h_dims)):
        print(f"{j}\t{c}\t{h}", file=out)
    print(f"euler\t{prof.euler}", file=out)
    if sf.kind != "plain":
        print(f"ghz\t{prof.ghz_count}", file=out)
    return EXIT_OK


def _int_list(text: str) -> tuple[int, ...]:
    """'3', '1,2,4' or '1..4'."""
    try:
        if ".." in text:
            a, b = text.split("..")
            vals = tuple(range(int(a), int(b) + 1))
        else:
            vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError(f"empty range: {text!r}")
    return vals


def _default_seed() -> int:
    raw = os.environ.get("STABGEOM_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        return -1  # rejected in main with a diagnostic


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=2, help="field order (default 2)")
    common.add_argument("--l", type=int, help="number of parties / ambient dimension")
    common.add_argument("--k", type=int)
    common.add_argument("--j", type=int)
    common.add_argument("--s", type=int)
    common.add_argument("--N", type=_int_list, help="qudits per party: 3, 1,2,4 or 1..4")
    common.add_argument("--epsilon", type=float)

    run = argparse.ArgumentParser(add_help=False)
    run.add_argument("--trials", type=int)
    run.add_argument("--seed", type=int, default=_default_seed(), help="master seed (default $STABGEOM_SEED or 0)")
    run.add_argument("--streams", type=int, default=0, help="RNG stream offset (independent replicates)")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--out", help="write to this path instead of stdout")
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.add_argument("--lagrangian", action="store_true", help="sample Lagrangians of F_q^{2l}")
    run.add_argument("--concentration", action="store_true",
                     help="require the even-l concentration statements (lag_theorem)")

    p = argparse.ArgumentParser(prog="stabgeom", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="exact counting formulas")
    c.add_argument("--family", required=True,
                   choices=("G", "F", "H", "L", "Lk", "K", "J", "M", "chi_css", "chi_lag"))
    c.add_argument("--ratio", action="store_true", help="also print the fraction of the ambient set")
    c.set_defaults(func=cmd_count)

    b = sub.add_parser("bound", parents=[common], help="deviation, tail and GHZ bounds")
    b.add_argument("--kind", required=True, choices=("css", "lag", "tail", "ghz"))
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("sample", parents=[common, run], help="empirical sampler frequencies as CSV")
    s.set_defaults(func=cmd_sample)

    h = sub.add_parser("homology", help="homology profile of a subspace file")
    h.add_argument("file")
    h.set_defaults(func=cmd_homology)

    e = sub.add_parser("experiment", parents=[common, run], help="Monte Carlo experiments as CSV")
    e.add_argument("--kind", required=True, choices=("intersection", "css_theorem", "lag_theorem", "ghz"))
    e.set_defaults(func=cmd_experiment)

    v = sub.add_parser("verify", help="closed forms against exhaustive enumeration")
    v.add_argument("--out")
    v.add_argument("--format", choices=("csv", "json"), default="csv")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if getattr(args, "seed", 0) is not None and getattr(args, "seed", 0) < 0:
        print("stabgeom: error: seed must be a non-negative integer (check STABGEOM_SEED)", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, StabGeomError, ValueError) as exc:
        print(f"stabgeom {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
