"""Command line surface: closed forms, sampling, Monte Carlo estimation, tail
experiments, the dimension sweep and the verification suites.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
Numeric output uses the shortest round-tripping decimal representation, so
repeated runs with identical flags emit identical bytes.
"""

import argparse
import json
import math
import os
import sys

from . import closed_forms, estimators, svg, verification
from .sampling import (RngStream, sample_haar_pure, sample_haar_unitary,
                       sample_hs_mixed)

_THREADS_ENV = "HAAR_COHERENCE_THREADS"

_CLOSED_FORM_MEASURES = ("pure-avg", "mixed-avg", "cr-pure-avg", "cr-mixed-avg",
                         "max", "subspace-dim")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value!r}")
    return value


def _default_threads():
    raw = os.environ.get(_THREADS_ENV)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise ValueError(f"{_THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def _print_record(record, fmt):
    if fmt == "json":
        print(json.dumps(record))
    else:
        print(",".join(record.keys()))
        print(",".join(repr(v) if isinstance(v, float) else str(v)
                       for v in record.values()))


def _cmd_closed_form(args):
    if args.measure == "subspace-dim":
        if args.epsilon is None:
            raise ValueError("--epsilon is required for --measure subspace-dim")
        value = closed_forms.coherent_subspace_dim(args.dim, args.epsilon)
    else:
        if args.epsilon is not None:
            raise ValueError(f"--epsilon does not apply to --measure {args.measure}")
        value = {
            "pure-avg": closed_forms.avg_coherence_pure,
            "mixed-avg": closed_forms.avg_coherence_mixed,
            "cr-pure-avg": closed_forms.avg_cr_pure,
            "cr-mixed-avg": closed_forms.avg_cr_mixed,
            "max": closed_forms.max_coherence,
        }[args.measure](args.dim)
    print(json.dumps({"measure": args.measure, "N": args.dim, "value": value}))
    return 0


def _cmd_mc(args):
    est = estimators.estimate_average(args.ensemble, args.dim, args.samples,
                                      args.seed, args.measure, args.chunk,
                                      args.threads)
    record = {"ensemble": args.ensemble, "N": args.dim, "measure": args.measure,
              "mean": est.mean, "stderr": est.stderr, "samples": est.n_samples,
              "seed": args.seed}
    _print_record(record, args.format)
    return 0


def _cmd_tail(args):
    tail = estimators.estimate_tail(args.ensemble, args.dim, args.epsilon,
                                    args.samples, args.seed, args.chunk,
                                    args.threads)
    record = {"ensemble": args.ensemble, "N": args.dim, "epsilon": tail.epsilon,
              "frequency": tail.frequency, "bound": tail.bound,
              "samples": tail.n_samples, "seed": args.seed}
    _print_record(record, args.format)
    return 0


def _cmd_figure1(args):
    rows = estimators.figure1_sweep(args.max_exp, args.samples, args.seed,
                                    args.chunk, args.threads)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write("N,analytic,mc_mean,mc_stderr,n_samples,seed\n")
            for row in rows:
                handle.write(f"{row.n},{row.analytic!r},{row.mc_mean!r},"
                             f"{row.mc_stderr!r},{row.n_samples},{row.seed}\n")
    except OSError as exc:
        raise ValueError(f"cannot write {args.out}: {exc}")
    if args.svg is not None:
        try:
            svg.write_sweep_svg(args.svg, rows)
        except OSError as exc:
            raise ValueError(f"cannot write {args.svg}: {exc}")
    print(f"wrote {len(rows)} rows to {args.out}"
          + (f" and chart to {args.svg}" if args.svg else ""))
    return 0


def _cmd_verify(args):
    results = verification.run_suite(args.suite, args.seed)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name:<{width}}  {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed (suite={args.suite}, "
          f"seed={args.seed})")
    return 0 if failed == 0 else 1


def _cmd_sample(args):
    rng = RngStream(args.seed, 0)
    if args.ensemble == "pure":
        value = sample_haar_pure(rng, args.dim)
    elif args.ensemble == "mixed":
        value = sample_hs_mixed(rng, args.dim)
    else:
        value = sample_haar_unitary(rng, args.dim)
    flat = value.ravel()  # row-major
    print(json.dumps({"ensemble": args.ensemble, "dim": args.dim, "seed": args.seed,
                      "re": flat.real.tolist(), "im": flat.imag.tolist()}))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="haar-coherence",
        description="Skew information-based coherence of random quantum states: "
                    "closed forms, samplers, Monte Carlo experiments and "
                    "verification oracles.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closed-form", help="evaluate a closed-form quantity",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--dim", type=_positive_int, required=True, help="Hilbert space dimension")
    p.add_argument("--measure", choices=_CLOSED_FORM_MEASURES, required=True)
    p.add_argument("--epsilon", type=_positive_float, default=None,
                   help="deviation parameter (subspace-dim only)")
    p.set_defaults(func=_cmd_closed_form)

    p = sub.add_parser("mc", help="Monte Carlo average of a coherence measure",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--ensemble", choices=("pure", "mixed"), required=True)
    p.add_argument("--dim", type=_positive_int, required=True)
    p.add_argument("--samples", type=_positive_int, default=100000)
    p.add_argument("--seed", type=_seed, default=42)
    p.add_argument("--measure", choices=("skew", "rel-ent"), default="skew")
    p.add_argument("--chunk", type=_positive_int, default=estimators.DEFAULT_CHUNK_SIZE)
    p.add_argument("--threads", type=_positive_int, default=None,
                   help=f"worker threads (default: ${_THREADS_ENV} or 1)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_mc)

    p = sub.add_parser("tail", help="empirical tail frequency vs concentration bound",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--ensemble", choices=("pure", "mixed"), required=True)
    p.add_argument("--dim", type=_positive_int, required=True)
    p.add_argument("--epsilon", type=_positive_float, required=True)
    p.add_argument("--samples", type=_positive_int, default=100000)
    p.add_argument("--seed", type=_seed, default=42)
    p.add_argument("--chunk", type=_positive_int, default=estimators.DEFAULT_CHUNK_SIZE)
    p.add_argument("--threads", type=_positive_int, default=None,
                   help=f"worker threads (default: ${_THREADS_ENV} or 1)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_tail)

    p = sub.add_parser("figure1", help="dimension sweep of the mixed-state average",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--max-exp", type=_positive_int, required=True,
                   help="sweep N = 2^m for m = 1..max-exp")
    p.add_argument("--samples", type=_positive_int, default=100000)
    p.add_argument("--seed", type=_seed, default=42)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--svg", default=None, help="optional SVG chart path")
    p.add_argument("--chunk", type=_positive_int, default=estimators.DEFAULT_CHUNK_SIZE)
    p.add_argument("--threads", type=_positive_int, default=None,
                   help=f"worker threads (default: ${_THREADS_ENV} or 1)")
    p.set_defaults(func=_cmd_figure1)

    p = sub.add_parser("verify", help="run the verification suites",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--suite", choices=verification.SUITES, default="all")
    p.add_argument("--seed", type=_seed, default=42)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sample", help="draw one state or unitary as JSON",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--ensemble", choices=("pure", "mixed", "unitary"), required=True)
    p.add_argument("--dim", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, default=42)
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=_cmd_sample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "threads") and args.threads is None:
            args.threads = _default_threads()
        return args.func(args)
    except closed_forms.PrecisionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main():
    raise SystemExit(main())
