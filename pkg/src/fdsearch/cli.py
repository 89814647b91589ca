"""bench: command-line harness.

    bench run --model queens:8 --strategy recollect-adaptive --d 8 \
              --flavor chunk --mode all --repeats 20 [--verify]
    bench sweep --models queens:20,golomb:9 --strategies recollect-fixed \
              --distances 1,3,5,10,20,40,80,160,320
    bench verify --model queens:6 --a copy --b recollect
    bench backends [--model queens:8] [--mode all] [--repeats 3]

CSV goes to stdout or --out FILE. Exit codes: 0 success, 1 usage error,
2 lockstep verification divergence.
"""

import argparse
import sys

from . import kernel
from .bench import (DEFAULT_DISTANCES, RunConfig, UsageError,
                    VerificationError, resolve_mode, run, run_to_csv, sweep,
                    verify_lockstep)
from .models import REGISTRY, parse_model
from .restoration import STRATEGY_NAMES, parse_strategy


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w"), True


def _add_common(parser):
    parser.add_argument("--out", default=None, help="CSV output file"
                        " (default stdout)")


def cmd_run(args):
    spec = parse_model(args.model)
    strategy = parse_strategy(args.strategy, d=args.d, flavor=args.flavor)
    mode = resolve_mode(spec, args.mode)
    cfg = RunConfig(spec, strategy, mode=mode, repeats=args.repeats,
                    verify=args.verify, node_budget=args.node_budget)
    try:
        result = run(cfg)
    except VerificationError as exc:
        print(exc.report.describe(), file=sys.stderr)
        return 2
    out, close = _open_out(args.out)
    try:
        run_to_csv(result, out)
    finally:
        if close:
            out.close()
    if result.time_warn:
        print("warning: timing variation coefficient %.1f%% exceeds 2%%"
              % (100 * result.time_cv), file=sys.stderr)
    return 0


def cmd_sweep(args):
    strategies = [s for s in args.strategies.split(",") if s]
    models = _regroup_models(args.models)
    if not models or not strategies:
        raise UsageError("sweep needs --models and --strategies")
    distances = [int(d) for d in args.distances.split(",")]
    out, close = _open_out(args.out)
    try:
        sweep(models, strategies, distances, mode=args.mode,
              repeats=args.repeats, out=out)
    finally:
        if close:
            out.close()
    return 0


def _regroup_models(text):
    """Split a models list where parameters may contain commas:
    "queens:20,golomb:9" but also "langford:2,4". A segment starting
    with a known model name begins a new entry."""
    out = []
    for part in text.split(","):
        if not part:
            continue
        name = part.partition(":")[0]
        if name in REGISTRY:
            out.append(part)
        elif out and part.isdigit():
            out[-1] += "," + part
        else:
            raise UsageError("cannot parse model list %r at %r"
                             % (text, part))
    return out


def cmd_verify(args):
    spec = parse_model(args.model)
    a = parse_strategy(args.a, d=args.d, flavor=args.flavor)
    b = parse_strategy(args.b, d=args.d, flavor=args.flavor)
    mode = resolve_mode(spec, args.mode)
    report = verify_lockstep(spec, a, b, mode=mode,
                             node_budget=args.node_budget)
    print(report.describe())
    return 0 if report.clean else 2


def cmd_backends(args):
    """Time the same run under each available kernel backend."""
    spec = parse_model(args.model)
    strategy = parse_strategy(args.strategy, d=args.d, flavor=args.flavor)
    mode = resolve_mode(spec, args.mode)
    previous = kernel.ACTIVE_BACKEND
    print("backend,time_ms_mean,nodes,propagations")
    try:
        for name in kernel.available_backends():
            kernel.use_backend(name)
            cfg = RunConfig(spec, strategy, mode=mode, repeats=args.repeats)
            result = run(cfg)
            print("%s,%.3f,%d,%d" % (name, result.time_ms_mean,
                                     result.stats.nodes,
                                     result.stats.propagations))
    finally:
        kernel.use_backend(previous)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bench",
        description="Restoration-strategy benchmark harness "
                    "(models: %s; strategies: %s)"
                    % (", ".join(sorted(REGISTRY)),
                       ", ".join(STRATEGY_NAMES)))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one model/strategy cell")
    p.add_argument("--model", required=True, help="name:params, e.g. queens:8")
    p.add_argument("--strategy", required=True)
    p.add_argument("--d", type=int, default=None, help="copy distance")
    p.add_argument("--flavor", choices=("chunk", "variable"),
                   default="chunk", help="recollection restore flavor")
    p.add_argument("--mode", default="default",
                   choices=("default", "first", "all", "best"))
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--verify", action="store_true",
                   help="lockstep-check against the copying oracle")
    p.add_argument("--node-budget", type=int, default=10 ** 5)
    _add_common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="cross product of models x strategies "
                                     "x copy distances")
    p.add_argument("--models", required=True,
                   help="comma-separated, e.g. queens:20,golomb:9")
    p.add_argument("--strategies", required=True,
                   help="comma-separated strategy names")
    p.add_argument("--distances",
                   default=",".join(map(str, DEFAULT_DISTANCES)))
    p.add_argument("--mode", default="default")
    p.add_argument("--repeats", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="lockstep-compare two strategies")
    p.add_argument("--model", required=True)
    p.add_argument("--a", required=True, help="reference strategy")
    p.add_argument("--b", required=True, help="candidate strategy")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--flavor", choices=("chunk", "variable"),
                   default="chunk")
    p.add_argument("--mode", default="default")
    p.add_argument("--node-budget", type=int, default=10 ** 5)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("backends",
                       help="compare compiled and pure-Python kernels")
    p.add_argument("--model", default="queens:8")
    p.add_argument("--strategy", default="copy")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--flavor", choices=("chunk", "variable"),
                   default="chunk")
    p.add_argument("--mode", default="default")
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=cmd_backends)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
