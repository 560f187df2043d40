"""Command-line surface: sampling, counting, verification, benchmarking and
static rendering.

Exit codes: 0 success, 1 runtime or verification failure, 2 usage errors.
The sampling seed comes from --seed, else the PLANEPART_SEED environment
variable, else fresh entropy; it is always echoed so runs can be replayed.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import records, render
from .dist import RandomSource, _seed_from_env
from .oracle import boxed_counts, exact_counts, skew_counts
from .sampler import (
    sample_partitions,
    sample_partitions_boxed,
    sample_partitions_skew,
)

_FORMATS = ("matrix", "json", "cubes", "svg", "ppm")
_COUNT_CAP_UNCONSTRAINED = 100_000


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return int(args.seed)
    env = _seed_from_env(os.environ.get("PLANEPART_SEED"))
    if env is not None:
        return env
    return RandomSource().seed  # entropy-derived


def _run_sample_task(task: dict) -> dict:
    """Draw one sample on its own substream and build its record."""
    rng = RandomSource(task["seed"], task["stream"])
    kind = task["kind"]
    n = task["n"]
    eps = task["epsilon"]
    mode = "exact" if eps is None else "approximate"
    if kind == "plain":
        rep = sample_partitions(
            n, rng, epsilon=eps, max_attempts=task["max_attempts"], x=task["x"]
        )
        return records.build_record(rep, mode, n, eps)
    if kind == "boxed":
        rep = sample_partitions_boxed(
            task["a"], task["b"], n, rng, epsilon=eps,
            max_attempts=task["max_attempts"], x=task["x"],
        )
        return records.build_record(rep, mode, n, eps, a=task["a"], b=task["b"])
    rep = sample_partitions_skew(
        records.parse_domain_spec(task["domain"]), n, rng, epsilon=eps,
        max_attempts=task["max_attempts"], x=task["x"],
    )
    return records.build_record(rep, mode, n, eps)


def _emit_records(recs, fmt, out_path):
    if fmt in ("svg", "ppm") and len(recs) != 1:
        raise ValueError("image formats support a single sample; use --format json")
    if fmt == "json":
        text = "".join(records.record_to_json(r) + "\n" for r in recs)
        data = text.encode()
    elif fmt == "matrix":
        text = "\n".join(records.record_to_matrix_text(r) for r in recs)
        data = text.encode()
    elif fmt == "cubes":
        text = "\n".join(records.record_to_cubes_text(r) for r in recs)
        data = text.encode()
    elif fmt == "svg":
        data = render.render_svg(records.record_heights(recs[0])).encode()
    else:
        data = render.render_ppm(records.record_heights(recs[0]))
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def _cmd_sample(args, kind):
    if args.epsilon is not None and not (0.0 < args.epsilon < 1.0):
        raise ValueError("--epsilon must lie strictly in (0, 1)")
    if args.x is not None and not (0.0 < args.x < 1.0):
        raise ValueError("--x must lie strictly in (0, 1)")
    if args.format in ("svg", "ppm") and args.count != 1:
        raise ValueError("image formats support a single sample; use --format json")
    if args.count < 1:
        raise ValueError("--count must be >= 1")
    seed = _resolve_seed(args)
    print(f"seed = {seed}", file=sys.stderr)
    base = {
        "kind": kind,
        "n": args.n,
        "epsilon": args.epsilon,
        "seed": seed,
        "max_attempts": args.max_attempts,
        "x": getattr(args, "x", None),
    }
    if kind == "boxed":
        base.update(a=args.a, b=args.b)
    if kind == "skew":
        records.parse_domain_spec(args.domain)  # fail fast on bad grammar
        base.update(domain=args.domain)
    tasks = [dict(base, stream=t) for t in range(args.count)]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            recs = list(pool.map(_run_sample_task, tasks))
    else:
        recs = [_run_sample_task(t) for t in tasks]
    _emit_records(recs, args.format, args.out)
    return 0


def _cmd_count(args):
    n_kinds = (args.a is not None or args.b is not None) + (args.domain is not None)
    if (args.a is None) != (args.b is None):
        raise ValueError("--a and --b must be given together")
    if n_kinds > 1:
        raise ValueError("choose one of --a/--b or --domain")
    if args.a is not None:
        table = boxed_counts(args.a, args.b, args.upto)
    elif args.domain is not None:
        table = skew_counts(records.parse_domain_spec(args.domain), args.upto)
    else:
        if args.upto > _COUNT_CAP_UNCONSTRAINED:
            raise ValueError(f"--upto is capped at {_COUNT_CAP_UNCONSTRAINED}")
        table = exact_counts(args.upto)
    out = sys.stdout
    for c in table.coefficients:
        out.write(f"{c}\n")
    return 0


def _cmd_verify(args):
    from .verify import run_small_suite, run_stat_suite

    seed = args.seed if args.seed is not None else 0
    reports = []
    if args.suite in ("small", "all"):
        reports += run_small_suite(seed)
    if args.suite in ("stat", "all"):
        reports += run_stat_suite(seed)
    failed = [r for r in reports if not r.passed]
    for r in reports:
        print(r)
    if failed:
        print(f"{len(failed)} of {len(reports)} checks failed", file=sys.stderr)
        return 1
    return 0


def _cmd_bench(args):
    from .verify import bench_scaling

    sizes = [int(float(s)) for s in args.sizes.split(",") if s]
    seed = _resolve_seed(args)
    print(f"seed = {seed}", file=sys.stderr)
    table = bench_scaling(
        sizes, args.mode, RandomSource(seed), epsilon=args.epsilon, runs=args.runs
    )
    print(f"{'n':>10}  {'median_s':>10}  {'rejections':>10}  {'max_hook':>8}")
    for row in table.rows:
        print(
            f"{row.n:>10}  {row.median_seconds:>10.4f}  "
            f"{row.median_rejections:>10.1f}  {row.median_max_hook:>8.0f}"
        )
    if table.fitted_exponent is not None:
        print(f"fitted time exponent: {table.fitted_exponent:.3f}")
    return 0


def _cmd_render(args):
    with open(args.infile, "r", encoding="utf-8") as fh:
        record = records.record_from_json(fh.read())
    _emit_records([record], args.format, args.out)
    return 0


def _add_sample_flags(p, boxed=False, skew=False):
    p.add_argument("--n", type=int, required=True, help="target size")
    p.add_argument("--epsilon", type=float, default=None,
                   help="tolerance ratio; absent = exact-size mode")
    p.add_argument("--x", type=float, default=None,
                   help="expert override of the tuned parameter")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=_FORMATS, default="matrix")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--count", type=int, default=1, help="number of independent samples")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for --count")
    p.add_argument("--max-attempts", type=int, default=None,
                   help="abort the rejection loop after this many attempts")
    if boxed:
        p.add_argument("--a", type=int, required=True)
        p.add_argument("--b", type=int, required=True)
    if skew:
        p.add_argument("--domain", required=True,
                       help="staircase spec AxB[-A'xB'...] (removed corner rectangles)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planepart",
        description="Uniform random plane partitions of a given size.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="unconstrained plane partition")
    _add_sample_flags(p)
    p.set_defaults(func=lambda a: _cmd_sample(a, "plain"))

    p = sub.add_parser("sample-boxed", help="partition boxed in an a x b rectangle")
    _add_sample_flags(p, boxed=True)
    p.set_defaults(func=lambda a: _cmd_sample(a, "boxed"))

    p = sub.add_parser("sample-skew", help="skew partition on a staircase domain")
    _add_sample_flags(p, skew=True)
    p.set_defaults(func=lambda a: _cmd_sample(a, "skew"))

    p = sub.add_parser("count", help="exact coefficient tables")
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--domain", default=None)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("verify", help="self-verification suites")
    p.add_argument("--suite", choices=("small", "stat", "all"), default="small")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", help="scaling benchmark")
    p.add_argument("--sizes", default="1e4,1e5,1e6")
    p.add_argument("--mode", choices=("exact", "approx"), default="approx")
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--runs", type=int, default=5)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("render", help="re-render a saved json record")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=("svg", "ppm"), default="svg")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
