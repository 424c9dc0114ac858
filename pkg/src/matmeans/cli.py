"""Command line entry point.

Subcommands::

    matmeans verify --props all --dim 2,3,4,6 --trials 500 --seed 7 --report out.json
    matmeans search --hypothesis conj-1.7 --budget 10000 --seed 0
    matmeans eval --mean mean:geo:alpha=0.5 --A a.json --B b.json
    matmeans eval --mmean mmean:karcher:w=0.2,0.3,0.5 --mats a.json b.json c.json
    matmeans antinorm --spec anorm:kyfan:k=2 --A a.json

Exit codes: 0 when every outcome is as expected (designed negative controls
included), 1 for an unexpected failure, 2 for a configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import ConfigError, MatmeansError
from .io import load_matrix, matrix_to_json

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2


def _dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise ConfigError(f"--dim expects integers, got {text!r}") from exc
    if not dims:
        raise ConfigError("--dim is empty")
    return dims


def _scalar(text: str):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def parse_knobs(items) -> dict:
    """``key=value`` pairs; ``|`` separates alternatives to sample from."""
    knobs = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"knob must look like key=value, got {item!r}")
        parts = [_scalar(v) for v in value.split("|")]
        knobs[key.strip()] = parts if len(parts) > 1 else parts[0]
    return knobs


def _load(path: str) -> np.ndarray:
    try:
        return load_matrix(path)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read matrix {path}: {exc}") from exc


def _write(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_verify(args) -> int:
    from .verify import PropertyCase, run_campaign
    from .verify.runner import expand_ids

    knobs = parse_knobs(args.knob)
    dims = _dims(args.dim)
    cases = [PropertyCase(pid, dims, args.trials, args.seed, args.tol, knobs) for pid in expand_ids(args.props)]
    report = run_campaign(cases, args.parallel)
    for v in report.verdicts:
        flag = "ok" if v.as_expected else "UNEXPECTED"
        print(f"{v.id:26s} expected={v.expected:5s} trials={v.trials:5d} failures={v.failures:5d} "
              f"worst={v.worst_margin:+.3e}  {flag}")  # fmt: skip
    if args.report:
        Path(args.report).write_text(report.to_json() + "\n")
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
    return EXIT_UNEXPECTED if report.unexpected else EXIT_OK


def cmd_search(args) -> int:
    from .verify import search_counterexample

    result = search_counterexample(args.hypothesis, args.budget, args.seed, args.tol, args.commuting)
    _write(json.dumps(result.to_dict(), indent=2), args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    from .specs import mean_from_spec, mmean_from_spec

    if args.mean:
        if args.A is None or args.B is None:
            raise ConfigError("--mean needs --A and --B")
        out = mean_from_spec(args.mean).matrix(_load(args.A), _load(args.B))
    elif args.mmean:
        if not args.mats:
            raise ConfigError("--mmean needs --mats")
        out = mmean_from_spec(args.mmean).apply(np.stack([_load(p) for p in args.mats]))
    else:
        raise ConfigError("give --mean or --mmean")
    _write(json.dumps(matrix_to_json(out)), args.out)
    return EXIT_OK


def cmd_antinorm(args) -> int:
    from .antinorms import antinorm_from_spec, norm_from_spec

    a = _load(args.A)
    spec = args.spec.strip()
    fn = norm_from_spec(spec) if spec.startswith("norm:") else antinorm_from_spec(spec)
    print(repr(float(fn(a))))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matmeans", description="Operator means, anti-norms and inequality checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a seeded property campaign")
    v.add_argument("--props", default="all", help="comma-separated ids or 'all'")
    v.add_argument("--dim", default="3", help="matrix size, or a comma-separated list cycled over trials")
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=7)
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--report", help="write the JSON report here")
    v.add_argument("--csv", help="write a CSV summary here")
    v.add_argument("--parallel", type=int, default=1)
    v.add_argument("--knob", action="append", metavar="KEY=VALUE", help="pin a sampler choice; '|' separates alternatives")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="look for a counterexample to an open hypothesis")
    s.add_argument("--hypothesis", required=True)
    s.add_argument("--budget", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--commuting", action="store_true", help="gm-le-lm only: commuting inputs")
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    e = sub.add_parser("eval", help="evaluate a two- or m-variable mean")
    e.add_argument("--mean")
    e.add_argument("--A")
    e.add_argument("--B")
    e.add_argument("--mmean")
    e.add_argument("--mats", nargs="+")
    e.add_argument("--out")
    e.set_defaults(func=cmd_eval)

    a = sub.add_parser("antinorm", help="evaluate an anti-norm or norm spec")
    a.add_argument("--spec", required=True)
    a.add_argument("--A", required=True)
    a.set_defaults(func=cmd_antinorm)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MatmeansError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
