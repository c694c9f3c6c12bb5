"""Command-line pipeline: sampling campaigns, oracle checks, statistics.

Logs go to stderr, data goes to files or stdout.  Exit codes: 0 success,
1 runtime/IO failure, 2 usage error, 3 verification failure.

Option precedence is flags > environment (GEMSURF_SEED, GEMSURF_WORKERS)
> config file > built-in defaults.  The config file is flat ``key = value``
text mirroring the long flag names, '#' starts a comment.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from .oracle import enumerate_space, verify_sampler
from .sampler import BatchConfig, read_records, run_batch, write_csv, write_jsonl
from .stats import aggregate, fit_mean_genus, fit_to_json, read_stats_csv, write_stats_csv

log = logging.getLogger("gemsurf")

ENV_SEED = "GEMSURF_SEED"
ENV_WORKERS = "GEMSURF_WORKERS"


def _load_config(path: str | None) -> dict[str, str]:
    if not path:
        return {}
    config: dict[str, str] = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"config line is not 'key = value': {line!r}")
            config[key.strip().replace("-", "_")] = value.strip()
    return config


def _resolve_int(flag_value, env_name, config, key, default) -> int:
    if flag_value is not None:
        return flag_value
    if env_name and os.environ.get(env_name):
        return int(os.environ[env_name])
    if key in config:
        return int(config[key])
    return default


def _parse_n_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"--n-range expects 'LOW..HIGH', got {text!r}")
    lo, hi = int(lo), int(hi)
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range {text!r}")
    return list(range(lo, hi + 1))


def _output_path(template: str, n: int, multiple: bool) -> Path:
    if "{n}" in template:
        return Path(template.format(n=n))
    path = Path(template)
    if multiple:
        return path.with_name(f"{path.stem}_n{n}{path.suffix}")
    return path


def cmd_sample(args, config) -> int:
    seed = _resolve_int(args.seed, ENV_SEED, config, "seed", 0)
    workers = _resolve_int(args.workers, ENV_WORKERS, config, "workers", 1)
    if args.n is not None:
        ns = [args.n]
    elif args.n_range:
        ns = _parse_n_range(args.n_range)
    else:
        log.error("one of --n or --n-range is required")
        return 2
    fmt = args.format
    template = args.output or f"samples.{fmt}"
    write = write_csv if fmt == "csv" else write_jsonl
    for n in ns:
        out = _output_path(template, n, multiple=len(ns) > 1)
        cfg = BatchConfig(
            n=n,
            num_samples=args.count,
            master_seed=seed,
            num_workers=workers,
            emit_signatures=args.signatures,
            output_path=str(out),
            output_format=fmt,
        )
        rejected = 0
        start = time.perf_counter()

        def counting(records):
            nonlocal rejected
            for record in records:
                rejected += record.rejected_attempts
                yield record

        count = write(counting(run_batch(cfg)), cfg.output_path,
                      signatures=args.signatures)
        wall = time.perf_counter() - start
        fraction = rejected / (rejected + count)
        meta = {
            "n": n,
            "num_samples": count,
            "master_seed": seed,
            "num_workers": workers,
            "wall_time_seconds": wall,
            "rejected_total": rejected,
            "rejected_fraction": fraction,
        }
        with open(f"{out}.meta.json", "w") as fh:
            json.dump(meta, fh, indent=2)
        log.info(
            "n=%d: accepted %d, rejected %d (%.4f), wall %.2fs -> %s",
            n, count, rejected, fraction, wall, out,
        )
    return 0


def cmd_enumerate(args, config) -> int:
    report = enumerate_space(args.n, force=args.force)
    print(report.table())
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(report.to_json())
        log.info("report written to %s", args.output)
    return 0


def cmd_stats(args, config) -> int:
    rows = []
    wall_times: dict[int, float] = {}
    for path in args.input:
        stats = aggregate(read_records(path))
        rows.append(stats)
        if args.with_runtime:
            meta_path = Path(f"{path}.meta.json")
            if meta_path.exists():
                with open(meta_path) as fh:
                    wall_times[stats.n] = json.load(fh)["wall_time_seconds"]
            else:
                log.warning("no sidecar %s; runtime column left empty", meta_path)
    rows.sort(key=lambda s: s.n)
    if args.output:
        write_stats_csv(rows, args.output, wall_times=wall_times)
        log.info("stats written to %s", args.output)
    else:
        write_stats_csv(rows, sys.stdout, wall_times=wall_times)
    return 0


def cmd_fit(args, config) -> int:
    rows = read_stats_csv(args.input)
    series = [(row["n"], row["mean_genus"]) for row in rows]
    fit = fit_mean_genus(series, exponent=args.exponent)
    text = fit_to_json(fit)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        log.info("fit written to %s", args.output)
    else:
        print(text)
    return 0


def cmd_verify(args, config) -> int:
    seed = _resolve_int(args.seed, ENV_SEED, config, "seed", 0)
    workers = _resolve_int(args.workers, ENV_WORKERS, config, "workers", 1)
    verdict = verify_sampler(args.n, args.count, seed, num_workers=workers)
    text = verdict.to_json()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        print(text)
    log.info(
        "verify n=%d count=%d: %s (max |z| = %.2f)",
        args.n, args.count, verdict.status, verdict.max_abs_z,
    )
    return 3 if verdict.status == "FAIL" else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gemsurf",
        description="Uniform sampling of graph-encoded surfaces.",
    )
    parser.add_argument("--config", help="flat key = value config file")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("sample", help="run a sampling campaign")
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", help="inclusive range like 3..10")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--output", help="output path; may contain {n}")
    p.add_argument("--signatures", action="store_true",
                   help="also compute isomorphism signatures (quadratic worst case)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("enumerate", help="exhaustive census for small n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--force", action="store_true")
    p.add_argument("--output", help="write the JSON report here")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("stats", help="aggregate record files")
    p.add_argument("--input", action="append", required=True)
    p.add_argument("--output", help="stats CSV path (default stdout)")
    p.add_argument("--with-runtime", action="store_true",
                   help="fill wall_time_seconds from .meta.json sidecars")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("fit", help="mean-genus regression over a stats CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--exponent", type=float, default=4.0)
    p.add_argument("--output", help="JSON path (default stdout)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("verify", help="compare a batch against the oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--output", help="verdict JSON path (default stdout)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(
        stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s"
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        return args.func(args, config)
    except ValueError as exc:
        log.error("%s", exc)
        return 2
    except OSError as exc:
        log.error("%s", exc)
        return 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
