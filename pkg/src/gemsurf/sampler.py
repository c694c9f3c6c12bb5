"""End-to-end sampling: draw (partition, permutation) pairs, reject
disconnected ones, attach topology and exact weights, run batches.

Batches are reproducible: worker ``k`` draws from an independent stream
seeded by SHA-256 of ``(master_seed, k)`` and produces a pre-assigned
contiguous quota, so the record sequence is a pure function of
``(n, num_samples, master_seed, num_workers)`` regardless of scheduling.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from random import Random
from typing import Iterable, Iterator

from .gem import StandardFormGem, _connected_images, _topology_images, genus
from .perm import (
    Partition,
    Permutation,
    _canonical_images,
    ensure_int_digits,
    sample_partition,
    sample_permutation,
)
from .symmetry import Weight, _weight_raw, compute_weight, isomorphism_signature

CSV_HEADER = (
    "n,draw_index,worker_id,lambda,sigma,genus,num_vertices,sym_cp,sym_swap,"
    "weight_num,weight_den,log_weight,rejected_attempts"
)


@dataclass(frozen=True)
class WeightedSampleRecord:
    n: int
    lam: Partition
    sigma: Permutation
    genus: int
    num_vertices: int
    sym_colour_preserving: int
    sym_colour_swap: int
    weight: Weight
    rejected_attempts: int
    worker_id: int
    draw_index: int
    signature: str | None = None

    def gem(self) -> StandardFormGem:
        return StandardFormGem.from_partition(self.lam, self.sigma)


@dataclass(frozen=True)
class BatchConfig:
    n: int
    num_samples: int
    master_seed: int
    num_workers: int = 1
    emit_signatures: bool = False
    output_path: str | None = None
    output_format: str = "csv"

    def __post_init__(self):
        if self.n < 1 or self.num_samples < 1 or self.num_workers < 1:
            raise ValueError("n, num_samples and num_workers must all be >= 1")
        if self.output_format not in ("csv", "jsonl"):
            raise ValueError(f"unknown output format {self.output_format!r}")


def worker_seed(master_seed: int, worker_id: int) -> int:
    """128-bit stream seed for one worker, derived by hashing."""
    digest = hashlib.sha256(f"{master_seed}:{worker_id}".encode()).digest()
    return int.from_bytes(digest[:16], "big")


def draw_connected_pair(
    n: int, rng: Random
) -> tuple[Partition, Permutation, Permutation, int]:
    """Repeat (partition, permutation) draws until the pair encodes a
    connected surface.  Returns (lam, mu, sigma, rejected)."""
    rejected = 0
    while True:
        lam = sample_partition(n, rng)
        mu_images = _canonical_images(lam.parts)
        sigma = sample_permutation(n, rng)
        if _connected_images(mu_images, sigma.images):
            return lam, Permutation(mu_images), sigma, rejected
        rejected += 1


def draw_one(
    n: int,
    rng: Random,
    *,
    emit_signature: bool = False,
    worker_id: int = 0,
    draw_index: int = 0,
) -> WeightedSampleRecord:
    """One accepted sample with topology, symmetry counts and exact weight."""
    lam, mu, sigma, rejected = draw_connected_pair(n, rng)
    v, _, g = _topology_images(n, mu.images, sigma.images)
    copies, sym_cp, k = _weight_raw(n, mu.images, sigma.images)
    signature = None
    if emit_signature:
        signature = isomorphism_signature(StandardFormGem(n, lam, mu, sigma))
    return WeightedSampleRecord(
        n=n,
        lam=lam,
        sigma=sigma,
        genus=g,
        num_vertices=v,
        sym_colour_preserving=sym_cp,
        sym_colour_swap=6 // k,
        weight=Weight.from_value(Fraction(1, copies)),
        rejected_attempts=rejected,
        worker_id=worker_id,
        draw_index=draw_index,
        signature=signature,
    )


def _quotas(num_samples: int, num_workers: int) -> list[int]:
    base, extra = divmod(num_samples, num_workers)
    return [base + (1 if k < extra else 0) for k in range(num_workers)]


def _generate(
    n: int,
    seed: int,
    count: int,
    start_index: int,
    worker_id: int,
    emit_signatures: bool,
) -> Iterator[WeightedSampleRecord]:
    rng = Random(seed)
    for i in range(count):
        yield draw_one(
            n,
            rng,
            emit_signature=emit_signatures,
            worker_id=worker_id,
            draw_index=start_index + i,
        )


def _shard_worker(args) -> str:
    n, seed, count, start_index, worker_id, emit_signatures, shard_path = args
    records = _generate(n, seed, count, start_index, worker_id, emit_signatures)
    write_csv(records, shard_path, signatures=emit_signatures)
    return shard_path


def run_batch(cfg: BatchConfig) -> Iterator[WeightedSampleRecord]:
    """Stream exactly ``cfg.num_samples`` records, deterministically.

    With one worker the records are generated inline.  With several, each
    worker writes its quota to a CSV shard in a temporary directory and the
    shards are streamed back in worker order, keeping memory flat.
    """
    quotas = _quotas(cfg.num_samples, cfg.num_workers)
    offsets = [sum(quotas[:k]) for k in range(cfg.num_workers)]
    if cfg.num_workers == 1:
        yield from _generate(
            cfg.n, worker_seed(cfg.master_seed, 0), cfg.num_samples, 0, 0,
            cfg.emit_signatures,
        )
        return
    tmpdir = tempfile.mkdtemp(prefix="gemsurf-batch-")
    try:
        jobs = [
            (
                cfg.n,
                worker_seed(cfg.master_seed, k),
                quotas[k],
                offsets[k],
                k,
                cfg.emit_signatures,
                os.path.join(tmpdir, f"shard-{k}.csv"),
            )
            for k in range(cfg.num_workers)
            if quotas[k] > 0
        ]
        with ProcessPoolExecutor(max_workers=cfg.num_workers) as pool:
            for shard in pool.map(_shard_worker, jobs):
                yield from read_records(shard)
    finally:
        for name in os.listdir(tmpdir):
            os.unlink(os.path.join(tmpdir, name))
        os.rmdir(tmpdir)


def record_consistent(record: WeightedSampleRecord) -> bool:
    """Recompute genus, symmetry counts and weight from (lam, sigma) and
    compare with the stored fields."""
    gem = record.gem()
    topo = genus(gem)
    weight, report = compute_weight(gem)
    return (
        topo.genus == record.genus
        and topo.num_vertices == record.num_vertices
        and report.colour_preserving_count == record.sym_colour_preserving
        and report.colour_swap_count == record.sym_colour_swap
        and weight.value == record.weight.value
    )


def _record_row(record: WeightedSampleRecord) -> list:
    value = record.weight.value
    ensure_int_digits((value.numerator.bit_length() + value.denominator.bit_length()) // 3)
    return [
        record.n,
        record.draw_index,
        record.worker_id,
        str(record.lam),
        str(record.sigma),
        record.genus,
        record.num_vertices,
        record.sym_colour_preserving,
        record.sym_colour_swap,
        str(value.numerator),
        str(value.denominator),
        repr(record.weight.log_value),
        record.rejected_attempts,
    ]


def _row_record(row: dict[str, str]) -> WeightedSampleRecord:
    ensure_int_digits(max(len(row["weight_num"]), len(row["weight_den"])))
    weight = Weight.from_value(
        Fraction(int(row["weight_num"]), int(row["weight_den"]))
    )
    return WeightedSampleRecord(
        n=int(row["n"]),
        lam=Partition.parse(row["lambda"]),
        sigma=Permutation.parse(row["sigma"]),
        genus=int(row["genus"]),
        num_vertices=int(row["num_vertices"]),
        sym_colour_preserving=int(row["sym_cp"]),
        sym_colour_swap=int(row["sym_swap"]),
        weight=weight,
        rejected_attempts=int(row["rejected_attempts"]),
        worker_id=int(row["worker_id"]),
        draw_index=int(row["draw_index"]),
        signature=row.get("signature") or None,
    )


def write_csv(
    records: Iterable[WeightedSampleRecord], path: str | Path, *, signatures: bool = False
) -> int:
    """Write records as CSV.  The file is written to ``<path>.partial`` and
    renamed on success, so an aborted run leaves a partial-output marker
    instead of a truncated data file.  Returns the number of rows."""
    path = Path(path)
    partial = path.with_name(path.name + ".partial")
    header = CSV_HEADER.split(",") + (["signature"] if signatures else [])
    count = 0
    with open(partial, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for record in records:
            row = _record_row(record)
            if signatures:
                row.append(record.signature or "")
            writer.writerow(row)
            count += 1
    os.replace(partial, path)
    return count


def write_jsonl(
    records: Iterable[WeightedSampleRecord], path: str | Path, *, signatures: bool = False
) -> int:
    """Write records as JSON lines with the same field names as the CSV."""
    path = Path(path)
    partial = path.with_name(path.name + ".partial")
    count = 0
    with open(partial, "w") as fh:
        for record in records:
            obj = {
                "n": record.n,
                "draw_index": record.draw_index,
                "worker_id": record.worker_id,
                "lambda": str(record.lam),
                "sigma": str(record.sigma),
                "genus": record.genus,
                "num_vertices": record.num_vertices,
                "sym_cp": record.sym_colour_preserving,
                "sym_swap": record.sym_colour_swap,
                "weight_num": str(record.weight.value.numerator),
                "weight_den": str(record.weight.value.denominator),
                "log_weight": record.weight.log_value,
                "rejected_attempts": record.rejected_attempts,
            }
            if signatures:
                obj["signature"] = record.signature or ""
            fh.write(json.dumps(obj) + "\n")
            count += 1
    os.replace(partial, path)
    return count


def write_records(cfg: BatchConfig) -> int:
    """Run the batch described by ``cfg`` and write it to its sink."""
    if cfg.output_path is None:
        raise ValueError("cfg.output_path is not set")
    write = write_csv if cfg.output_format == "csv" else write_jsonl
    return write(run_batch(cfg), cfg.output_path, signatures=cfg.emit_signatures)


def read_records(path: str | Path) -> Iterator[WeightedSampleRecord]:
    """Read records back from a CSV or JSONL file (detected by extension)."""
    path = Path(path)
    if path.suffix == ".jsonl":
        with open(path) as fh:
            for line in fh:
                if line.strip():
                    yield _row_record(json.loads(line))
        return
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            yield _row_record(row)
