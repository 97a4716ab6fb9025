"""
Exhaustive check that non-isomorphic trees of a given order have distinct CSFs.

The tree stream of :func:`gen_free_trees` is cut into contiguous shards. Each
shard yields one 128-bit digest per tree; digests are merged in a single
reducer and any shared digest is re-checked by exact CSF comparison before it
is reported. Completed shards can be appended to a JSON-lines checkpoint so an
interrupted range resumes where it stopped.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import os
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .csf import csf
from .symfunc import SymmetricFunction
from .trees import canonical_code, gen_free_trees

__all__ = [
    "CsfFingerprint", "VerificationReport", "Checkpoint", "CheckpointError",
    "VerificationGuardError", "fingerprint", "verify_order", "verify_range",
    "max_order", "DEFAULT_MAX_N",
]

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 18
DEFAULT_SHARD_SIZE = 1024


class CheckpointError(ValueError):
    pass


class VerificationGuardError(ValueError):
    pass


@dataclass(frozen=True)
class CsfFingerprint:
    digest: bytes
    n: int

    def hex(self) -> str:
        return self.digest.hex()


def _serialize(x: SymmetricFunction) -> bytes:
    body = ";".join(f"{','.join(map(str, lam.parts))}:{c}" for lam, c in x.terms())
    return f"{x.n}|{x.basis.value}|{body}".encode()


def fingerprint(x: SymmetricFunction) -> CsfFingerprint:
    """blake2b-128 of the sorted (partition, coefficient) listing."""
    return CsfFingerprint(hashlib.blake2b(_serialize(x), digest_size=16).digest(), x.n)


def max_order() -> int:
    env = os.environ.get("CSF_FORGE_MAX_N")
    return int(env) if env else DEFAULT_MAX_N


@dataclass
class VerificationReport:
    n: int
    tree_count: int
    collision_groups: list[list[str]] = field(default_factory=list)
    elapsed: float = 0.0
    workers: int = 1
    digest_collisions: int = 0

    @property
    def ok(self) -> bool:
        return not self.collision_groups

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "n": self.n,
            "tree_count": self.tree_count,
            "collision_groups": self.collision_groups,
            "digest_collisions": self.digest_collisions,
        }
        if timing:
            out["elapsed_seconds"] = round(self.elapsed, 3)
            out["workers"] = self.workers
        return out


DigestFn = Callable[[SymmetricFunction], CsfFingerprint]


def _shard_digests(n: int, start: int, stop: int, digest_fn: DigestFn = fingerprint) -> list[str]:
    trees = itertools.islice(gen_free_trees(n), start, stop)
    return [digest_fn(csf(t)).hex() for t in trees]


class Checkpoint:
    """Append-only JSON-lines record of completed shards.

    Every line carries ``check``, the blake2b digest of the rest of the record.
    """

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self.done: dict[tuple[int, int], dict] = {}
        if self.path.exists():
            self._load()

    @staticmethod
    def _check(record: dict) -> str:
        body = json.dumps({k: v for k, v in record.items() if k != "check"}, sort_keys=True)
        return hashlib.blake2b(body.encode(), digest_size=16).hexdigest()

    def _load(self) -> None:
        with self.path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError:
                    raise CheckpointError(f"{self.path}:{lineno}: unparsable record") from None
                if record.get("check") != self._check(record):
                    raise CheckpointError(f"{self.path}:{lineno}: integrity digest mismatch")
                if len(record["digests"]) != record["stop"] - record["start"]:
                    raise CheckpointError(f"{self.path}:{lineno}: shard length mismatch")
                self.done[(record["n"], record["shard"])] = record

    def get(self, n: int, shard: int, start: int, stop: int) -> list[str] | None:
        record = self.done.get((n, shard))
        if record is None:
            return None
        if (record["start"], record["stop"]) != (start, stop):
            raise CheckpointError(f"checkpoint shard {n}/{shard} was written with another shard size")
        return record["digests"]

    def record(self, n: int, shard: int, start: int, stop: int, digests: list[str]) -> None:
        record = {"n": n, "shard": shard, "start": start, "stop": stop, "digests": digests}
        record["check"] = self._check(record)
        self.done[(n, shard)] = record
        with self.path.open("a") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
            fh.flush()
            os.fsync(fh.fileno())


def verify_order(n: int, workers: int = 1, *, shard_size: int = DEFAULT_SHARD_SIZE,
                 checkpoint: Checkpoint | None = None, digest_fn: DigestFn = fingerprint,
                 limit: int | None = None) -> VerificationReport:
    """Fingerprint every free tree of order n and report CSF collisions.

    ``digest_fn`` must be a picklable top-level function when ``workers > 1``.
    """
    cap = max_order() if limit is None else limit
    if n < 1:
        raise ValueError("order must be at least 1")
    if n > cap:
        raise VerificationGuardError(f"order {n} exceeds the configured maximum {cap}")
    started = time.perf_counter()
    trees_total = sum(1 for _ in gen_free_trees(n))
    bounds = [(i, start, min(start + shard_size, trees_total))
              for i, start in enumerate(range(0, trees_total, shard_size))]

    results: dict[int, list[str]] = {}
    todo = []
    for shard, start, stop in bounds:
        cached = checkpoint.get(n, shard, start, stop) if checkpoint else None
        if cached is not None:
            results[shard] = cached
        else:
            todo.append((shard, start, stop))

    def finished(shard, start, stop, digests):
        results[shard] = digests
        if checkpoint is not None:
            checkpoint.record(n, shard, start, stop, digests)

    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [(s, a, b, pool.submit(_shard_digests, n, a, b, digest_fn)) for s, a, b in todo]
            for shard, start, stop, fut in futures:
                finished(shard, start, stop, fut.result())
    else:
        for shard, start, stop in todo:
            finished(shard, start, stop, _shard_digests(n, start, stop, digest_fn))

    by_digest: dict[str, list[int]] = defaultdict(list)
    index = 0
    for shard, _, _ in bounds:
        for d in results[shard]:
            by_digest[d].append(index)
            index += 1

    groups: list[list[str]] = []
    suspects = [idx for idx in by_digest.values() if len(idx) > 1]
    if suspects:
        wanted = {i for idx in suspects for i in idx}
        trees = {i: t for i, t in enumerate(gen_free_trees(n)) if i in wanted}
        for idx in suspects:
            exact: dict[SymmetricFunction, list[str]] = defaultdict(list)
            for i in idx:
                exact[csf(trees[i])].append(canonical_code(trees[i]))
            groups.extend(sorted(codes) for codes in exact.values() if len(codes) > 1)
    groups.sort()
    report = VerificationReport(n, index, groups, time.perf_counter() - started, workers,
                                digest_collisions=len(suspects))
    log.info("n=%d trees=%d collisions=%d (%.1fs)", n, index, len(groups), report.elapsed)
    return report


def verify_range(n_low: int, n_high: int, workers: int = 1, *,
                 checkpoint: str | os.PathLike | None = None,
                 shard_size: int = DEFAULT_SHARD_SIZE,
                 limit: int | None = None) -> list[VerificationReport]:
    if n_low > n_high:
        raise ValueError(f"empty range {n_low}..{n_high}")
    if n_low < 1:
        raise ValueError("orders start at 1")
    ckpt = Checkpoint(checkpoint) if checkpoint is not None else None
    return [verify_order(n, workers, shard_size=shard_size, checkpoint=ckpt, limit=limit)
            for n in range(n_low, n_high + 1)]
