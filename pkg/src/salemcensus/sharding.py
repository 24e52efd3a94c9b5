"""Deterministic sharded execution of pure enumeration workers.

Workers are module-level functions taking a picklable descriptor tuple and
returning a list of picklable results.  Results are concatenated in shard
order, so the merged output never depends on the worker-pool size; callers
apply their own final sort on top.
"""

from __future__ import annotations

import multiprocessing
from typing import Callable, Optional, Sequence, TypeVar

T = TypeVar("T")


def run_sharded(
    worker: Callable[[tuple], list[T]],
    descriptors: Sequence[tuple],
    shards: int,
    skip: Optional[Callable[[int], Optional[list[T]]]] = None,
    on_done: Optional[Callable[[int, list[T]], None]] = None,
) -> list[T]:
    """Run worker over descriptors, inline or on a process pool.

    skip(i) may return a previously checkpointed result for shard i;
    on_done(i, result) is invoked in shard order as results arrive.
    """
    merged: list[T] = []
    pending = []
    cached: dict[int, list[T]] = {}
    for i, desc in enumerate(descriptors):
        prior = skip(i) if skip else None
        if prior is not None:
            cached[i] = prior
        else:
            pending.append((i, desc))

    results: dict[int, list[T]] = dict(cached)
    if pending:
        if shards <= 1 or len(pending) == 1:
            for i, desc in pending:
                out = worker(desc)
                results[i] = out
                if on_done:
                    on_done(i, out)
        else:
            with multiprocessing.Pool(processes=min(shards, len(pending))) as pool:
                for (i, _), out in zip(pending, pool.imap(worker, [d for _, d in pending])):
                    results[i] = out
                    if on_done:
                        on_done(i, out)
    for i in range(len(descriptors)):
        merged.extend(results[i])
    return merged


def split_range(lo: int, hi: int, pieces: int) -> list[tuple[int, int]]:
    """Split the half-open integer range [lo, hi) into contiguous chunks."""
    total = hi - lo
    if total <= 0:
        return []
    pieces = max(1, min(pieces, total))
    base, extra = divmod(total, pieces)
    chunks = []
    start = lo
    for k in range(pieces):
        size = base + (1 if k < extra else 0)
        chunks.append((start, start + size))
        start += size
    return chunks
