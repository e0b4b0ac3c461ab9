"""Parallel building blocks: STL-style loops with caller-provided results.

``for_each``, ``transform`` and ``accumulate`` mirror their sequential
counterparts; ``transform`` writes into a destination the caller founded.
``accumulate_until`` folds terms into a mutable accumulator until the
accumulator reports that enough terms have been seen.

Workers are threads.  The worker count is taken from the ``workers``
argument, else the ``EK_THREADS`` environment variable, else 1; a count of 0
means ``os.cpu_count()``.  User callables run concurrently on distinct
elements, while accumulator callbacks run under a single merge lock.
"""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, MutableSequence, Sequence

from .errors import LengthMismatch

ENV_THREADS = "EK_THREADS"


def resolve_workers(workers: int | None = None) -> int:
    if workers is None:
        env = os.environ.get(ENV_THREADS, "").strip()
        workers = int(env) if env else 1
    if workers < 0:
        raise ValueError(f"worker count must be >= 0, got {workers}")
    if workers == 0:
        workers = os.cpu_count() or 1
    return workers


def _chunks(n, workers, chunk):
    if chunk is None:
        chunk = max(1, n // (4 * workers))
    return [(s, min(n, s + chunk)) for s in range(0, n, chunk)]


def _run_chunks(chunks, workers, body):
    """Run ``body(start, stop)`` for each chunk on ``workers`` threads; re-raise the first failure."""
    if not chunks:
        return
    if workers == 1:
        for start, stop in chunks:
            body(start, stop)
        return
    lock = threading.Lock()
    cursor = 0
    errors: list[BaseException] = []

    def worker():
        nonlocal cursor
        while True:
            with lock:
                if errors or cursor >= len(chunks):
                    return
                start, stop = chunks[cursor]
                cursor += 1
            try:
                body(start, stop)
            except BaseException as exc:
                with lock:
                    errors.append(exc)
                return

    nthreads = min(workers, len(chunks))
    with ThreadPoolExecutor(max_workers=nthreads) as pool:
        for _ in range(nthreads):
            pool.submit(worker)
    if errors:
        raise errors[0]


def for_each(seq: Sequence, op: Callable[[Any], None], workers=None, chunk=None) -> None:
    """Call ``op(seq[i])`` exactly once per element, in unspecified order."""

    def body(start, stop):
        for i in range(start, stop):
            op(seq[i])

    workers = resolve_workers(workers)
    _run_chunks(_chunks(len(seq), workers, chunk), workers, body)


def transform(dst: MutableSequence, src: Sequence, f: Callable, workers=None, chunk=None):
    """``dst[i] <- f(src[i])`` for every ``i``; ``dst`` must already have ``len(src)`` slots."""
    if len(dst) != len(src):
        raise LengthMismatch(f"transform: dst has {len(dst)} slots, src has {len(src)}")

    def body(start, stop):
        for i in range(start, stop):
            dst[i] = f(src[i])

    workers = resolve_workers(workers)
    _run_chunks(_chunks(len(src), workers, chunk), workers, body)
    return dst


def accumulate(init, seq: Sequence, binop: Callable, workers=None, chunk=None):
    """Fold ``seq`` into ``init`` with ``acc = binop(acc, x)``.

    Chunks are folded independently and merged in index order, so the result is
    schedule-independent whenever ``binop`` is associative.
    """
    workers = resolve_workers(workers)
    n = len(seq)
    if workers == 1 or n < 2:
        acc = init
        for x in seq:
            acc = binop(acc, x)
        return acc
    chunks = _chunks(n, workers, chunk)
    partial: list = [None] * len(chunks)
    index = {c[0]: k for k, c in enumerate(chunks)}

    def body(start, stop):
        # _run_chunks hands out whole chunks, so start identifies the slot.
        acc = seq[start]
        for i in range(start + 1, stop):
            acc = binop(acc, seq[i])
        partial[index[start]] = acc

    _run_chunks(chunks, workers, body)
    acc = init
    for p in partial:
        acc = binop(acc, p)
    return acc


@dataclass
class UntilResult:
    """Outcome of :func:`accumulate_until`.

    ``n`` terms were folded into ``value``; ``folded`` lists their indices in
    fold order.  ``terminated_early`` is the verdict of the last fold.
    """

    n: int
    value: Any
    terminated_early: bool
    folded: list[int] = field(default_factory=list)


def accumulate_until(
    v: Sequence,
    f: Callable,
    accum: Callable[[Any, Any], bool],
    acc,
    workers=None,
    chunk: int = 1,
) -> UntilResult:
    """Fold ``f(v[i])`` into the mutable accumulator ``acc`` until ``accum`` says stop.

    ``accum(acc, term)`` folds ``term`` into ``acc`` in place and returns True once
    enough terms are folded.

    With one worker the terms are folded in index order and the result is the
    shortest satisfying prefix.  With several workers indices are claimed from a
    shared cursor in chunks of ``chunk``; a satisfied accumulator stops further
    claims, terms already in flight are still folded, and if such a late fold
    reports False claiming resumes.  The returned fold covers some ``n``-element
    subset of the indices and is either satisfied or exhaustive.

    ``v[i]`` is read under the claim lock, in increasing ``i``, so ``v`` may be a
    lazily drawn sequence.
    """
    workers = resolve_workers(workers)
    N = len(v)
    if workers == 1:
        done = False
        folded = []
        for i in range(N):
            done = accum(acc, f(v[i]))
            folded.append(i)
            if done:
                break
        return UntilResult(len(folded), acc, done, folded)

    if chunk < 1:
        raise ValueError(f"chunk must be >= 1, got {chunk}")
    claim = threading.Lock()
    merge = threading.Lock()
    cursor = 0
    satisfied = False
    folded: list[int] = []
    errors: list[BaseException] = []

    def worker():
        nonlocal cursor, satisfied
        while True:
            with claim:
                if errors or satisfied or cursor >= N:
                    return
                start = cursor
                stop = min(N, start + chunk)
                cursor = stop
                try:
                    items = [v[i] for i in range(start, stop)]
                except BaseException as exc:
                    errors.append(exc)
                    return
            try:
                terms = [f(x) for x in items]
            except BaseException as exc:
                with claim:
                    errors.append(exc)
                return
            with merge:
                for i, t in zip(range(start, stop), terms):
                    try:
                        ok = accum(acc, t)
                    except BaseException as exc:
                        with claim:
                            errors.append(exc)
                        return
                    folded.append(i)
                    with claim:
                        satisfied = ok

    while True:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for _ in range(workers):
                pool.submit(worker)
        if errors:
            raise errors[0]
        if satisfied or cursor >= N:
            break
    return UntilResult(len(folded), acc, satisfied, folded)
