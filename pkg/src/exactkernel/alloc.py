"""Storage-allocation accounting for matrices and vectors.

Every container storage block in the kernel (dense matrix data, sparse entry
lists, vectors, blackbox work vectors) is created through :func:`allocate`.
Tests use :class:`count_allocations` to check that a code region founds no
storage of its own.
"""

from __future__ import annotations

import threading

_lock = threading.Lock()
_active: list["count_allocations"] = []


def allocate(length, fill=0):
    """Return a new list of ``length`` copies of ``fill``, recording the event."""
    if length < 0:
        raise ValueError(f"negative storage length {length}")
    if _active:
        with _lock:
            for counter in _active:
                counter.blocks += 1
                counter.elements += length
    return [fill] * length


def record(length):
    """Record an allocation made outside :func:`allocate` (e.g. a list built by a parser)."""
    if _active:
        with _lock:
            for counter in _active:
                counter.blocks += 1
                counter.elements += length


class count_allocations:
    """Context manager counting storage blocks founded while it is active.

    >>> with count_allocations() as c:
    ...     _ = allocate(3)
    >>> (c.blocks, c.elements)
    (1, 3)
    """

    def __init__(self):
        self.blocks = 0
        self.elements = 0

    def __enter__(self):
        with _lock:
            _active.append(self)
        return self

    def __exit__(self, *exc):
        with _lock:
            _active.remove(self)
        return False
