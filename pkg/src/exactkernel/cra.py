"""Chinese remainder reconstruction of an integer from its images mod primes.

Two termination rules are supported:

* :class:`EarlyStop` stops once the symmetric representative has survived
  ``k_stab`` consecutive new moduli unchanged.  Cheap when the result is
  much smaller than any a-priori bound, but probabilistic.
* :class:`Bounded` stops once the modulus product exceeds ``2 * bound``;
  the reconstruction is then exact for any target with ``|t| <= bound``.

Both are driven by :func:`exactkernel.pbb.accumulate_until`, so residues can
be computed by several workers while :class:`CraState` is only touched at the
serialized merge point.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

from .domains import PrimeStream, xgcd
from .errors import EmptyState, Exhausted, NonSquare, NotCoprime
from .pbb import accumulate_until, resolve_workers


def symmetric(r: int, M: int) -> int:
    """The representative of ``r mod M`` in ``(-M/2, M/2]``."""
    r %= M
    return r if 2 * r <= M else r - M


def crt_pair(r1: int, M1: int, r2: int, m2: int) -> int:
    """Unique ``x`` in ``[0, M1*m2)`` with ``x = r1 (mod M1)`` and ``x = r2 (mod m2)``."""
    g, s, _ = xgcd(M1, m2)
    if g != 1:
        raise NotCoprime(f"gcd({M1}, {m2}) = {g}")
    r1 %= M1
    # s*M1 = 1 (mod m2), so the correction term lifts r1 onto r2.
    return r1 + M1 * ((r2 - r1) * s % m2)


@dataclass
class CraState:
    """Running CRT combination: ``r`` mod ``M`` agrees with every folded residue."""

    k_stab: int = 2
    M: int = 1
    r: int = 0
    stable_count: int = 0
    moduli: list[int] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.moduli)

    def fold(self, rho: int, m: int) -> bool:
        """Fold ``rho mod m``; return True if the symmetric representative is unchanged."""
        if not self.moduli:
            self.M, self.r = m, rho % m
            self.moduli.append(m)
            return False
        before = symmetric(self.r, self.M)
        self.r = crt_pair(self.r, self.M, rho % m, m)
        self.M *= m
        self.moduli.append(m)
        return symmetric(self.r, self.M) == before


def cra_update(state: CraState, rho: int, m: int) -> bool:
    """Fold ``(rho, m)`` and report whether the result is stable for ``k_stab`` updates."""
    if state.fold(rho, m):
        state.stable_count = min(state.stable_count + 1, state.k_stab)
    else:
        state.stable_count = 0
    return state.stable_count >= state.k_stab


def cra_reconstruct(state: CraState) -> int:
    if not state.moduli:
        raise EmptyState("no residues folded")
    return symmetric(state.r, state.M)


def isqrt_ceil(n: int) -> int:
    if n <= 0:
        return 0
    return math.isqrt(n - 1) + 1


def hadamard_det_bound(A) -> int:
    """Smallest integer ``>= prod_i ||row_i||_2``; bounds ``|det A|``."""
    if A.m != A.n:
        raise NonSquare(f"determinant bound of a {A.m}x{A.n} matrix")
    prod = 1
    for i in range(A.m):
        prod *= sum(x * x for x in A.row(i))
    return isqrt_ceil(prod)


@dataclass(frozen=True)
class EarlyStop:
    """Stop after ``k_stab`` consecutive updates leave the result unchanged."""

    k_stab: int = 2

    def __post_init__(self):
        if self.k_stab < 1:
            raise ValueError(f"k_stab must be >= 1, got {self.k_stab}")


@dataclass(frozen=True)
class Bounded:
    """Stop once the modulus product exceeds ``2 * bound``."""

    bound: int

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError(f"bound must be >= 0, got {self.bound}")


@dataclass
class CraStats:
    """Instrumentation filled in by :func:`cra_run`."""

    primes: list[int] = field(default_factory=list)
    workers: int = 1
    seconds: float = 0.0

    @property
    def n_primes(self) -> int:
        return len(self.primes)


class _DrawnPrimes:
    """Sequence view of a prime stream; entry ``i`` is drawn on first access."""

    def __init__(self, stream: PrimeStream, limit: int):
        self.stream, self.limit = stream, limit
        self.drawn: list[int] = []

    def __len__(self):
        return self.limit

    def __getitem__(self, i):
        while len(self.drawn) <= i:
            self.drawn.append(self.stream.next_prime())
        return self.drawn[i]


def cra_run(
    residue_fn: Callable[[int], int],
    primes: PrimeStream | None = None,
    mode: EarlyStop | Bounded = EarlyStop(),
    workers: int | None = None,
    max_primes: int = 10_000,
    stats: CraStats | None = None,
) -> int:
    """Reconstruct the integer whose image mod ``p`` is ``residue_fn(p)``.

    ``residue_fn`` is called concurrently on distinct primes when
    ``workers > 1`` and must be reentrant.
    """
    t0 = time.perf_counter()
    primes = PrimeStream() if primes is None else primes
    workers = resolve_workers(workers)
    state = CraState(k_stab=mode.k_stab if isinstance(mode, EarlyStop) else 1)

    def term(p):
        return residue_fn(p) % p, p

    if isinstance(mode, EarlyStop):
        def accum(st, t):
            return cra_update(st, *t)
    elif isinstance(mode, Bounded):
        twice = 2 * mode.bound

        def accum(st, t):
            st.fold(*t)
            return st.M > twice
    else:
        raise TypeError(f"unknown CRA mode {mode!r}")

    res = accumulate_until(_DrawnPrimes(primes, max_primes), term, accum, state, workers=workers)
    if stats is not None:
        stats.primes[:] = state.moduli
        stats.workers = workers
        stats.seconds = time.perf_counter() - t0
    if not res.terminated_early:
        raise Exhausted(f"CRA did not terminate within {max_primes} primes")
    return cra_reconstruct(state)
