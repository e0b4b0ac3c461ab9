"""Rank and determinant over prime fields and over the integers."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .cra import Bounded, CraStats, EarlyStop, _DrawnPrimes, cra_run, hadamard_det_bound
from .domains import ZZ, Hom, ModularField, PrimeStream
from .errors import Exhausted, NonSquare
from .matrices import DenseMatrix, rebind_dense
from .pbb import accumulate_until, resolve_workers

# Seed for the random-order prime stream used by integer_rank.
RANK_PRIME_SEED = 0x5EED


@dataclass
class EchelonResult:
    rank: int
    sign: int
    pivots: list[int]


def gauss_echelon(A: DenseMatrix) -> EchelonResult:
    """Reduce ``A`` (over a prime field) to row echelon form in place.

    The pivot of each column is its first nonzero entry at or below the current
    row; ``sign`` is ``(-1)**swaps``.  Pivot rows are not normalized, so the
    determinant of a square full-rank input is ``sign * prod(diagonal)``.
    """
    if not isinstance(A.field, ModularField):
        raise TypeError(f"elimination needs a prime field, got {A.field!r}")
    p = A.field.p
    m, n, data = A.m, A.n, A.data
    inv = A.field.inv
    r, sign = 0, 1
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if data[i * n + c]), None)
        if piv is None:
            continue
        if piv != r:
            a, b = piv * n, r * n
            data[a:a + n], data[b:b + n] = data[b:b + n], data[a:a + n]
            sign = -sign
        base = r * n
        pivot_row = data[base + c:base + n]
        scale = inv(pivot_row[0])
        for i in range(r + 1, m):
            off = i * n
            lead = data[off + c]
            if lead:
                f = lead * scale % p
                data[off + c:off + n] = [
                    (x - f * y) % p for x, y in zip(data[off + c:off + n], pivot_row)
                ]
        pivots.append(c)
        r += 1
    return EchelonResult(r, sign, pivots)


def _det_in_place(W: DenseMatrix) -> int:
    e = gauss_echelon(W)
    n, p = W.n, W.field.p
    if e.rank < n:
        return 0
    d = 1 if e.sign > 0 else p - 1
    for i in range(n):
        d = d * W.data[i * n + i] % p
    return d


def det_mod_p(A: DenseMatrix) -> int:
    """Determinant of a square matrix over a prime field; ``A`` is left untouched."""
    if A.m != A.n:
        raise NonSquare(f"determinant of a {A.m}x{A.n} matrix")
    return _det_in_place(A.copy())


def rank_mod_p(A: DenseMatrix) -> int:
    return gauss_echelon(A.copy()).rank


def _require_integer(A):
    if A.field != ZZ:
        raise TypeError(f"expected a matrix over ZZ, got {A.field!r}")


def integer_det(
    A: DenseMatrix,
    mode: EarlyStop | Bounded | type[Bounded] = EarlyStop(),
    workers: int | None = None,
    primes: PrimeStream | None = None,
    stats: CraStats | None = None,
    max_primes: int = 10_000,
) -> int:
    """Exact determinant of an integer matrix by Chinese remaindering.

    ``mode`` is :class:`EarlyStop` or :class:`Bounded`; passing the class
    ``Bounded`` itself uses the Hadamard bound of ``A``.
    """
    _require_integer(A)
    if A.m != A.n:
        raise NonSquare(f"determinant of a {A.m}x{A.n} matrix")
    if mode is Bounded:
        mode = Bounded(hadamard_det_bound(A))
    n = A.n

    def residue(p):
        F = ModularField(p)
        Ap = DenseMatrix(n, n, F)
        rebind_dense(Ap, A, Hom(ZZ, F))
        return _det_in_place(Ap)

    return cra_run(residue, primes, mode, workers, max_primes=max_primes, stats=stats)


@dataclass
class _RankState:
    k_stab: int
    best: int = -1
    stable_count: int = 0
    moduli: list[int] = field(default_factory=list)


def _rank_update(st: _RankState, term) -> bool:
    rank, p = term
    st.moduli.append(p)
    if rank > st.best:
        st.best, st.stable_count = rank, 0
    else:
        st.stable_count += 1
    return st.stable_count >= st.k_stab


def integer_rank(
    A: DenseMatrix,
    k_stab: int = 2,
    workers: int | None = None,
    primes: PrimeStream | None = None,
    stats: CraStats | None = None,
    max_primes: int = 10_000,
) -> int:
    """Rank over Q as the stabilized maximum of ``rank(A mod p)`` over random primes.

    ``rank(A mod p)`` never exceeds the rational rank and equals it for all but
    finitely many ``p``; the run stops after ``k_stab`` consecutive primes that
    do not raise the maximum.
    """
    _require_integer(A)
    if k_stab < 1:
        raise ValueError(f"k_stab must be >= 1, got {k_stab}")
    t0 = time.perf_counter()
    primes = PrimeStream(bits=29, seed=RANK_PRIME_SEED) if primes is None else primes
    workers = resolve_workers(workers)
    m, n = A.m, A.n

    def term(p):
        F = ModularField(p)
        Ap = DenseMatrix(m, n, F)
        rebind_dense(Ap, A, Hom(ZZ, F))
        return gauss_echelon(Ap).rank, p

    state = _RankState(k_stab)
    res = accumulate_until(_DrawnPrimes(primes, max_primes), term, _rank_update, state, workers)
    if stats is not None:
        stats.primes[:] = state.moduli
        stats.workers = workers
        stats.seconds = time.perf_counter() - t0
    if not res.terminated_early:
        raise Exhausted(f"rank did not stabilize within {max_primes} primes")
    return state.best
