"""Command-line front end: ``exactkernel {rank,det} [options] FILE``.

Exit status is 0 on success, 1 on input errors and 2 on argument errors.
"""

from __future__ import annotations

import argparse
import sys
import time

from .cra import Bounded, CraStats, EarlyStop
from .domains import ZZ, Hom, ModularField
from .errors import ExactKernelError, MatrixFormatError, NonSquare, NotPrime
from .formats import DENSE, SMS, read_matrix
from .matrices import DenseMatrix, SparseMatrix, densify, rebind_dense
from .pbb import ENV_THREADS, resolve_workers
from .solutions import det_mod_p, integer_det, integer_rank, rank_mod_p

DENSIFY_LIMIT = 4_000_000

EXIT_OK, EXIT_INPUT, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("matrix", help="matrix file in SMS or dense format ('-' for stdin)")
    common.add_argument("--modulus", type=int, metavar="P", help="work over GF(P) instead of Z")
    common.add_argument("--threads", type=int, metavar="T",
                        help=f"worker count, 0 = hardware (default: ${ENV_THREADS} or 1)")
    common.add_argument("--stability", type=int, default=2, metavar="K",
                        help="early-termination threshold (default: 2)")
    common.add_argument("--format", choices=[SMS, DENSE], help="input format (default: sniff)")
    common.add_argument("--stats", action="store_true",
                        help="print primes used, wall time and worker count to stderr")

    parser = argparse.ArgumentParser(prog="exactkernel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("rank", parents=[common], help="rank over Z (i.e. Q) or GF(p)")
    det = sub.add_parser("det", parents=[common], help="determinant over Z or GF(p)")
    det.add_argument("--bounded", action="store_true",
                     help="terminate from the Hadamard bound instead of early termination")
    return parser


def _load(path: str, fmt: str | None):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    A = read_matrix(text, fmt)
    if isinstance(A, SparseMatrix):
        if A.m * A.n > DENSIFY_LIMIT:
            raise MatrixFormatError(
                f"{A.m}x{A.n} sparse input exceeds the densification limit of {DENSIFY_LIMIT} entries"
            )
        A = densify(DenseMatrix(A.m, A.n, ZZ), A)
    return A


def _run(args, A, field, workers, stats: CraStats) -> int:
    if field is not None:
        Ap = rebind_dense(DenseMatrix(A.m, A.n, field), A, Hom(ZZ, field))
        stats.primes[:] = [field.p]
        return rank_mod_p(Ap) if args.command == "rank" else det_mod_p(Ap)
    if args.command == "rank":
        return integer_rank(A, k_stab=args.stability, workers=workers, stats=stats)
    mode = Bounded if args.bounded else EarlyStop(args.stability)
    return integer_det(A, mode, workers=workers, stats=stats)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    field = None
    if args.modulus is not None:
        try:
            field = ModularField(args.modulus)
        except NotPrime as exc:
            parser.error(f"--modulus: {exc}")
    if args.stability < 1:
        parser.error("--stability must be >= 1")
    try:
        workers = resolve_workers(args.threads)
    except ValueError as exc:
        parser.error(f"thread count: {exc}")

    t0 = time.perf_counter()
    try:
        A = _load(args.matrix, args.format)
    except OSError as exc:
        print(f"exactkernel: cannot read {args.matrix}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT
    except MatrixFormatError as exc:
        print(f"exactkernel: {args.matrix}: {exc}", file=sys.stderr)
        return EXIT_INPUT

    stats = CraStats(workers=workers)
    try:
        result = _run(args, A, field, workers, stats)
    except NonSquare as exc:
        print(f"exactkernel: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ExactKernelError as exc:
        print(f"exactkernel: {exc}", file=sys.stderr)
        return EXIT_INPUT

    print(result)
    if args.stats:
        elapsed = time.perf_counter() - t0
        print(f"primes_used: {stats.n_primes}", file=sys.stderr)
        print(f"primes: {' '.join(map(str, stats.primes))}", file=sys.stderr)
        print(f"workers: {workers}", file=sys.stderr)
        print(f"wall_time_s: {elapsed:.6f}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
