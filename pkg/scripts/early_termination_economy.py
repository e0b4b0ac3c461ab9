"""Compare primes folded by EarlyStop and Bounded determinant reconstruction.

Sweeps entry magnitude and dimension, printing the median prime counts and the
ratio of the Hadamard bound to |det|.  EarlyStop only wins when that ratio
exceeds roughly the square of the prime size.
"""

import argparse
import random
import statistics
from dataclasses import dataclass

from exactkernel import Bounded, CraStats, DenseMatrix, EarlyStop, PrimeStream, integer_det
from exactkernel.cra import hadamard_det_bound


@dataclass
class Config:
    dims: tuple[int, ...] = (4, 8, 16, 32)
    magnitudes: tuple[int, ...] = (2, 100, 10 ** 6)
    trials: int = 10
    bits: int = 29
    seed: int = 0


def count(A, mode, bits):
    stats = CraStats()
    integer_det(A, mode, primes=PrimeStream(bits=bits), stats=stats)
    return stats.n_primes


def run(cfg: Config):
    rng = random.Random(cfg.seed)
    print(f"{'n':>4} {'|a|':>8} {'early':>6} {'bounded':>8} {'log2(B/|det|)':>14}")
    for n in cfg.dims:
        for mag in cfg.magnitudes:
            early, bounded, gap = [], [], []
            for _ in range(cfg.trials):
                A = DenseMatrix.from_rows([[rng.randint(-mag, mag) for _ in range(n)] for _ in range(n)])
                early.append(count(A, EarlyStop(2), cfg.bits))
                bounded.append(count(A, Bounded, cfg.bits))
                d = abs(integer_det(A))
                if d:
                    gap.append(hadamard_det_bound(A).bit_length() - d.bit_length())
            g = statistics.median(gap) if gap else float("nan")
            print(f"{n:>4} {mag:>8} {statistics.median(early):>6} {statistics.median(bounded):>8} {g:>14}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=Config.trials)
    ap.add_argument("--bits", type=int, default=Config.bits)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    run(Config(trials=a.trials, bits=a.bits, seed=a.seed))
