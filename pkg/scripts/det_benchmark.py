"""Wall time of integer determinant and rank for growing dimension and worker count."""

import argparse
import random
import time
from dataclasses import dataclass

from exactkernel import DenseMatrix, integer_det, integer_rank


@dataclass
class Config:
    dims: tuple[int, ...] = (8, 16, 32, 48)
    workers: tuple[int, ...] = (1, 2, 4)
    magnitude: int = 1000
    seed: int = 0


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    fn(*args, **kw)
    return time.perf_counter() - t0


def run(cfg: Config):
    rng = random.Random(cfg.seed)
    print(f"{'n':>4} {'workers':>8} {'det_s':>8} {'rank_s':>8}")
    for n in cfg.dims:
        A = DenseMatrix.from_rows([[rng.randint(-cfg.magnitude, cfg.magnitude) for _ in range(n)]
                                   for _ in range(n)])
        for w in cfg.workers:
            print(f"{n:>4} {w:>8} {timed(integer_det, A, workers=w):>8.3f} "
                  f"{timed(integer_rank, A, workers=w):>8.3f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", type=int, nargs="+", default=list(Config.dims))
    ap.add_argument("--workers", type=int, nargs="+", default=list(Config.workers))
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    run(Config(dims=tuple(a.dims), workers=tuple(a.workers), seed=a.seed))
