import itertools
import random

import pytest

from exactkernel.cra import Bounded, CraStats, EarlyStop
from exactkernel.domains import GF, ZZ, Hom, PrimeStream
from exactkernel.errors import NonSquare
from exactkernel.matrices import DenseMatrix, rebind_dense
from exactkernel.solutions import det_mod_p, gauss_echelon, integer_det, integer_rank, rank_mod_p

from oracles import (
    bareiss_det, cofactor_det, leibniz_det, matmul, rank_by_minors, rational_rank, sieve, transpose,
)


def gf_matrix(rows, p):
    return DenseMatrix.from_rows(rows, GF(p))


def test_echelon_identity():
    e = gauss_echelon(DenseMatrix.identity(5, GF(7)))
    assert (e.rank, e.sign, e.pivots) == (5, 1, [0, 1, 2, 3, 4])


def test_echelon_rank_one():
    assert gauss_echelon(gf_matrix([[1, 2], [2, 4]], 5)).rank == 1


def test_echelon_form_and_sign():
    A = gf_matrix([[0, 1, 2], [3, 4, 5], [6, 7, 9]], 11)
    e = gauss_echelon(A)
    assert e.sign == -1 and e.pivots == [0, 1, 2]
    for i in range(3):
        for j in range(i):
            assert A[i, j] == 0


def all_gf2_4x4_with_at_most_4_nonzeros():
    cells = list(itertools.product(range(4), range(4)))
    for k in range(5):
        for chosen in itertools.combinations(cells, k):
            rows = [[0] * 4 for _ in range(4)]
            for i, j in chosen:
                rows[i][j] = 1
            yield rows


def test_rank_gf2_exhaustive_small_support():
    count = 0
    for rows in all_gf2_4x4_with_at_most_4_nonzeros():
        assert rank_mod_p(gf_matrix(rows, 2)) == rank_by_minors(rows, 2)
        count += 1
    assert count == 1 + 16 + 120 + 560 + 1820


def test_rank_random_gf13_against_minors():
    rng = random.Random(1)
    for _ in range(60):
        rows = [[rng.randrange(13) if rng.random() < 0.6 else 0 for _ in range(5)] for _ in range(5)]
        assert rank_mod_p(gf_matrix(rows, 13)) == rank_by_minors(rows, 13)


def test_rank_of_transpose():
    rng = random.Random(2)
    for _ in range(50):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[rng.randrange(5) for _ in range(n)] for _ in range(m)]
        assert rank_mod_p(gf_matrix(rows, 5)) == rank_mod_p(gf_matrix(transpose(rows), 5))


def test_det_mod_p_examples():
    assert det_mod_p(gf_matrix([[1, 2], [3, 4]], 5)) == 3
    assert det_mod_p(gf_matrix([[1, 2], [2, 4]], 5)) == 0
    with pytest.raises(NonSquare):
        det_mod_p(DenseMatrix(2, 3, GF(5)))


def test_det_mod_p_against_cofactor():
    rng = random.Random(3)
    for _ in range(50):
        rows = [[rng.randrange(13) for _ in range(5)] for _ in range(5)]
        assert det_mod_p(gf_matrix(rows, 13)) == cofactor_det(rows) % 13


def test_det_mod_p_leaves_input_untouched():
    A = gf_matrix([[0, 1], [1, 0]], 7)
    before = A.rows()
    assert det_mod_p(A) == 6
    assert A.rows() == before


def test_integer_det_examples():
    assert integer_det(DenseMatrix.from_rows([[1, 2], [3, 4]])) == -2
    stats = CraStats()
    assert integer_det(DenseMatrix.identity(10), EarlyStop(2), stats=stats) == 1
    assert stats.n_primes == 3
    assert integer_det(DenseMatrix(0, 0)) == 1
    with pytest.raises(NonSquare):
        integer_det(DenseMatrix(2, 3))


def test_integer_det_against_bareiss_and_bounded():
    rng = random.Random(4)
    for _ in range(100):
        rows = [[rng.randint(-9, 9) for _ in range(8)] for _ in range(8)]
        A = DenseMatrix.from_rows(rows)
        expected = bareiss_det(rows)
        assert integer_det(A, EarlyStop(2)) == expected
        assert integer_det(A, Bounded) == expected


def test_bareiss_oracle_is_sound():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
        assert bareiss_det(rows) == leibniz_det(rows) == cofactor_det(rows)


def test_integer_det_large_entries():
    rng = random.Random(6)
    rows = [[rng.randint(-10 ** 30, 10 ** 30) for _ in range(6)] for _ in range(6)]
    A = DenseMatrix.from_rows(rows)
    assert integer_det(A) == integer_det(A, Bounded) == bareiss_det(rows)


def test_det_commutes_with_reduction():
    rng = random.Random(7)
    primes = [p for p in sieve(5000) if p > 1000]
    for _ in range(30):
        rows = [[rng.randint(-99, 99) for _ in range(6)] for _ in range(6)]
        A = DenseMatrix.from_rows(rows)
        d = integer_det(A)
        p = rng.choice(primes)
        F = GF(p)
        assert det_mod_p(rebind_dense(DenseMatrix(6, 6, F), A, Hom(ZZ, F))) == F.init(d)


@pytest.mark.parametrize("workers", [1, 2, 4])
def test_integer_det_worker_invariant(workers):
    rng = random.Random(8)
    rows = [[rng.randint(-50, 50) for _ in range(12)] for _ in range(12)]
    assert integer_det(DenseMatrix.from_rows(rows), workers=workers) == bareiss_det(rows)


def test_integer_rank_examples():
    assert integer_rank(DenseMatrix.identity(5)) == 5
    assert integer_rank(DenseMatrix.from_rows([[2, 4], [1, 2]])) == 1
    assert integer_rank(DenseMatrix(3, 4)) == 0


def test_integer_rank_constructed_rank_two():
    rng = random.Random(9)
    for _ in range(20):
        L = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(6)]
        R = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(2)]
        rows = matmul(L, R)
        expected = rational_rank(rows)
        assert expected <= 2
        assert integer_rank(DenseMatrix.from_rows(rows)) == expected
    while True:
        L = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(6)]
        R = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(2)]
        if rational_rank(matmul(L, R)) == 2:
            break
    assert integer_rank(DenseMatrix.from_rows(matmul(L, R))) == 2


def test_integer_rank_bounds_and_full_row_rank():
    rng = random.Random(10)
    for _ in range(20):
        m, n = rng.randint(1, 6), rng.randint(1, 8)
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
        r = integer_rank(DenseMatrix.from_rows(rows))
        assert r <= min(m, n)
        assert r == rational_rank(rows)
    for _ in range(10):
        m = rng.randint(1, 5)
        rows = [[rng.randint(-10 ** 6, 10 ** 6) for _ in range(m + 3)] for _ in range(m)]
        assert rational_rank(rows) == m
        assert integer_rank(DenseMatrix.from_rows(rows), workers=2) == m


def test_integer_rank_recovers_from_bad_first_prime():
    # det = 7: the first prime of the stream drops the rank to 1, later ones restore it.
    A = DenseMatrix.from_rows([[1, 0], [0, 7]])
    stats = CraStats()
    assert integer_rank(A, primes=PrimeStream(start=8), stats=stats) == 2
    assert stats.primes == [7, 5, 3, 2]
