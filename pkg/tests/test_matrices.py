import random

import pytest
from hypothesis import given, strategies as st

from exactkernel.alloc import count_allocations
from exactkernel.cra import symmetric
from exactkernel.domains import GF, ZZ, Hom
from exactkernel.errors import DimMismatch, OutOfBounds
from exactkernel.matrices import (
    DenseMatrix,
    MatrixView,
    SparseMatrix,
    dense_new,
    densify,
    mat_apply,
    new_vector,
    raw_iterate,
    rebind_dense,
    sparse_rebind,
    submatrix_view,
)

from oracles import entrywise_mod, matvec, sieve


def test_dense_new_is_zero():
    A = dense_new(2, 3, GF(5))
    assert A.shape == (2, 3)
    assert all(A[i, j] == 0 for i in range(2) for j in range(3))
    E = dense_new(0, 0, ZZ)
    assert E.data == [] and list(raw_iterate(E)) == []


def test_row_major_layout():
    A = DenseMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    for i in range(2):
        for j in range(3):
            assert A[i, j] == A.data[i * 3 + j]


def test_view_aliases_founder():
    A = DenseMatrix.from_rows([[4 * i + j for j in range(4)] for i in range(4)])
    V = submatrix_view(A, 1, 1, 2, 2)
    assert isinstance(V, MatrixView) and V.stride == 4
    assert V[0, 0] == A[1, 1]
    V[0, 0] = 9
    assert A[1, 1] == 9
    A[2, 2] = -1
    assert V[1, 1] == -1
    assert submatrix_view(A, 0, 0, 4, 4) == A


def test_view_out_of_bounds():
    A = dense_new(4, 4)
    with pytest.raises(OutOfBounds):
        submatrix_view(A, 3, 0, 2, 1)
    V = A.view(1, 1, 2, 2)
    with pytest.raises(OutOfBounds):
        V[2, 0]


def test_view_of_view_shares_founder():
    A = DenseMatrix.from_rows([[4 * i + j for j in range(4)] for i in range(4)])
    W = A.view(1, 0, 3, 4).view(1, 2, 2, 2)
    assert W.founder is A
    assert W.rows() == [[10, 11], [14, 15]]


@given(st.data())
def test_view_transparency_under_interleaved_writes(data):
    m = data.draw(st.integers(1, 6))
    n = data.draw(st.integers(1, 6))
    A = DenseMatrix(m, n)
    r0 = data.draw(st.integers(0, m - 1))
    c0 = data.draw(st.integers(0, n - 1))
    vm = data.draw(st.integers(1, m - r0))
    vn = data.draw(st.integers(1, n - c0))
    V = A.view(r0, c0, vm, vn)
    for step in range(data.draw(st.integers(0, 20))):
        val = data.draw(st.integers(-50, 50))
        if data.draw(st.booleans()):
            A[data.draw(st.integers(0, m - 1)), data.draw(st.integers(0, n - 1))] = val
        else:
            V[data.draw(st.integers(0, vm - 1)), data.draw(st.integers(0, vn - 1))] = val
        for i in range(vm):
            for j in range(vn):
                assert V[i, j] == A[r0 + i, c0 + j]


def test_raw_iterate_examples():
    A = DenseMatrix.from_rows([[1, 2], [3, 4]])
    assert list(raw_iterate(A)) == [1, 2, 3, 4]
    assert list(raw_iterate(A.view(0, 1, 2, 1))) == [2, 4]


def test_rebind_dense_examples():
    A = DenseMatrix.from_rows([[7, -3], [10, 5]])
    F = GF(5)
    Ap = rebind_dense(DenseMatrix(2, 2, F), A, Hom(ZZ, F))
    assert Ap.rows() == [[2, 2], [0, 0]]
    B = DenseMatrix.from_rows([[1, 6], [3, 0]], GF(7))
    assert rebind_dense(DenseMatrix(2, 2, GF(7)), B, Hom(GF(7), GF(7))) == B


def test_rebind_dense_random_against_entrywise_mod():
    rng = random.Random(1)
    rows = [[rng.randint(-100, 100) for _ in range(5)] for _ in range(5)]
    F = GF(13)
    Ap = rebind_dense(DenseMatrix(5, 5, F), DenseMatrix.from_rows(rows), Hom(ZZ, F))
    assert Ap.rows() == entrywise_mod(rows, 13)


def test_rebind_dense_errors():
    F = GF(5)
    A = DenseMatrix(2, 3)
    with pytest.raises(DimMismatch):
        rebind_dense(DenseMatrix(3, 2, F), A, Hom(ZZ, F))
    founder = DenseMatrix(4, 4, F)
    with pytest.raises(TypeError):
        rebind_dense(founder.view(0, 0, 2, 3), A, Hom(ZZ, F))


def test_rebind_keeps_destination_dims_and_allocates_nothing():
    F = GF(11)
    A = DenseMatrix.from_rows([[i * j - 7 for j in range(6)] for i in range(5)])
    dst = DenseMatrix(5, 6, F)
    storage = dst.data
    with count_allocations() as c:
        rebind_dense(dst, A, Hom(ZZ, F))
    assert c.blocks == 0
    assert dst.shape == (5, 6) and dst.data is storage and len(storage) == 30


small_int_rows = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-10 ** 6, 10 ** 6), min_size=n, max_size=n), min_size=1, max_size=6)
)


@given(small_int_rows, st.sampled_from(sieve(200)))
def test_rebind_commutes_with_submatrix(rows, p):
    A = DenseMatrix.from_rows(rows)
    F = GF(p)
    h = Hom(ZZ, F)
    full = rebind_dense(DenseMatrix(A.m, A.n, F), A, h)
    r0, c0 = A.m // 2, A.n // 3
    vm, vn = A.m - r0, A.n - c0
    win = rebind_dense(DenseMatrix(vm, vn, F), A.view(r0, c0, vm, vn), h)
    assert win.rows() == full.view(r0, c0, vm, vn).rows()


@given(st.sampled_from([p for p in sieve(2000) if p > 2]), st.data())
def test_symmetric_lift_round_trip(p, data):
    half = (p - 1) // 2
    rows = data.draw(st.lists(st.lists(st.integers(-half, half), min_size=3, max_size=3), min_size=1, max_size=4))
    A = DenseMatrix.from_rows(rows)
    F = GF(p)
    Ap = rebind_dense(DenseMatrix(A.m, A.n, F), A, Hom(ZZ, F))
    assert [[symmetric(F.convert(x), p) for x in r] for r in Ap.rows()] == rows


# ---------------------------------------------------------------- sparse

def test_sparse_rebind_drops_zeros():
    F = GF(5)
    S = SparseMatrix.from_triples(1, 1, [(0, 0, 5)])
    assert sparse_rebind(SparseMatrix(1, 1, F), S, Hom(ZZ, F)).entries == []
    S = SparseMatrix.from_triples(1, 2, [(0, 1, 7)])
    assert sparse_rebind(SparseMatrix(1, 2, F), S, Hom(ZZ, F)).entries == [(0, 1, 2)]


def test_sparse_rebind_errors():
    F = GF(5)
    S = SparseMatrix.from_triples(2, 2, [(0, 0, 1)])
    with pytest.raises(DimMismatch):
        sparse_rebind(SparseMatrix(2, 3, F), S, Hom(ZZ, F))
    dst = SparseMatrix.from_triples(2, 2, [(1, 1, 1)], F)
    with pytest.raises(ValueError):
        sparse_rebind(dst, S, Hom(ZZ, F))


def random_sparse(rng, m, n, density=0.3, lo=-20, hi=20, field=ZZ):
    triples = [(i, j, rng.randint(lo, hi)) for i in range(m) for j in range(n) if rng.random() < density]
    return SparseMatrix.from_triples(m, n, triples, field)


def test_sparse_invariants_after_construction():
    rng = random.Random(3)
    for _ in range(20):
        S = random_sparse(rng, 7, 9)
        S.check_invariants()
    with pytest.raises(ValueError):
        SparseMatrix.from_triples(2, 2, [(0, 0, 1), (0, 0, 2)])
    with pytest.raises(OutOfBounds):
        SparseMatrix.from_triples(2, 2, [(2, 0, 1)])


def test_sparse_rebind_commuting_square():
    rng = random.Random(11)
    F = GF(11)
    h = Hom(ZZ, F)
    for _ in range(25):
        S = random_sparse(rng, 10, 10, density=0.4)
        Sp = sparse_rebind(SparseMatrix(10, 10, F), S, h)
        Sp.check_invariants()
        left = densify(DenseMatrix(10, 10, F), Sp)
        right = rebind_dense(DenseMatrix(10, 10, F), densify(DenseMatrix(10, 10), S), h)
        assert left == right


# ---------------------------------------------------------------- apply

def test_mat_apply_examples():
    F = GF(5)
    A = DenseMatrix.from_rows([[1, 2], [3, 4]], F)
    assert mat_apply(new_vector(2, F), A, [1, 1]) == [3, 2]
    I = DenseMatrix.identity(4, F)
    assert mat_apply(new_vector(4, F), I, [1, 2, 3, 4]) == [1, 2, 3, 4]


def test_mat_apply_dim_mismatch():
    A = DenseMatrix(2, 3)
    with pytest.raises(DimMismatch):
        mat_apply(new_vector(2), A, [1, 2])
    with pytest.raises(DimMismatch):
        mat_apply(new_vector(3), A, [1, 2, 3])


def test_sparse_and_dense_apply_agree():
    rng = random.Random(5)
    F = GF(101)
    for _ in range(30):
        S = random_sparse(rng, 8, 8, density=0.35, lo=0, hi=100, field=F)
        D = densify(DenseMatrix(8, 8, F), S)
        x = [rng.randrange(101) for _ in range(8)]
        assert mat_apply(new_vector(8, F), S, x) == mat_apply(new_vector(8, F), D, x)
        expected = [v % 101 for v in matvec(D.rows(), x)]
        assert mat_apply(new_vector(8, F), D, x) == expected


def test_view_apply_matches_materialized_window():
    rng = random.Random(8)
    A = DenseMatrix.from_rows([[rng.randint(-9, 9) for _ in range(6)] for _ in range(5)])
    V = A.view(1, 2, 3, 4)
    x = [rng.randint(-9, 9) for _ in range(4)]
    assert mat_apply(new_vector(3), V, x) == matvec(V.rows(), x)
    y = [1, -2, 3]
    assert V.apply_transpose(new_vector(4), y) == matvec([list(c) for c in zip(*V.rows())], y)
