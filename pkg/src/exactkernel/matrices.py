"""Dense and sparse matrix containers over a coefficient domain.

Storage ownership follows the founding-scope rule: a :class:`DenseMatrix`
owns its row-major element array, a :class:`MatrixView` is a window onto a
founder's array and never owns anything.  Operations that produce a matrix
or vector write into a destination the caller already created; none of them
allocates storage for its result.

All domains in this package are quotients of Z with ``int`` representatives,
so matrix-vector products accumulate in Python integers and reduce once per
output entry through ``field.init``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .alloc import allocate
from .domains import ZZ, Hom
from .errors import DimMismatch, OutOfBounds


def new_vector(n: int, field=ZZ) -> list:
    """Found a zero vector of length ``n`` over ``field``."""
    return allocate(n, field.zero)


def _check_apply_dims(mat, out, x):
    if len(x) != mat.coldim or len(out) != mat.rowdim:
        raise DimMismatch(
            f"apply of {mat.rowdim}x{mat.coldim} operator: "
            f"out has length {len(out)}, x has length {len(x)}"
        )


def _check_apply_transpose_dims(mat, out, x):
    if len(x) != mat.rowdim or len(out) != mat.coldim:
        raise DimMismatch(
            f"transpose apply of {mat.rowdim}x{mat.coldim} operator: "
            f"out has length {len(out)}, x has length {len(x)}"
        )


class _DenseAccess:
    """Element access, iteration and products shared by owners and views."""

    # Structural trait: entries are stored in a dense array (owner or window).
    is_storing = True
    field = ZZ
    m = n = 0

    @property
    def rowdim(self) -> int:
        return self.m

    @property
    def coldim(self) -> int:
        return self.n

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    def _index(self, i, j) -> int:
        raise NotImplementedError

    def _check(self, i, j):
        if not (0 <= i < self.m and 0 <= j < self.n):
            raise OutOfBounds(f"index ({i}, {j}) outside {self.m}x{self.n} matrix")

    def __getitem__(self, ij):
        i, j = ij
        self._check(i, j)
        return self._storage[self._index(i, j)]

    def __setitem__(self, ij, value):
        i, j = ij
        self._check(i, j)
        self._storage[self._index(i, j)] = value

    def row(self, i) -> list:
        """Copy of row ``i`` (a fresh list; not part of the allocation model)."""
        start = self._index(i, 0)
        return self._storage[start:start + self.n]

    def rows(self) -> list[list]:
        return [self.row(i) for i in range(self.m)]

    def raw_iter(self) -> Iterator:
        """All ``m*n`` entries in row-major order."""
        data, n = self._storage, self.n
        for i in range(self.m):
            base = self._index(i, 0) if n else 0
            for j in range(n):
                yield data[base + j]

    def view(self, row0, col0, m, n) -> "MatrixView":
        return submatrix_view(self, row0, col0, m, n)

    def apply(self, out, x):
        _check_apply_dims(self, out, x)
        data, n, init = self._storage, self.n, self.field.init
        for i in range(self.m):
            base = self._index(i, 0) if n else 0
            acc = 0
            for j in range(n):
                acc += data[base + j] * x[j]
            out[i] = init(acc)
        return out

    def apply_transpose(self, out, x):
        _check_apply_transpose_dims(self, out, x)
        data, n, init = self._storage, self.n, self.field.init
        for j in range(n):
            acc = 0
            for i in range(self.m):
                acc += data[self._index(i, j)] * x[i]
            out[j] = init(acc)
        return out

    def __eq__(self, other):
        if not isinstance(other, _DenseAccess):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.field == other.field
            and list(self.raw_iter()) == list(other.raw_iter())
        )

    def __repr__(self):
        return f"{type(self).__name__}({self.m}x{self.n} over {self.field!r}, {self.rows()})"


class DenseMatrix(_DenseAccess):
    """Owning row-major dense matrix; entry ``(i, j)`` lives at ``data[i*n + j]``."""

    def __init__(self, m: int, n: int, field=ZZ):
        if m < 0 or n < 0:
            raise ValueError(f"negative dimensions {m}x{n}")
        self.m, self.n, self.field = m, n, field
        self.data = allocate(m * n, field.zero)

    @property
    def _storage(self):
        return self.data

    def _index(self, i, j):
        return i * self.n + j

    def raw_iter(self):
        return iter(self.data)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], field=ZZ) -> "DenseMatrix":
        m = len(rows)
        n = len(rows[0]) if m else 0
        A = cls(m, n, field)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise DimMismatch(f"row {i} has length {len(r)}, expected {n}")
            A.data[i * n:(i + 1) * n] = [field.init(v) for v in r]
        return A

    @classmethod
    def identity(cls, n: int, field=ZZ) -> "DenseMatrix":
        A = cls(n, n, field)
        for i in range(n):
            A.data[i * n + i] = field.one
        return A

    def copy(self) -> "DenseMatrix":
        B = DenseMatrix(self.m, self.n, self.field)
        B.data[:] = self.data
        return B


class MatrixView(_DenseAccess):
    """Read-write rectangular window onto a founder :class:`DenseMatrix`.

    The view holds a reference to the founder and must not outlive it.
    """

    def __init__(self, founder: DenseMatrix, row0: int, col0: int, m: int, n: int):
        self.founder = founder
        self.row0, self.col0, self.m, self.n = row0, col0, m, n
        self.stride = founder.n
        self.field = founder.field

    @property
    def _storage(self):
        return self.founder.data

    def _index(self, i, j):
        return (self.row0 + i) * self.stride + self.col0 + j


def dense_new(m: int, n: int, field=ZZ) -> DenseMatrix:
    return DenseMatrix(m, n, field)


def submatrix_view(mat, row0: int, col0: int, m: int, n: int) -> MatrixView:
    """Window ``[row0, row0+m) x [col0, col0+n)`` of ``mat`` (an owner or a view)."""
    if min(row0, col0, m, n) < 0 or row0 + m > mat.m or col0 + n > mat.n:
        raise OutOfBounds(
            f"window ({row0}, {col0}, {m}, {n}) exceeds {mat.m}x{mat.n} matrix"
        )
    if isinstance(mat, MatrixView):
        return MatrixView(mat.founder, mat.row0 + row0, mat.col0 + col0, m, n)
    return MatrixView(mat, row0, col0, m, n)


def raw_iterate(mat) -> Iterator:
    return mat.raw_iter()


def copy_dense(dst: DenseMatrix, src) -> DenseMatrix:
    """Copy the entries of ``src`` (owner or view) into ``dst`` in raw order."""
    if dst.shape != src.shape:
        raise DimMismatch(f"copy {src.m}x{src.n} into {dst.m}x{dst.n}")
    data = dst.data
    for k, x in enumerate(src.raw_iter()):
        data[k] = x
    return dst


def rebind_dense(dst: DenseMatrix, src, hom: Hom) -> DenseMatrix:
    """Write ``hom(src[i, j])`` into ``dst[i, j]``; ``dst`` is founded by the caller."""
    if not isinstance(dst, DenseMatrix):
        raise TypeError("rebind destination must own its storage (DenseMatrix)")
    if dst.shape != src.shape:
        raise DimMismatch(f"rebind {src.m}x{src.n} into {dst.m}x{dst.n}")
    if dst.field != hom.target:
        raise DimMismatch(f"destination over {dst.field!r}, Hom targets {hom.target!r}")
    image = hom.image_function
    data = dst.data
    for k, x in enumerate(src.raw_iter()):
        data[k] = image(x)
    return dst


class SparseMatrix:
    """Sparse matrix as row-major sorted ``(i, j, v)`` triples with no stored zeros."""

    def __init__(self, m: int, n: int, field=ZZ):
        if m < 0 or n < 0:
            raise ValueError(f"negative dimensions {m}x{n}")
        self.m, self.n, self.field = m, n, field
        self.entries: list[tuple[int, int, int]] = allocate(0)

    @property
    def rowdim(self):
        return self.m

    @property
    def coldim(self):
        return self.n

    @property
    def shape(self):
        return (self.m, self.n)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    @classmethod
    def from_triples(cls, m, n, triples: Iterable[tuple[int, int, int]], field=ZZ):
        """Build from arbitrary-order triples: values are reduced, zeros dropped."""
        S = cls(m, n, field)
        seen = set()
        for i, j, v in triples:
            if not (0 <= i < m and 0 <= j < n):
                raise OutOfBounds(f"entry ({i}, {j}) outside {m}x{n} matrix")
            if (i, j) in seen:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            seen.add((i, j))
            v = field.init(v)
            if not field.is_zero(v):
                S.entries.append((i, j, v))
        S.entries.sort()
        return S

    @classmethod
    def from_dense(cls, A, field=None):
        field = A.field if field is None else field
        triples = ((i, j, A[i, j]) for i in range(A.m) for j in range(A.n))
        return cls.from_triples(A.m, A.n, triples, field)

    def check_invariants(self):
        prev = None
        for i, j, v in self.entries:
            assert 0 <= i < self.m and 0 <= j < self.n
            assert not self.field.is_zero(v)
            assert prev is None or prev < (i, j)
            prev = (i, j)

    def apply(self, out, x):
        _check_apply_dims(self, out, x)
        init = self.field.init
        for i in range(self.m):
            out[i] = 0
        for i, j, v in self.entries:
            out[i] += v * x[j]
        for i in range(self.m):
            out[i] = init(out[i])
        return out

    def apply_transpose(self, out, x):
        _check_apply_transpose_dims(self, out, x)
        init = self.field.init
        for j in range(self.n):
            out[j] = 0
        for i, j, v in self.entries:
            out[j] += v * x[i]
        for j in range(self.n):
            out[j] = init(out[j])
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.shape, self.field, self.entries) == (other.shape, other.field, other.entries)

    def __repr__(self):
        return f"SparseMatrix({self.m}x{self.n} over {self.field!r}, {self.entries})"


def densify(dst: DenseMatrix, src: SparseMatrix) -> DenseMatrix:
    """Write the dense form of ``src`` into the caller-founded ``dst``."""
    if dst.shape != src.shape:
        raise DimMismatch(f"densify {src.m}x{src.n} into {dst.m}x{dst.n}")
    data, n = dst.data, dst.n
    zero = dst.field.zero
    for k in range(len(data)):
        data[k] = zero
    for i, j, v in src.entries:
        data[i * n + j] = v
    return dst


def sparse_rebind(dst: SparseMatrix, src: SparseMatrix, hom: Hom) -> SparseMatrix:
    """Map each stored entry through ``hom``; entries whose image is zero are dropped."""
    if dst.shape != src.shape:
        raise DimMismatch(f"rebind {src.m}x{src.n} into {dst.m}x{dst.n}")
    if dst.entries:
        raise ValueError("sparse rebind destination must be empty")
    image = hom.image_function
    is_zero = dst.field.is_zero
    for i, j, v in src.entries:
        w = image(v)
        if not is_zero(w):
            dst.entries.append((i, j, w))
    return dst


def mat_apply(out, mat, x):
    """``out <- mat . x`` for any matrix or blackbox; returns ``out``."""
    return mat.apply(out, x)
