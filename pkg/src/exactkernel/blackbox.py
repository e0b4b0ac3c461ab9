"""Structural blackboxes and their owning rebind targets.

A blackbox is anything with ``rowdim``, ``coldim``, ``field``, ``apply(out, x)``
and ``apply_transpose(out, x)``.  Dense and sparse matrices qualify directly.

The wrappers here come in pairs.  :class:`Compose`, :class:`Transpose` and
:class:`SubmatrixBB` hold references to operators owned elsewhere.
Rebinding one of them to another domain cannot reuse those references, so
:func:`rebind_blackbox` builds the owning counterpart (:class:`ComposeOwner`,
:class:`TransposeOwner`, :class:`SubmatrixOwner`) whose children are freshly
rebound copies.  A submatrix of a storing dense matrix rebinds to a plain
:class:`DenseMatrix` of the window instead.

Work vectors are founded at construction; ``apply`` performs no allocation.
As a consequence ``apply`` on a shared wrapper is not reentrant.
"""

from __future__ import annotations

from functools import singledispatch

from .domains import Hom
from .errors import DimMismatch, OutOfBounds
from .matrices import (
    DenseMatrix,
    MatrixView,
    SparseMatrix,
    _check_apply_dims,
    _check_apply_transpose_dims,
    new_vector,
    rebind_dense,
    sparse_rebind,
)


class Blackbox:
    """Base for the structural wrappers; subclasses set dims, field and apply."""

    is_storing = False
    rowdim: int
    coldim: int

    @property
    def shape(self):
        return (self.rowdim, self.coldim)

    def apply(self, out, x):
        raise NotImplementedError

    def apply_transpose(self, out, x):
        raise NotImplementedError

    def rebind(self, hom: Hom):
        return rebind_blackbox(self, hom)


class _ComposeBase(Blackbox):
    def _setup(self, left, right):
        if left.coldim != right.rowdim:
            raise DimMismatch(
                f"cannot compose {left.rowdim}x{left.coldim} with {right.rowdim}x{right.coldim}"
            )
        if left.field != right.field:
            raise DimMismatch(f"domains differ: {left.field!r} vs {right.field!r}")
        self.field = left.field
        self.rowdim = left.rowdim
        self.coldim = right.coldim
        self.tmp = new_vector(right.rowdim, self.field)

    def apply(self, out, x):
        _check_apply_dims(self, out, x)
        self._right.apply(self.tmp, x)
        return self._left.apply(out, self.tmp)

    def apply_transpose(self, out, x):
        _check_apply_transpose_dims(self, out, x)
        self._left.apply_transpose(self.tmp, x)
        return self._right.apply_transpose(out, self.tmp)


class Compose(_ComposeBase):
    """``left . right`` over references to both operands."""

    def __init__(self, left, right):
        self.left, self.right = left, right
        self._setup(left, right)

    _left = property(lambda self: self.left)
    _right = property(lambda self: self.right)


class ComposeOwner(_ComposeBase):
    """``left_data . right_data`` where the composite owns both operands."""

    def __init__(self, left_data, right_data):
        self.left_data, self.right_data = left_data, right_data
        self._setup(left_data, right_data)

    _left = property(lambda self: self.left_data)
    _right = property(lambda self: self.right_data)

    @classmethod
    def rebind_from(cls, src, hom: Hom) -> "ComposeOwner":
        """Owning copy of a :class:`Compose` or :class:`ComposeOwner` over ``hom.target``."""
        if isinstance(src, Compose):
            return cls(rebind_blackbox(src.left, hom), rebind_blackbox(src.right, hom))
        if isinstance(src, ComposeOwner):
            return cls(rebind_blackbox(src.left_data, hom), rebind_blackbox(src.right_data, hom))
        raise TypeError(f"cannot build ComposeOwner from {type(src).__name__}")


class _TransposeBase(Blackbox):
    def _setup(self, inner):
        self.field = inner.field
        self.rowdim, self.coldim = inner.coldim, inner.rowdim

    def apply(self, out, x):
        _check_apply_dims(self, out, x)
        return self._inner.apply_transpose(out, x)

    def apply_transpose(self, out, x):
        _check_apply_transpose_dims(self, out, x)
        return self._inner.apply(out, x)


class Transpose(_TransposeBase):
    def __init__(self, inner):
        self.inner = inner
        self._setup(inner)

    _inner = property(lambda self: self.inner)


class TransposeOwner(_TransposeBase):
    def __init__(self, inner_data):
        self.inner_data = inner_data
        self._setup(inner_data)

    _inner = property(lambda self: self.inner_data)

    @classmethod
    def rebind_from(cls, src, hom: Hom) -> "TransposeOwner":
        if isinstance(src, Transpose):
            return cls(rebind_blackbox(src.inner, hom))
        if isinstance(src, TransposeOwner):
            return cls(rebind_blackbox(src.inner_data, hom))
        raise TypeError(f"cannot build TransposeOwner from {type(src).__name__}")


class _SubmatrixBase(Blackbox):
    def _setup(self, inner, row0, col0, m, n):
        if min(row0, col0, m, n) < 0 or row0 + m > inner.rowdim or col0 + n > inner.coldim:
            raise OutOfBounds(
                f"window ({row0}, {col0}, {m}, {n}) exceeds "
                f"{inner.rowdim}x{inner.coldim} operator"
            )
        self.row0, self.col0 = row0, col0
        self.rowdim, self.coldim = m, n
        self.field = inner.field
        # Padded operand and full-size image for the wrapped operator.
        self._wcol = new_vector(inner.coldim, self.field)
        self._wrow = new_vector(inner.rowdim, self.field)

    @property
    def window(self):
        return (self.row0, self.col0, self.rowdim, self.coldim)

    def apply(self, out, x):
        _check_apply_dims(self, out, x)
        wcol, wrow = self._wcol, self._wrow
        for k in range(len(wcol)):
            wcol[k] = 0
        c0 = self.col0
        for j in range(self.coldim):
            wcol[c0 + j] = x[j]
        self._inner.apply(wrow, wcol)
        r0 = self.row0
        for i in range(self.rowdim):
            out[i] = wrow[r0 + i]
        return out

    def apply_transpose(self, out, x):
        _check_apply_transpose_dims(self, out, x)
        wcol, wrow = self._wcol, self._wrow
        for k in range(len(wrow)):
            wrow[k] = 0
        r0 = self.row0
        for i in range(self.rowdim):
            wrow[r0 + i] = x[i]
        self._inner.apply_transpose(wcol, wrow)
        c0 = self.col0
        for j in range(self.coldim):
            out[j] = wcol[c0 + j]
        return out


class SubmatrixBB(_SubmatrixBase):
    """Window of a referenced operator."""

    def __init__(self, inner, row0, col0, m, n):
        self.inner = inner
        self._setup(inner, row0, col0, m, n)

    _inner = property(lambda self: self.inner)


class SubmatrixOwner(_SubmatrixBase):
    def __init__(self, inner_data, row0, col0, m, n):
        self.inner_data = inner_data
        self._setup(inner_data, row0, col0, m, n)

    _inner = property(lambda self: self.inner_data)

    @classmethod
    def rebind_from(cls, src, hom: Hom) -> "SubmatrixOwner":
        if isinstance(src, SubmatrixBB):
            inner = src.inner
        elif isinstance(src, SubmatrixOwner):
            inner = src.inner_data
        else:
            raise TypeError(f"cannot build SubmatrixOwner from {type(src).__name__}")
        return cls(rebind_blackbox(inner, hom), *src.window)


def rebind_submatrix_of_storing(src: _SubmatrixBase, hom: Hom) -> DenseMatrix:
    """Rebind only the window entries of a submatrix over a storing dense matrix."""
    inner = src._inner
    row0, col0, m, n = src.window
    dst = DenseMatrix(m, n, hom.target)
    return rebind_dense(dst, inner.view(row0, col0, m, n), hom)


@singledispatch
def rebind_blackbox(src, hom: Hom):
    """Return an operator over ``hom.target`` that owns all of its data.

    Reference wrappers become their ``*Owner`` counterparts, owners stay owners,
    and leaves are copied through their own rebind.
    """
    raise TypeError(f"no rebind for {type(src).__name__}")


@rebind_blackbox.register(DenseMatrix)
@rebind_blackbox.register(MatrixView)
def _(src, hom):
    return rebind_dense(DenseMatrix(src.m, src.n, hom.target), src, hom)


@rebind_blackbox.register
def _(src: SparseMatrix, hom):
    return sparse_rebind(SparseMatrix(src.m, src.n, hom.target), src, hom)


@rebind_blackbox.register(Compose)
@rebind_blackbox.register(ComposeOwner)
def _(src, hom):
    return ComposeOwner.rebind_from(src, hom)


@rebind_blackbox.register(Transpose)
@rebind_blackbox.register(TransposeOwner)
def _(src, hom):
    return TransposeOwner.rebind_from(src, hom)


@rebind_blackbox.register(SubmatrixBB)
@rebind_blackbox.register(SubmatrixOwner)
def _(src, hom):
    if getattr(type(src._inner), "is_storing", False):
        return rebind_submatrix_of_storing(src, hom)
    return SubmatrixOwner.rebind_from(src, hom)


def compose_apply(out, c, x):
    return c.apply(out, x)
