"""Text formats for integer matrices.

SMS (sparse)::

    m n M
    i j v        one line per entry, 1-based indices
    0 0 0        terminator

Dense::

    m n
    a11 a12 ... a1n
    ...
"""

from __future__ import annotations

from typing import Iterable, TextIO

from .domains import ZZ
from .errors import MatrixFormatError
from .matrices import DenseMatrix, SparseMatrix

SMS = "sms"
DENSE = "dense"


def _ints(tokens, lineno, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise MatrixFormatError(f"non-integer token in {what}: {' '.join(tokens)!r}", lineno)


def _numbered(lines: Iterable[str]):
    for lineno, line in enumerate(lines, 1):
        tokens = line.split()
        if tokens:
            yield lineno, tokens


def sniff_format(first_line: str, lineno: int = 1) -> str:
    """``"sms"`` for a header ``m n M``, ``"dense"`` for ``m n``."""
    tokens = first_line.split()
    if len(tokens) == 3 and tokens[2] == "M":
        _ints(tokens[:2], lineno, "SMS header")
        return SMS
    if len(tokens) == 2:
        _ints(tokens, lineno, "dense header")
        return DENSE
    raise MatrixFormatError(f"unrecognized header {first_line.strip()!r}", lineno)


def _dims(tokens, lineno):
    m, n = _ints(tokens, lineno, "header")
    if m < 0 or n < 0:
        raise MatrixFormatError(f"negative dimensions {m}x{n}", lineno)
    return m, n


def read_sms(lines: Iterable[str], field=ZZ) -> SparseMatrix:
    rows = _numbered(lines)
    try:
        lineno, tokens = next(rows)
    except StopIteration:
        raise MatrixFormatError("empty input", 1)
    if len(tokens) != 3 or tokens[2] != "M":
        raise MatrixFormatError("SMS header must be 'm n M'", lineno)
    m, n = _dims(tokens[:2], lineno)
    triples = []
    seen = set()
    terminated = False
    for lineno, tokens in rows:
        if terminated:
            raise MatrixFormatError("content after '0 0 0' terminator", lineno)
        if len(tokens) != 3:
            raise MatrixFormatError(f"expected 'i j v', got {len(tokens)} tokens", lineno)
        i, j, v = _ints(tokens, lineno, "entry")
        if i == 0 and j == 0 and v == 0:
            terminated = True
            continue
        if not (1 <= i <= m and 1 <= j <= n):
            raise MatrixFormatError(f"entry ({i}, {j}) outside {m}x{n} matrix", lineno)
        if (i, j) in seen:
            raise MatrixFormatError(f"duplicate entry ({i}, {j})", lineno)
        seen.add((i, j))
        triples.append((i - 1, j - 1, v))
    if not terminated:
        raise MatrixFormatError("missing '0 0 0' terminator", lineno + 1)
    return SparseMatrix.from_triples(m, n, triples, field)


def write_sms(S: SparseMatrix, out: TextIO) -> None:
    out.write(f"{S.m} {S.n} M\n")
    for i, j, v in S.entries:
        out.write(f"{i + 1} {j + 1} {v}\n")
    out.write("0 0 0\n")


def read_dense(lines: Iterable[str], field=ZZ) -> DenseMatrix:
    rows = _numbered(lines)
    try:
        lineno, tokens = next(rows)
    except StopIteration:
        raise MatrixFormatError("empty input", 1)
    if len(tokens) != 2:
        raise MatrixFormatError("dense header must be 'm n'", lineno)
    m, n = _dims(tokens, lineno)
    A = DenseMatrix(m, n, field)
    # Rows of an m x 0 matrix are blank lines, which the tokenizer skips.
    for i in range(m if n else 0):
        try:
            lineno, tokens = next(rows)
        except StopIteration:
            raise MatrixFormatError(f"expected {m} rows, found {i}", lineno + 1)
        if len(tokens) != n:
            raise MatrixFormatError(f"row {i + 1} has {len(tokens)} entries, expected {n}", lineno)
        A.data[i * n:(i + 1) * n] = [field.init(v) for v in _ints(tokens, lineno, "row")]
    for lineno, _ in rows:
        raise MatrixFormatError(f"trailing content after {m} rows", lineno)
    return A


def write_dense(A, out: TextIO) -> None:
    out.write(f"{A.m} {A.n}\n")
    for i in range(A.m):
        out.write(" ".join(str(v) for v in A.row(i)) + "\n")


def read_matrix(text: str, fmt: str | None = None, field=ZZ):
    """Parse ``text`` as SMS or dense; ``fmt=None`` sniffs the first non-blank line."""
    lines = text.splitlines()
    if fmt is None:
        lineno, first = next(((k, ln) for k, ln in enumerate(lines, 1) if ln.strip()), (1, ""))
        fmt = sniff_format(first, lineno)
    if fmt == SMS:
        return read_sms(lines, field)
    if fmt == DENSE:
        return read_dense(lines, field)
    raise ValueError(f"unknown format {fmt!r}")
