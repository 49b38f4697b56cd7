"""Exact rational linear algebra on sparse matrices.

Every rank, kernel, solve and quotient computation in the package runs
through this module.  Coefficients are `fractions.Fraction` throughout.
Pivot selection in `rref` is fixed (leftmost column first, first nonzero
row in that column) so that echelon forms, particular solutions and
kernel bases are bit-reproducible; downstream "canonical coordinates"
depend on that determinism.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

Q = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


class MatrixQ:
    """Sparse matrix over the rationals.

    Entries are kept in a dict (row, col) -> Fraction with no explicit
    zeros.  Values are treated as immutable after construction.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[tuple[int, int], Fraction] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry index ({i}, {j}) out of range")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Fraction | int]]) -> "MatrixQ":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged row data")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = Fraction(v)
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Fraction]],
                     rows: int) -> "MatrixQ":
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    entries[(i, j)] = Fraction(v)
        return cls(rows, len(columns), entries)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.entries.get(key, ZERO)

    def row(self, i: int) -> dict[int, Fraction]:
        return {j: v for (r, j), v in self.entries.items() if r == i}

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, MatrixQ) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self) -> str:
        return f"MatrixQ({self.rows}x{self.cols}, {len(self.entries)} nonzero)"

    def _row_dicts(self) -> list[dict[int, Fraction]]:
        rows: list[dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows


def _eliminate(rows: list[dict[int, Fraction]], ncols: int):
    """In-place Gauss-Jordan elimination.  Returns (rank, pivot_cols)."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        src = None
        for i in range(r, len(rows)):
            if rows[i].get(c):
                src = i
                break
        if src is None:
            continue
        rows[r], rows[src] = rows[src], rows[r]
        inv = ONE / rows[r][c]
        if inv != 1:
            rows[r] = {j: v * inv for j, v in rows[r].items()}
        prow = rows[r]
        for i in range(len(rows)):
            if i == r:
                continue
            f = rows[i].get(c)
            if not f:
                continue
            tgt = rows[i]
            for j, v in prow.items():
                nv = tgt.get(j, ZERO) - f * v
                if nv:
                    tgt[j] = nv
                else:
                    tgt.pop(j, None)
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return r, pivots


def rref(m: MatrixQ) -> tuple[int, list[int], MatrixQ]:
    """Row-reduced echelon form.

    Returns (rank, pivot_cols, reduced).  Deterministic: pivots are the
    leftmost columns, searched top to bottom.
    """
    rows = m._row_dicts()
    rank, pivots = _eliminate(rows, m.cols)
    entries = {}
    for i, row in enumerate(rows):
        for j, v in row.items():
            entries[(i, j)] = v
    return rank, pivots, MatrixQ(m.rows, m.cols, entries)


def solve(a: MatrixQ, b: Sequence[Fraction | int]) -> Optional[list[Fraction]]:
    """Particular solution of a·x = b with free variables set to 0.

    Returns None when the system is inconsistent.
    """
    if len(b) != a.rows:
        raise ValueError("right-hand side length does not match row count")
    rows = a._row_dicts()
    for i, v in enumerate(b):
        if v:
            rows[i][a.cols] = Fraction(v)
    rank, pivots = _eliminate(rows, a.cols)
    # a pivot falling in the augmented column means b is not in the image
    for i in range(rank, len(rows)):
        if rows[i].get(a.cols):
            return None
    x = [ZERO] * a.cols
    for i, c in enumerate(pivots):
        x[c] = rows[i].get(a.cols, ZERO)
    return x


def kernel_basis(a: MatrixQ) -> list[list[Fraction]]:
    """Echelon-normalized basis of the null space, one vector per free column."""
    rows = a._row_dicts()
    rank, pivots = _eliminate(rows, a.cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(a.cols):
        if f in pivot_set:
            continue
        v = [ZERO] * a.cols
        v[f] = ONE
        for i, c in enumerate(pivots):
            coeff = rows[i].get(f)
            if coeff:
                v[c] = -coeff
        basis.append(v)
    return basis


def rank_of_columns(columns: Sequence[Mapping[object, Fraction]]) -> int:
    """Rank of the span of sparse column vectors keyed by arbitrary row labels."""
    row_keys = sorted({k for col in columns for k in col}, key=repr)
    index = {k: i for i, k in enumerate(row_keys)}
    rows: list[dict[int, Fraction]] = [dict() for _ in row_keys]
    for j, col in enumerate(columns):
        for k, v in col.items():
            if v:
                rows[index[k]][j] = v
    rank, _ = _eliminate(rows, len(columns))
    return rank


class BlockSolver:
    """Reusable exact solver for a fixed sparse column family.

    Built once from columns over a fixed row universe; solves a·x = b for
    many right-hand sides by replaying the recorded row operations
    (the rref of [a | I]).  Solutions follow the solve() convention:
    free variables are zero.
    """

    def __init__(self, row_keys: Sequence[object],
                 columns: Sequence[Mapping[object, Fraction]]):
        self.row_keys = list(row_keys)
        self.index = {k: i for i, k in enumerate(self.row_keys)}
        n, m = len(columns), len(self.row_keys)
        rows: list[dict[int, Fraction]] = [dict() for _ in range(m)]
        for j, col in enumerate(columns):
            for k, v in col.items():
                if v:
                    rows[self.index[k]][j] = v
        for i in range(m):
            rows[i][n + i] = ONE
        self.ncols = n
        self.rank, pivots = _eliminate(rows, n)
        self.pivots = pivots
        # transform rows: tb[i] = sum_j transform[i][j] * b[j]
        self.transform = [{j - n: v for j, v in rows[i].items() if j >= n}
                          for i in range(m)]

    def solve(self, b: Mapping[object, Fraction]) -> Optional[list[Fraction]]:
        bvec: dict[int, Fraction] = {}
        for k, v in b.items():
            if v:
                i = self.index.get(k)
                if i is None:
                    return None          # target hits a row no column reaches
                bvec[i] = v
        tb = []
        for i in range(len(self.row_keys)):
            s = ZERO
            trow = self.transform[i]
            for j, bj in bvec.items():
                t = trow.get(j)
                if t:
                    s += t * bj
            tb.append(s)
        for i in range(self.rank, len(self.row_keys)):
            if tb[i]:
                return None
        x = [ZERO] * self.ncols
        for i, c in enumerate(self.pivots):
            x[c] = tb[i]
        return x


def echelon_reduce(vectors: Iterable[Sequence[Fraction]],
                   length: int) -> tuple[list[list[Fraction]], list[int]]:
    """Echelonize dense vectors; returns (reduced independent vectors, pivot positions)."""
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for vec in vectors:
        v = list(vec)
        for bvec, p in zip(basis, pivots):
            f = v[p]
            if f:
                for j in range(length):
                    if bvec[j]:
                        v[j] -= f * bvec[j]
        p = next((j for j in range(length) if v[j]), None)
        if p is None:
            continue
        inv = ONE / v[p]
        v = [c * inv for c in v]
        basis.append(v)
        pivots.append(p)
    return basis, pivots
