"""Small immutable matrices with exact entries.

Entries are plain Python numbers (int or Fraction) or field residues;
no floating point is allowed anywhere in this library.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence


@dataclass(frozen=True)
class Mat:
    rows: int
    cols: int
    data: tuple  # tuple of row tuples

    @staticmethod
    def from_rows(rows: Sequence[Sequence], ncols: int | None = None) -> "Mat":
        rows = [tuple(r) for r in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        elif ncols is None:
            ncols = 0
        return Mat(len(rows), ncols, tuple(rows))

    @staticmethod
    def zero(rows: int, cols: int, zero=0) -> "Mat":
        return Mat(rows, cols, tuple(tuple(zero for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(n: int, one=1, zero=0) -> "Mat":
        return Mat(n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @staticmethod
    def from_cols(cols: Sequence[Sequence], nrows: int | None = None) -> "Mat":
        cols = [tuple(c) for c in cols]
        if cols:
            nrows = len(cols[0])
            if any(len(c) != nrows for c in cols):
                raise ValueError("ragged columns")
        elif nrows is None:
            nrows = 0
        return Mat(nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows)))

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def col(self, j: int) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows, tuple(self.col(j) for j in range(self.cols)))

    def mul(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        od = other.data
        out = []
        for i in range(self.rows):
            ri = self.data[i]
            out.append(tuple(sum(ri[k] * od[k][j] for k in range(self.cols))
                             for j in range(other.cols)))
        return Mat(self.rows, other.cols, tuple(out))

    def __matmul__(self, other: "Mat") -> "Mat":
        return self.mul(other)

    def hstack(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Mat(self.rows, self.cols + other.cols,
                   tuple(self.data[i] + other.data[i] for i in range(self.rows)))

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return Mat(self.rows + other.rows, self.cols, self.data + other.data)

    def take_cols(self, idx: Iterable[int]) -> "Mat":
        idx = list(idx)
        return Mat(self.rows, len(idx),
                   tuple(tuple(self.data[i][j] for j in idx) for i in range(self.rows)))

    def take_rows(self, idx: Iterable[int]) -> "Mat":
        idx = list(idx)
        return Mat(len(idx), self.cols, tuple(self.data[i] for i in idx))

    def map(self, f: Callable) -> "Mat":
        return Mat(self.rows, self.cols, tuple(tuple(f(v) for v in r) for r in self.data))

    def scale(self, c) -> "Mat":
        return self.map(lambda v: c * v)

    def add(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat(self.rows, self.cols,
                   tuple(tuple(a + b for a, b in zip(ra, rb))
                         for ra, rb in zip(self.data, other.data)))

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.data for v in r)

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.data]

    def __repr__(self) -> str:
        return f"Mat({self.rows}x{self.cols}, {self.to_lists()})"


def mat_from_vec(v: Sequence) -> Mat:
    """Column vector as an n x 1 matrix."""
    return Mat.from_cols([tuple(v)], nrows=len(v))


def vec_from_mat(m: Mat) -> tuple:
    if m.cols != 1:
        raise ValueError("expected a column vector")
    return m.col(0)


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")
