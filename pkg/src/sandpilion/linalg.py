"""Exact integer matrix kernel.

Everything here runs on Python ints; no floating point is ever touched.
"""
from __future__ import annotations

import json
import operator
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations
from math import gcd


@dataclass(frozen=True)
class IntMatrix:
    """Dense row-major integer matrix."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if any(not isinstance(x, int) or isinstance(x, bool) for x in self.entries):
            raise TypeError("IntMatrix entries must be int")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(operator.index(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "IntMatrix":
        n = len(diag)
        return cls(n, n, tuple(diag[i] if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> list[int]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [self.column(j) for j in range(self.cols)], cols=self.rows
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(out, cols=other.cols)

    def apply(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return [sum(x * y for x, y in zip(self.row(i), v)) for i in range(self.rows)]

    def delete(self, rows: Iterable[int] = (), cols: Iterable[int] = ()) -> "IntMatrix":
        rows, cols = set(rows), set(cols)
        keep_c = [j for j in range(self.cols) if j not in cols]
        out = [[r[j] for j in keep_c] for i, r in enumerate(self.to_rows()) if i not in rows]
        return IntMatrix.from_rows(out, cols=len(keep_c))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self[i, j] for j in cols] for i in rows], cols=len(cols)
        )

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix.from_rows(
            [a + b for a, b in zip(self.to_rows(), other.to_rows())],
            cols=self.cols + other.cols,
        )

    # Integers go over the wire as decimal strings since they outgrow 64 bits.
    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [str(x) for x in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: dict) -> "IntMatrix":
        return cls(int(data["rows"]), int(data["cols"]), tuple(int(x) for x in data["entries"]))

    @classmethod
    def from_json(cls, text: str) -> "IntMatrix":
        return cls.from_json_dict(json.loads(text))


def determinant(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not m.is_square:
        raise ValueError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def minor_delete(m: IntMatrix, row: int, col: int) -> int:
    """Determinant of ``m`` with one row and one column removed."""
    if not m.is_square:
        raise ValueError("minor of non-square matrix")
    if not (0 <= row < m.rows and 0 <= col < m.cols):
        raise IndexError((row, col))
    return determinant(m.delete(rows=[row], cols=[col]))


@dataclass(frozen=True)
class SnfResult:
    """Invariant factors of an integer matrix.

    ``diag`` holds the ``rank`` nonzero diagonal entries of the Smith form,
    each dividing the next, all positive.
    """

    diag: tuple[int, ...]
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return len(self.diag)

    def nontrivial(self) -> tuple[int, ...]:
        return tuple(x for x in self.diag if x != 1)

    def free_rank(self) -> int:
        """Rank of the free part of the cokernel Z^rows / im(m)."""
        return self.rows - self.rank


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """Invariant factors via gcd-pivoting elimination with a divisibility fix-up."""
    a = m.to_rows()
    nr, nc = m.rows, m.cols
    diag: list[int] = []
    t = 0
    while t < min(nr, nc):
        pivot = _min_abs_entry(a, t, nr, nc)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for r in a:
            r[t], r[pj] = r[pj], r[t]
        while True:
            done = True
            # clear column t below the pivot
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, nc):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
            # clear row t right of the pivot
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        for i in range(t, nr):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for r in a[t:]:
                            r[t], r[j] = r[j], r[t]
                        done = False
            if not done:
                continue
            # pivot must divide the remaining block; otherwise fold a row in
            d = a[t][t]
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % d),
                None,
            )
            if bad is None:
                break
            rt, rb = a[t], a[bad]
            for j in range(t, nc):
                rt[j] += rb[j]
        diag.append(abs(a[t][t]))
        t += 1
    return SnfResult(tuple(diag), nr, nc)


def _min_abs_entry(a, t, nr, nc):
    best = None
    best_val = 0
    for i in range(t, nr):
        row = a[i]
        for j in range(t, nc):
            x = row[j]
            if x and (best is None or abs(x) < best_val):
                best, best_val = (i, j), abs(x)
                if best_val == 1:
                    return best
    return best


def hermite_normal_form(m: IntMatrix) -> tuple[IntMatrix, list[int]]:
    """Column-style Hermite normal form.

    Returns ``(h, pivot_rows)``: ``h`` has the same column lattice as ``m``,
    its nonzero columns come first, column k has its leading entry (positive)
    in row ``pivot_rows[k]`` with those rows strictly increasing, and entries
    left of a pivot are reduced into [0, pivot).
    """
    nr, nc = m.rows, m.cols
    cols = [m.column(j) for j in range(nc)]
    pivot_rows: list[int] = []
    k = 0
    for r in range(nr):
        if k >= nc:
            break
        # gcd-combine all columns k.. on row r into column k
        for j in range(k + 1, nc):
            b = cols[j][r]
            if b == 0:
                continue
            a = cols[k][r]
            g, x, y = _xgcd(a, b)
            u, v = a // g, b // g
            ck, cj = cols[k], cols[j]
            cols[k] = [x * p + y * q for p, q in zip(ck, cj)]
            cols[j] = [u * q - v * p for p, q in zip(ck, cj)]
        if cols[k][r] == 0:
            continue
        if cols[k][r] < 0:
            cols[k] = [-x for x in cols[k]]
        piv = cols[k][r]
        for j in range(k):
            q = cols[j][r] // piv
            if q:
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[k])]
        pivot_rows.append(r)
        k += 1
    h = IntMatrix.from_rows(
        [[cols[j][i] for j in range(nc)] for i in range(nr)], cols=nc
    )
    return h, pivot_rows


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def in_image(m: IntMatrix, v: Sequence[int]) -> bool:
    """True iff ``v`` is an integer combination of the columns of ``m``."""
    if len(v) != m.rows:
        raise ValueError(f"vector length {len(v)} does not match {m.rows} rows")
    h, pivot_rows = hermite_normal_form(m)
    w = list(v)
    k = 0
    for r in range(m.rows):
        if k < len(pivot_rows) and pivot_rows[k] == r:
            piv = h[r, k]
            if w[r] % piv:
                return False
            c = w[r] // piv
            if c:
                col = h.column(k)
                w = [x - c * y for x, y in zip(w, col)]
            k += 1
        elif w[r]:
            return False
    return True


def minors_gcd(m: IntMatrix, j: int) -> int:
    """gcd of all j x j minors (brute force; for small matrices only)."""
    g = 0
    for rs in combinations(range(m.rows), j):
        for cs in combinations(range(m.cols), j):
            g = gcd(g, determinant(m.submatrix(rs, cs)))
            if g == 1:
                return 1
    return g
