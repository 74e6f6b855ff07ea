"""Dense matrices of exact polynomials.

Row-major, immutable after construction.  A matrix represents a map of free
modules acting on column vectors; an m x n matrix maps R^n -> R^m.  Zero-row
and zero-column shapes are fully supported since torsion modules and empty
kernels produce them all the time.
"""

from __future__ import annotations

from .poly import Poly


class ShapeMismatch(ValueError):
    pass


class PolyMatrix:
    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows, cols, entries, *, trusted=False):
        self.field = field
        self.rows = rows
        self.cols = cols
        if trusted:
            self.entries = entries
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ShapeMismatch(f"bad entry grid for {rows}x{cols}")
            self.entries = tuple(tuple(r) for r in entries)

    @classmethod
    def zeros(cls, field, rows, cols):
        z = Poly.zero(field)
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)), trusted=True)

    @classmethod
    def identity(cls, field, n):
        z, o = Poly.zero(field), Poly.one(field)
        return cls(
            field, n, n,
            tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)),
            trusted=True,
        )

    @classmethod
    def scalar(cls, field, n, p: Poly):
        z = Poly.zero(field)
        return cls(
            field, n, n,
            tuple(tuple(p if i == j else z for j in range(n)) for i in range(n)),
            trusted=True,
        )

    @classmethod
    def diagonal(cls, field, diag, rows=None, cols=None):
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        z = Poly.zero(field)
        ent = [[z] * cols for _ in range(rows)]
        for i, p in enumerate(diag):
            ent[i][i] = p
        return cls(field, rows, cols, ent)

    @classmethod
    def from_rows(cls, field, rows_of_polys):
        rows = len(rows_of_polys)
        cols = len(rows_of_polys[0]) if rows else 0
        return cls(field, rows, cols, rows_of_polys)

    @classmethod
    def column(cls, field, polys):
        return cls(field, len(polys), 1, [[p] for p in polys])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_zero(self):
        return all(p.is_zero for row in self.entries for p in row)

    @property
    def is_empty(self):
        return self.rows == 0 or self.cols == 0

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self):
        if self.is_empty:
            return f"PolyMatrix({self.rows}x{self.cols})"
        body = "; ".join(", ".join(repr(p) for p in row) for row in self.entries)
        return f"[{body}]"

    def __add__(self, other):
        self._same_shape(other)
        return PolyMatrix(
            self.field, self.rows, self.cols,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
            trusted=True,
        )

    def __sub__(self, other):
        self._same_shape(other)
        return PolyMatrix(
            self.field, self.rows, self.cols,
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
            trusted=True,
        )

    def __neg__(self):
        return PolyMatrix(
            self.field, self.rows, self.cols,
            tuple(tuple(-a for a in row) for row in self.entries),
            trusted=True,
        )

    def __mul__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} * {other.shape}")
        z = Poly.zero(self.field)
        ocols = list(zip(*other.entries)) if other.entries else [()] * other.cols
        out = []
        for row in self.entries:
            nz = [(j, p) for j, p in enumerate(row) if not p.is_zero]
            orow = []
            for c in range(other.cols):
                acc = z
                for j, p in nz:
                    q = other.entries[j][c]
                    if not q.is_zero:
                        acc = acc + p * q
                orow.append(acc)
            out.append(tuple(orow))
        return PolyMatrix(self.field, self.rows, other.cols, tuple(out), trusted=True)

    def scale(self, p: Poly):
        return PolyMatrix(
            self.field, self.rows, self.cols,
            tuple(tuple(a * p for a in row) for row in self.entries),
            trusted=True,
        )

    def transpose(self):
        return PolyMatrix(
            self.field, self.cols, self.rows,
            tuple(zip(*self.entries)) if self.entries and self.cols else
            tuple(() for _ in range(self.cols)) if self.rows == 0 else
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
            trusted=True,
        )

    def kron(self, other):
        """Kronecker product, self index outer: block (i,j) is self[i,j] * other."""
        f = self.field
        rows = self.rows * other.rows
        cols = self.cols * other.cols
        z = Poly.zero(f)
        out = [[z] * cols for _ in range(rows)]
        for i in range(self.rows):
            for j in range(self.cols):
                p = self.entries[i][j]
                if p.is_zero:
                    continue
                for k in range(other.rows):
                    for l in range(other.cols):
                        q = other.entries[k][l]
                        if not q.is_zero:
                            out[i * other.rows + k][j * other.cols + l] = p * q
        return PolyMatrix(f, rows, cols, out)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ShapeMismatch(f"hstack {self.shape} | {other.shape}")
        return PolyMatrix(
            self.field, self.rows, self.cols + other.cols,
            tuple(ra + rb for ra, rb in zip(self.entries, other.entries)),
            trusted=True,
        )

    def vstack(self, other):
        if self.cols != other.cols:
            raise ShapeMismatch(f"vstack {self.shape} / {other.shape}")
        return PolyMatrix(
            self.field, self.rows + other.rows, self.cols,
            self.entries + other.entries, trusted=True,
        )

    def submatrix(self, row_range, col_range):
        rows = list(row_range)
        cols = list(col_range)
        return PolyMatrix(
            self.field, len(rows), len(cols),
            tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
            trusted=True,
        )

    def column_at(self, j):
        return self.submatrix(range(self.rows), [j])

    def columns(self):
        return [self.column_at(j) for j in range(self.cols)]

    def vec(self):
        """Column-major flattening into a (rows*cols) x 1 matrix."""
        polys = [self.entries[i][j] for j in range(self.cols) for i in range(self.rows)]
        return PolyMatrix.column(self.field, polys)

    @classmethod
    def unvec(cls, field, column, rows, cols):
        if column.rows != rows * cols or column.cols != 1:
            raise ShapeMismatch("unvec size mismatch")
        ent = [[column.entries[j * rows + i][0] for j in range(cols)] for i in range(rows)]
        return cls(field, rows, cols, ent)

    def _same_shape(self, other):
        if self.shape != other.shape or self.field != other.field:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")


def block_matrix(field, grid):
    """Assemble a matrix from a grid (list of lists) of PolyMatrix blocks."""
    if not grid:
        return PolyMatrix.zeros(field, 0, 0)
    rows_out = None
    for brow in grid:
        acc = brow[0]
        for b in brow[1:]:
            acc = acc.hstack(b)
        rows_out = acc if rows_out is None else rows_out.vstack(acc)
    return rows_out


def block_diag(field, blocks):
    total_r = sum(b.rows for b in blocks)
    total_c = sum(b.cols for b in blocks)
    z = Poly.zero(field)
    out = [[z] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b.entries[i][j]
        r0 += b.rows
        c0 += b.cols
    return PolyMatrix(field, total_r, total_c, out)


def determinant(a: PolyMatrix) -> Poly:
    """Fraction-free (Bareiss) determinant; exact over k[x]."""
    from .poly import poly_divmod

    if a.rows != a.cols:
        raise ShapeMismatch("determinant of non-square matrix")
    n = a.rows
    if n == 0:
        return Poly.one(a.field)
    m = [list(row) for row in a.entries]
    sign = 1
    prev = Poly.one(a.field)
    for k in range(n - 1):
        if m[k][k].is_zero:
            for i in range(k + 1, n):
                if not m[i][k].is_zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(a.field)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                q, r = poly_divmod(num, prev)
                assert r.is_zero, "Bareiss exact-division failure"
                m[i][j] = q
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det
