"""Smith normal form over k[x] and the linear-system solvers built on it.

k[x] is a Euclidean domain, so row/column reduction with minimal-degree
pivots terminates.  Pivot selection is deterministic (minimal degree, ties
broken by lowest (row, col)) so invariant factors and kernel bases are
reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import Poly, poly_divmod
from .matrices import PolyMatrix, ShapeMismatch


@dataclass(frozen=True)
class SmithForm:
    U: PolyMatrix
    V: PolyMatrix
    D: PolyMatrix
    invariant_factors: tuple

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(a: PolyMatrix) -> SmithForm:
    """Diagonalize: U * a * V = D with monic diagonal in a divisibility chain."""
    f = a.field
    rows, cols = a.rows, a.cols
    m = [list(r) for r in a.entries]
    u = [list(r) for r in PolyMatrix.identity(f, rows).entries]
    v = [list(r) for r in PolyMatrix.identity(f, cols).entries]

    def row_sub(i, k, q):
        # row_i -= q * row_k
        mi, mk = m[i], m[k]
        for j in range(cols):
            if not mk[j].is_zero:
                mi[j] = mi[j] - q * mk[j]
        ui, uk = u[i], u[k]
        for j in range(rows):
            if not uk[j].is_zero:
                ui[j] = ui[j] - q * uk[j]

    def col_sub(j, k, q):
        # col_j -= q * col_k
        for i in range(rows):
            if not m[i][k].is_zero:
                m[i][j] = m[i][j] - q * m[i][k]
        for i in range(cols):
            if not v[i][k].is_zero:
                v[i][j] = v[i][j] - q * v[i][k]

    def row_swap(i, k):
        m[i], m[k] = m[k], m[i]
        u[i], u[k] = u[k], u[i]

    def col_swap(j, k):
        for i in range(rows):
            m[i][j], m[i][k] = m[i][k], m[i][j]
        for i in range(cols):
            v[i][j], v[i][k] = v[i][k], v[i][j]

    def find_pivot(t):
        best = None
        best_deg = None
        for i in range(t, rows):
            mi = m[i]
            for j in range(t, cols):
                p = mi[j]
                if p.is_zero:
                    continue
                d = p.degree
                if best_deg is None or d < best_deg:
                    best, best_deg = (i, j), d
                    if d == 0:
                        return best
        return best

    t = 0
    limit = min(rows, cols)
    while t < limit:
        piv = find_pivot(t)
        if piv is None:
            break
        if piv != (t, t):
            if piv[0] != t:
                row_swap(t, piv[0])
            if piv[1] != t:
                col_swap(t, piv[1])
        while True:
            # clear column t below/above the pivot
            changed = True
            while changed:
                changed = False
                for i in range(rows):
                    if i != t and not m[i][t].is_zero:
                        q, r = poly_divmod(m[i][t], m[t][t])
                        row_sub(i, t, q)
                        if not r.is_zero:
                            row_swap(i, t)
                            changed = True
                for j in range(cols):
                    if j != t and not m[t][j].is_zero:
                        q, r = poly_divmod(m[t][j], m[t][t])
                        col_sub(j, t, q)
                        if not r.is_zero:
                            col_swap(j, t)
                            changed = True
            # pivot must divide every remaining entry for the chain to work out
            offender = None
            for i in range(t + 1, rows):
                mi = m[i]
                for j in range(t + 1, cols):
                    if not mi[j].is_zero:
                        _, r = poly_divmod(mi[j], m[t][t])
                        if not r.is_zero:
                            offender = i
                            break
                if offender is not None:
                    break
            if offender is None:
                break
            # fold the offending row into row t and keep reducing
            one = Poly.one(f)
            row_sub(t, offender, -one)
        t += 1

    # monic normalization of the diagonal (scale rows of m and u)
    factors = []
    for i in range(limit):
        p = m[i][i]
        if p.is_zero:
            continue
        lead = p.leading()
        if lead != f.one():
            inv = Poly.const(f, f.inv(lead))
            m[i] = [c * inv for c in m[i]]
            u[i] = [c * inv for c in u[i]]
        factors.append(m[i][i])

    return SmithForm(
        U=PolyMatrix(f, rows, rows, u),
        V=PolyMatrix(f, cols, cols, v),
        D=PolyMatrix(f, rows, cols, m),
        invariant_factors=tuple(factors),
    )


class LinearSolver:
    """Caches the Smith form of a matrix to answer many solve/membership
    queries against the same system A x = b."""

    def __init__(self, a: PolyMatrix):
        self.a = a
        self.smith = smith_normal_form(a)

    @property
    def rank(self) -> int:
        return self.smith.rank

    def kernel(self) -> PolyMatrix:
        """Columns form a free basis of ker(a)."""
        s = self.smith
        r = s.rank
        return s.V.submatrix(range(self.a.cols), range(r, self.a.cols))

    def solve(self, b: PolyMatrix):
        """Particular solution X with a*X = b, or None when unsolvable.

        b may have several columns; each is solved against the cached form.
        """
        if b.rows != self.a.rows:
            raise ShapeMismatch(f"solve: {self.a.shape} vs rhs {b.shape}")
        s = self.smith
        f = self.a.field
        y = s.U * b
        r = s.rank
        z = Poly.zero(f)
        out_cols = []
        for c in range(b.cols):
            xs = [z] * self.a.cols
            ok = True
            for i in range(self.a.rows):
                yi = y.entries[i][c]
                if i < r:
                    q, rem = poly_divmod(yi, s.D.entries[i][i])
                    if not rem.is_zero:
                        ok = False
                        break
                    xs[i] = q
                elif not yi.is_zero:
                    ok = False
                    break
            if not ok:
                return None
            out_cols.append(xs)
        x = PolyMatrix(f, self.a.cols, b.cols,
                       [[out_cols[c][i] for c in range(b.cols)] for i in range(self.a.cols)])
        return s.V * x

    def contains(self, b: PolyMatrix) -> bool:
        """Column-span membership: every column of b lies in the image of a."""
        return self.solve(b) is not None


def solve_linear(a: PolyMatrix, b: PolyMatrix):
    """Complete solution of a*x = b over k[x].

    Returns (particular, homogeneous_basis) or None when no solution exists;
    homogeneous_basis columns freely generate the solution set of a*x = 0.
    """
    solver = LinearSolver(a)
    x = solver.solve(b)
    if x is None:
        return None
    return x, solver.kernel()


def kernel_basis(a: PolyMatrix) -> PolyMatrix:
    """Columns form a free basis of the kernel of a (kernels of maps of free
    modules over a PID are free)."""
    return LinearSolver(a).kernel()


def matrix_rank(a: PolyMatrix) -> int:
    return smith_normal_form(a).rank
