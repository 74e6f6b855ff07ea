import itertools
import random

from cdgmf.fields import QQ, PrimeField
from cdgmf.poly import Poly, poly_gcd, poly_divides
from cdgmf.matrices import PolyMatrix, determinant
from cdgmf.smith import smith_normal_form, solve_linear, kernel_basis, matrix_rank


def P(field, *coeffs):
    return Poly(field, coeffs)


def random_matrix(field, rng, rows, cols, deg=2, height=2):
    return PolyMatrix(field, rows, cols, [
        [Poly(field, [field.random(rng, height) for _ in range(rng.randrange(0, deg + 2))])
         for _ in range(cols)]
        for _ in range(rows)
    ])


def minors_gcd(a, k):
    """Independent oracle: gcd of all k x k minors, computed by brute
    enumeration with Bareiss determinants."""
    g = Poly.zero(a.field)
    for rows in itertools.combinations(range(a.rows), k):
        for cols in itertools.combinations(range(a.cols), k):
            g = poly_gcd(g, determinant(a.submatrix(rows, cols)))
    return g


def check_smith(a):
    s = smith_normal_form(a)
    assert s.U * a * s.V == s.D
    # diagonal, monic, divisibility chain
    for i in range(s.D.rows):
        for j in range(s.D.cols):
            if i != j:
                assert s.D.entries[i][j].is_zero
    fs = s.invariant_factors
    for p in fs:
        assert p.leading() == a.field.one()
    for p, q in zip(fs, fs[1:]):
        assert poly_divides(p, q)
    # transforms are unimodular: nonzero constant determinants
    du, dv = determinant(s.U), determinant(s.V)
    assert du.is_constant and not du.is_zero
    assert dv.is_constant and not dv.is_zero
    return s


def test_identity_3x3():
    s = check_smith(PolyMatrix.identity(QQ, 3))
    assert [p.degree for p in s.invariant_factors] == [0, 0, 0]
    assert all(p.is_one for p in s.invariant_factors)


def test_zero_matrix():
    s = check_smith(PolyMatrix.zeros(QQ, 2, 3))
    assert s.invariant_factors == ()
    assert s.D.is_zero


def test_triangular_example_against_minors_oracle():
    # [[x, x^2], [0, x^3]]: 1x1 minors gcd = x, 2x2 minor = x^4
    x = P(QQ, 0, 1)
    a = PolyMatrix(QQ, 2, 2, [[x, x * x], [Poly.zero(QQ), x * x * x]])
    assert minors_gcd(a, 1) == x
    assert minors_gcd(a, 2) == x * x * x * x
    s = check_smith(a)
    assert list(s.invariant_factors) == [x, x * x * x]


def test_invariant_factors_match_minors_random():
    rng = random.Random(3)
    for field in (QQ, PrimeField(5)):
        for _ in range(25):
            rows, cols = rng.randrange(1, 4), rng.randrange(1, 4)
            a = random_matrix(field, rng, rows, cols)
            s = check_smith(a)
            prod = Poly.one(field)
            for k, d in enumerate(s.invariant_factors, start=1):
                prod = prod * d
                assert prod == minors_gcd(a, k)
            assert matrix_rank(a) == len(s.invariant_factors)


def test_empty_shapes():
    check_smith(PolyMatrix.zeros(QQ, 0, 3))
    check_smith(PolyMatrix.zeros(QQ, 3, 0))
    check_smith(PolyMatrix.zeros(QQ, 0, 0))


def test_solve_scalar_divisible():
    x = P(QQ, 0, 1)
    a = PolyMatrix(QQ, 1, 1, [[x]])
    b = PolyMatrix(QQ, 1, 1, [[x * x]])
    res = solve_linear(a, b)
    assert res is not None
    part, hom = res
    assert a * part == b
    assert part == PolyMatrix(QQ, 1, 1, [[x]])
    assert hom.cols == 0


def test_solve_no_solution():
    x = P(QQ, 0, 1)
    a = PolyMatrix(QQ, 1, 1, [[x]])
    b = PolyMatrix(QQ, 1, 1, [[Poly.one(QQ)]])
    assert solve_linear(a, b) is None


def test_solve_underdetermined():
    x = P(QQ, 0, 1)
    a = PolyMatrix(QQ, 1, 2, [[x, x * x]])
    b = PolyMatrix(QQ, 1, 1, [[x * x * x]])
    res = solve_linear(a, b)
    assert res is not None
    part, hom = res
    assert a * part == b
    assert hom.cols == 1
    assert (a * hom).is_zero


def brute_force_solution_exists(a, b, max_deg, field):
    """Degree-bounded exhaustive oracle over a tiny coefficient set: look for
    x with a*x = b, all entries of degree <= max_deg, coefficients in a small
    box.  Exponential, only usable for very small systems."""
    coeffs = [field.coerce(c) for c in (-1, 0, 1)] if field == QQ else [
        field.coerce(c) for c in range(field.p)]
    n = a.cols
    slots = n * (max_deg + 1)
    for combo in itertools.product(coeffs, repeat=slots):
        cols = []
        for i in range(n):
            cs = combo[i * (max_deg + 1):(i + 1) * (max_deg + 1)]
            cols.append(Poly(field, cs))
        x = PolyMatrix.column(field, cols)
        if a * x == b:
            return True
    return False


def test_solver_completeness_against_brute_force():
    rng = random.Random(11)
    field = PrimeField(2)
    for _ in range(25):
        a = random_matrix(field, rng, rng.randrange(1, 3), rng.randrange(1, 3), deg=1)
        b = random_matrix(field, rng, a.rows, 1, deg=1)
        deg_bound = (b.entries[0][0].degree if not b.is_zero else 0)
        deg_bound = max(1, deg_bound + sum(
            max(0, p.degree) for row in a.entries for p in row))
        deg_bound = min(deg_bound, 3)
        brute = brute_force_solution_exists(a, b, deg_bound, field)
        exact = solve_linear(a, b)
        if brute:
            assert exact is not None
        if exact is not None:
            part, _ = exact
            assert a * part == b


def test_kernel_basis_row_vector():
    x = P(QQ, 0, 1)
    a = PolyMatrix(QQ, 1, 2, [[x, -Poly.one(QQ)]])
    k = kernel_basis(a)
    assert k.cols == 1
    assert (a * k).is_zero
    # basis column proportional to (1, x)
    v0, v1 = k.entries[0][0], k.entries[1][0]
    assert v1 == v0 * x


def test_kernel_of_invertible_is_empty():
    a = PolyMatrix(QQ, 2, 2, [[P(QQ, 1), P(QQ, 1)], [Poly.zero(QQ), P(QQ, 2)]])
    assert kernel_basis(a).cols == 0


def test_kernel_of_injective_column():
    x = P(QQ, 0, 1)
    a = PolyMatrix(QQ, 2, 1, [[x], [x * x]])
    assert kernel_basis(a).cols == 0
    # cross-check via solve_linear on the zero vector
    res = solve_linear(a, PolyMatrix.zeros(QQ, 2, 1))
    assert res is not None and res[1].cols == 0


def test_kernel_rank_formula_random():
    rng = random.Random(5)
    for field in (QQ, PrimeField(3)):
        for _ in range(20):
            a = random_matrix(field, rng, rng.randrange(1, 4), rng.randrange(1, 4))
            k = kernel_basis(a)
            assert (a * k).is_zero
            assert k.cols == a.cols - matrix_rank(a)
            # basis columns are independent: stacked matrix has full rank
            if k.cols:
                assert matrix_rank(k) == k.cols
