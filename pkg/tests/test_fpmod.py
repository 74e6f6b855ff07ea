import random

import pytest

from cdgmf.fields import QQ, PrimeField
from cdgmf.poly import Poly
from cdgmf.matrices import PolyMatrix
from cdgmf.fpmod import (
    FPModule, IllDefinedMap, check_well_defined, map_is_zero, maps_equal,
    fp_kernel, fp_cokernel, fp_image, fp_subquotient, fp_module_ops,
    fp_tensor, fp_direct_sum,
)


def x_poly(field=QQ):
    return Poly(field, [0, 1])


def cyclic(p_coeffs, field=QQ):
    return FPModule.cyclic(field, Poly(field, p_coeffs))


def test_cokernel_of_multiplication_by_x():
    # coker(x: R -> R) = R/(x), k-dimension 1
    x = x_poly()
    r = FPModule.free(QQ, 1)
    m = fp_cokernel(PolyMatrix(QQ, 1, 1, [[x]]), r, r)
    assert m.free_rank == 0
    assert list(m.torsion_factors) == [x]
    assert m.k_dimension() == 1


def test_kernel_of_identity_is_zero():
    m = cyclic([0, 0, 1])  # R/(x^2)
    ident = PolyMatrix.identity(QQ, 1)
    k, incl = fp_kernel(ident, m, m)
    assert k.is_zero_module
    assert incl.cols == k.generators


def test_k_dimension_of_sum():
    # R/(x^2) + R/(x) has k-dimension 3
    m = fp_direct_sum(cyclic([0, 0, 1]), cyclic([0, 1]))
    assert m.k_dimension() == 3
    assert fp_module_ops(m, m, PolyMatrix.identity(QQ, 2), "k_dimension") == 3


def test_free_rank_infinite_dimension():
    m = fp_direct_sum(FPModule.free(QQ, 1), cyclic([0, 1]))
    assert m.k_dimension() is None
    assert m.free_rank == 1
    assert list(m.torsion_factors) == [x_poly()]


def test_normalization_idempotent():
    rng = random.Random(13)
    for field in (QQ, PrimeField(5)):
        for _ in range(20):
            rows, cols = rng.randrange(0, 4), rng.randrange(0, 4)
            pres = PolyMatrix(field, rows, cols, [
                [Poly(field, [field.random(rng) for _ in range(rng.randrange(0, 4))])
                 for _ in range(cols)] for _ in range(rows)])
            m = FPModule(pres)
            once = m.normalized()
            twice = once.normalized()
            assert once.presentation == twice.presentation
            assert m.normal_form == once.normal_form


def test_well_definedness_enforced():
    # multiplication by 1 does not descend R/(x) -> R/(x^2)
    rx = cyclic([0, 1])
    rx2 = cyclic([0, 0, 1])
    with pytest.raises(IllDefinedMap):
        check_well_defined(PolyMatrix.identity(QQ, 1), rx, rx2)
    # multiplication by x does
    check_well_defined(PolyMatrix(QQ, 1, 1, [[x_poly()]]), rx, rx2)


def test_map_zero_mod_relations():
    rx = cyclic([0, 1])
    xmap = PolyMatrix(QQ, 1, 1, [[x_poly()]])
    assert map_is_zero(xmap, rx)
    assert maps_equal(xmap, PolyMatrix.zeros(QQ, 1, 1), rx)


def test_kernel_of_x_on_r_mod_x2():
    # kernel of x: R/(x^2) -> R/(x^2) is x*R/(x^2), a copy of R/(x)
    m = cyclic([0, 0, 1])
    k, incl = fp_kernel(PolyMatrix(QQ, 1, 1, [[x_poly()]]), m, m)
    assert k.k_dimension() == 1
    assert list(k.torsion_factors) == [x_poly()]


def test_image_and_subquotient():
    # image of x: R/(x^2) -> R/(x^2) is R/(x); H = ker/im is zero here
    m = cyclic([0, 0, 1])
    xmap = PolyMatrix(QQ, 1, 1, [[x_poly()]])
    img, gens = fp_image(xmap, m, m)
    assert img.k_dimension() == 1
    k, incl = fp_kernel(xmap, m, m)
    h = fp_subquotient(incl, k, gens, m)
    assert h.is_zero_module


def test_subquotient_nontrivial():
    # ker(0)/im(0) on R/(x^2) is R/(x^2) itself
    m = cyclic([0, 0, 1])
    zero = PolyMatrix.zeros(QQ, 1, 1)
    k, incl = fp_kernel(zero, m, m)
    img, gens = fp_image(zero, m, m)
    h = fp_subquotient(incl, k, gens, m)
    assert h.k_dimension() == 2


def test_tensor_of_cyclics():
    # R/(x^2) tensor R/(x^3) = R/(x^2)
    a, b = cyclic([0, 0, 1]), cyclic([0, 0, 0, 1])
    t = fp_tensor(a, b)
    assert t.k_dimension() == 2
    assert [p.degree for p in t.torsion_factors] == [2]


def test_tensor_with_free():
    a = FPModule.free(QQ, 2)
    b = cyclic([0, 1])
    t = fp_tensor(a, b)
    assert t.k_dimension() == 2
    assert len(t.torsion_factors) == 2


def test_same_class():
    # two presentations of R/(x): 1x1 (x) and a redundant 2x2 one
    x = x_poly()
    one = Poly.one(QQ)
    a = cyclic([0, 1])
    b = FPModule(PolyMatrix(QQ, 2, 2, [[x, Poly.zero(QQ)], [Poly.zero(QQ), one]]))
    assert a.same_class(b)
    assert not a.same_class(cyclic([0, 0, 1]))
