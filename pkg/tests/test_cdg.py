import random

import pytest

from cdgmf.fields import QQ, PrimeField
from cdgmf.poly import Poly
from cdgmf.matrices import PolyMatrix
from cdgmf.fpmod import FPModule, IllDefinedMap
from cdgmf.cdg import (
    CDGRing, MatrixFactorization, FPCDGModule, ClosedMorphism,
    CurvatureMismatch, validate, is_valid, shift, shift_morphism, direct_sum,
    cone, cone_splittings, g_plus, g_minus, g_plus_cover, g_plus_sequence,
    g_minus_sequence, identity_morphism, zero_morphism, compose, zero_mf,
    as_fpcdg, LEFT, RIGHT,
)


def ring(w_coeffs, field=QQ):
    return CDGRing(field, Poly(field, w_coeffs))


def mf1(r, side, d0c, d1c):
    f = r.field
    return MatrixFactorization(
        r, side,
        PolyMatrix(f, 1, 1, [[Poly(f, d0c)]]),
        PolyMatrix(f, 1, 1, [[Poly(f, d1c)]]))


W3 = ring([0, 0, 0, 1])  # w = x^3
W2 = ring([0, 0, 1])     # w = x^2


def test_validate_left_ok():
    m = mf1(W3, LEFT, [0, 1], [0, 0, 1])  # d0 = x, d1 = x^2
    validate(m)


def test_validate_left_curvature_mismatch():
    with pytest.raises(CurvatureMismatch):
        mf1(W3, LEFT, [0, 1], [0, 1])  # x * x != x^3


def test_validate_right_sign():
    # right modules need d1 d0 = -w
    m = mf1(W3, RIGHT, [0, 1], [0, 0, -1])  # d1 = -x^2
    validate(m)
    with pytest.raises(CurvatureMismatch):
        mf1(W3, RIGHT, [0, 1], [0, 0, 1])


def test_validate_fpcdg_well_defined():
    # comp0 = comp1 = R/(x), zero differentials, w = x^2: valid right module
    f = QQ
    rx = FPModule.cyclic(f, Poly(f, [0, 1]))
    z = PolyMatrix.zeros(f, 1, 1)
    n = FPCDGModule(W2, RIGHT, rx, rx, z, z)
    validate(n)
    # over w = x the same data is invalid: x != 0 on R/(x)? in fact x acts as
    # zero on R/(x), so it IS valid; use R itself to force a failure
    w1 = ring([0, 1])
    rfree = FPModule.free(f, 1)
    with pytest.raises(CurvatureMismatch):
        FPCDGModule(w1, RIGHT, rfree, rfree, z, z)


def test_shift_zero_and_two_are_identity():
    m = mf1(W3, LEFT, [0, 1], [0, 0, 1])
    assert shift(m, 0) == m
    assert shift(m, 2) == m
    assert shift(shift(m, 1), 1) == m


def test_shift_one_swaps_and_negates():
    m = mf1(W3, LEFT, [0, 1], [0, 0, 1])
    s = shift(m, 1)
    assert s.d0 == -m.d1 and s.d1 == -m.d0
    validate(s)
    # additivity on a morphism
    f = identity_morphism(m)
    sf = shift_morphism(f, 1)
    assert sf.source == s and sf.f0 == f.f1


def test_direct_sum_ranks_and_validate():
    a = mf1(W3, LEFT, [0, 1], [0, 0, 1])
    b = g_plus(W3, LEFT, 2, 2)
    s = direct_sum(a, b)
    assert (s.rank0, s.rank1) == (5, 5)
    validate(s)
    z = zero_mf(W3, LEFT)
    assert direct_sum(a, z).d0 == a.d0


def test_cone_of_identity_shape():
    m = g_plus(W3, LEFT, 1, 1)
    c, incl, proj = cone(identity_morphism(m))
    assert (c.rank0, c.rank1) == (2 * m.rank0, 2 * m.rank1)
    validate(c)
    incl.validate()
    proj.validate()
    comp = compose(proj, incl)
    assert comp.is_zero_map


def test_cone_of_map_from_zero_is_target():
    m = mf1(W3, LEFT, [0, 1], [0, 0, 1])
    z = zero_mf(W3, LEFT)
    c, incl, proj = cone(zero_morphism(z, m))
    assert c.d0 == m.d0 and c.d1 == m.d1


def test_cone_rank_bookkeeping():
    a = mf1(W3, LEFT, [0, 1], [0, 0, 1])
    b = g_plus(W3, LEFT, 1, 1)  # ranks (2,2)
    f = zero_morphism(a, b)
    c, _, _ = cone(f)
    assert (c.rank0, c.rank1) == (3, 3)
    validate(c)


def test_cone_sequence_graded_split():
    m = g_plus(W3, LEFT, 1, 0)
    f = identity_morphism(m)
    c, incl, proj = cone(f)
    (r0, r1), (s0, s1) = cone_splittings(f)
    eye0 = PolyMatrix.identity(QQ, m.rank0)
    eye1 = PolyMatrix.identity(QQ, m.rank1)
    assert r0 * incl.f0 == eye0 and r1 * incl.f1 == eye1
    assert proj.f0 * s0 == PolyMatrix.identity(QQ, m.rank1)
    assert proj.f1 * s1 == PolyMatrix.identity(QQ, m.rank0)


def test_g_plus_rank_doubling_and_example():
    p = g_plus(W3, LEFT, 2, 3)
    assert (p.rank0, p.rank1) == (5, 5)
    validate(p)
    # g_plus of R in parity 0: d0 = [1] into the adjoined copy, d1 = [w]
    p1 = g_plus(W3, LEFT, 1, 0)
    assert p1.d0 == PolyMatrix(QQ, 1, 1, [[Poly.one(QQ)]])
    assert p1.d1 == PolyMatrix(QQ, 1, 1, [[W3.w]])
    assert g_plus(W3, LEFT, 0, 0).is_zero_object


def test_g_plus_right_validates():
    for r0, r1 in [(1, 0), (0, 1), (2, 1)]:
        validate(g_plus(W3, RIGHT, r0, r1))
        validate(g_minus(W3, RIGHT, r0, r1))
        validate(g_minus(W3, LEFT, r0, r1))


def test_g_plus_sequence_blocks():
    r0, r1 = 2, 1
    p = g_plus(W3, LEFT, r0, r1)
    (i0, i1), (p0, p1) = g_plus_sequence(W3, LEFT, r0, r1)
    # inclusion then projection is zero; both are graded-split
    assert (p0 * i0).is_zero and (p1 * i1).is_zero
    assert p.rank0 == i0.rows == r0 + r1


def test_g_minus_sequence_and_shift_comparison():
    # g_minus(R) is g_plus(R) shifted, via the explicit closed iso (1, -1)
    gm = g_minus(W3, LEFT, 1, 0)
    gp = shift(g_plus(W3, LEFT, 1, 0), 1)
    one = PolyMatrix.identity(QQ, 1)
    iso = ClosedMorphism(gm, gp, one, -one)
    iso.validate()
    (i0, i1), (p0, p1) = g_minus_sequence(W3, LEFT, 1, 0)
    assert (p0 * i0).is_zero and (p1 * i1).is_zero


def test_g_plus_cover_surjective_and_closed():
    f = QQ
    rx = FPModule.cyclic(f, Poly(f, [0, 1]))
    z = PolyMatrix.zeros(f, 1, 1)
    n = FPCDGModule(W2, RIGHT, rx, rx, z, z)
    p, epi = g_plus_cover(n)
    assert (p.rank0, p.rank1) == (2, 2)
    epi.validate()
    # identity block makes both components surjective on generators
    assert epi.f0.entries[0][0].is_one
    assert epi.f1.entries[0][0].is_one


def test_compose_identity_and_associativity():
    rng = random.Random(5)
    m = g_plus(W3, LEFT, 1, 1)
    f = identity_morphism(m)
    assert compose(f, f) == f
    # associativity on random closed scalar multiples of the identity
    from cdgmf.cdg import morphism_scale
    a = morphism_scale(f, 2)
    b = morphism_scale(f, 3)
    c = morphism_scale(f, -1)
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_w_zero_degenerates_to_complexes():
    # with w = 0 validate enforces d^2 = 0
    w0 = ring([])
    f = QQ
    d0 = PolyMatrix(f, 1, 1, [[Poly(f, [0, 1])]])
    d1 = PolyMatrix.zeros(f, 1, 1)
    validate(MatrixFactorization(w0, LEFT, d0, d1))
    with pytest.raises(CurvatureMismatch):
        MatrixFactorization(w0, LEFT, d0, d0)


def test_validate_preserved_by_constructors_random():
    rng = random.Random(42)
    for field in (QQ, PrimeField(5)):
        r = ring([0, 0, 0, 1], field)
        pool = [g_plus(r, LEFT, 1, 1), g_minus(r, LEFT, 2, 0),
                mf1(r, LEFT, [0, 1], [0, 0, 1])]
        for m in pool:
            validate(shift(m, 1))
            validate(direct_sum(m, m))
            c, _, _ = cone(identity_morphism(m))
            validate(c)
