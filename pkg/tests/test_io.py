import pytest

from cdgmf.fields import QQ, PrimeField
from cdgmf.poly import Poly
from cdgmf.matrices import PolyMatrix
from cdgmf.fpmod import FPModule
from cdgmf.cdg import (
    CDGRing, MatrixFactorization, FPCDGModule, ClosedMorphism,
    identity_morphism, g_plus, LEFT, RIGHT,
)
from cdgmf.homotopy import hom_complex, cohomology, homotopy_witness
from cdgmf.verify import InstanceGenerator
from cdgmf.io import serialize, parse, to_json_dict, from_json_dict, \
    canonical_text, instance_digest, MalformedInput


def ring(w_coeffs, field=QQ):
    return CDGRing(field, Poly(field, w_coeffs))


def sample_objects():
    gen = InstanceGenerator(31)
    out = []
    for field in (QQ, PrimeField(5)):
        r = ring([0, 0, 0, 1], field)
        m = gen.mf(r, LEFT, max_blocks=2)
        n = gen.fpcdg(r, side=RIGHT, max_pieces=2)
        out.extend([m, n, identity_morphism(m), g_plus(r, RIGHT, 1, 2)])
    return out


def test_roundtrip_bit_exact():
    for obj in sample_objects():
        text = serialize(obj)
        back = parse(text)
        assert back == obj
        assert serialize(back) == text


def test_canonical_is_deterministic():
    gen1 = InstanceGenerator(3)
    gen2 = InstanceGenerator(3)
    r = ring([0, 0, 1])
    a = gen1.mf(r, LEFT)
    b = gen2.mf(r, LEFT)
    assert serialize(a) == serialize(b)
    assert instance_digest(a) == instance_digest(b)


def test_rational_element_strings():
    from fractions import Fraction
    p = Poly(QQ, [Fraction(3, 4), -2])
    m = PolyMatrix(QQ, 1, 1, [[p]])
    r = CDGRing(QQ, Poly(QQ, [0, 0, 1]))
    w0 = Poly(QQ, [0, 1])
    mf = MatrixFactorization(r, LEFT,
                             PolyMatrix(QQ, 1, 1, [[w0]]),
                             PolyMatrix(QQ, 1, 1, [[w0]]))
    d = to_json_dict(mf)
    assert d["w"] == ["0", "0", "1"]
    assert d["d0"]["entries"][0][0] == ["0", "1"]


def test_unknown_version_rejected():
    obj = sample_objects()[0]
    d = to_json_dict(obj)
    d["version"] = 99
    with pytest.raises(MalformedInput):
        from_json_dict(d)


def test_unknown_kind_rejected():
    with pytest.raises(MalformedInput):
        from_json_dict({"version": 1, "kind": "gadget"})
    with pytest.raises(MalformedInput):
        parse("not json at all {")


def test_bad_field_rejected():
    obj = sample_objects()[0]
    d = to_json_dict(obj)
    d["field"] = "Fp:6"
    with pytest.raises(MalformedInput):
        from_json_dict(d)


def test_shape_mismatch_rejected():
    obj = sample_objects()[0]
    d = to_json_dict(obj)
    d["d0"]["rows"] = d["d0"]["rows"] + 1
    with pytest.raises(MalformedInput):
        from_json_dict(d)


def test_periodic_complex_and_cohomology_roundtrip():
    r = ring([0, 0, 1])
    x = Poly(QQ, [0, 1])
    m = MatrixFactorization(r, LEFT, PolyMatrix(QQ, 1, 1, [[x]]),
                            PolyMatrix(QQ, 1, 1, [[x]]))
    p = hom_complex(m, m)
    assert parse(serialize(p)) == p or True  # PeriodicComplex has no __eq__
    back = parse(serialize(p))
    assert back.e0 == p.e0 and back.e1 == p.e1
    assert back.c0 == p.c0 and back.c1 == p.c1
    h = cohomology(p)
    d = to_json_dict(h)
    assert d["h0_dim"] == 1 and d["finite"] is True


def test_witness_serialization():
    r = ring([0, 0, 1])
    x = Poly(QQ, [0, 1])
    m = MatrixFactorization(r, LEFT, PolyMatrix(QQ, 1, 1, [[x]]),
                            PolyMatrix(QQ, 1, 1, [[x]]))
    from cdgmf.cdg import morphism_scale, zero_morphism
    w = homotopy_witness(morphism_scale(identity_morphism(m), x),
                         zero_morphism(m, m))
    d = to_json_dict(w)
    assert d["kind"] == "witness"
    assert set(d) == {"version", "kind", "h0", "h1"}


def test_resolution_and_xi_result_serialize():
    from cdgmf.duality import resolve, compact_dual
    from cdgmf.verify import one_sided_cyclic
    r = ring([0, 0, 1])
    n = one_sided_cyclic(r, 1)
    res = resolve(n)
    d = to_json_dict(res)
    assert d["kind"] == "resolution"
    out = compact_dual(n)
    d2 = to_json_dict(out)
    assert d2["kind"] == "xi-result"
    assert d2["xi"]["kind"] == "mf"
    assert d2["provenance"]["resolution"]["target"] == to_json_dict(n)
