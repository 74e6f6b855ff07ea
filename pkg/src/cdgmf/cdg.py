"""Curved modules of matrix-factorization shape over k[x].

The ambient curved ring is k[x] with an invertible even generator adjoined,
zero differential, and curvature w times that generator.  Because the even
part is strictly 2-periodic, every graded object is determined by its two
parity components and every construction below is a matrix identity.

Sign conventions (fixed here once, used everywhere):
  * left objects satisfy d1*d0 = w, d0*d1 = w; right objects get -w,
  * shift multiplies the differential by (-1)^n and swaps parities for odd n,
  * the cone of f : L -> M is M + L[1] with differential [[d_M, f], [0, -d_L]].
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import Poly
from .matrices import PolyMatrix, ShapeMismatch, block_matrix, block_diag
from .fpmod import FPModule, IllDefinedMap, check_well_defined, maps_equal

# The differential of a shifted module is (-1)^n times the original; the
# stated sign rules force this choice up to a global convention, recorded
# here so a consumer wanting the opposite convention edits one constant.
SHIFT_DIFFERENTIAL_SIGN = -1

LEFT = "left"
RIGHT = "right"


class CurvatureMismatch(ValueError):
    pass


class InternalAssertionFailure(AssertionError):
    pass


@dataclass(frozen=True)
class CDGRing:
    """Ground field plus the potential w; w = 0 degenerates everything to
    2-periodic complexes."""

    field: object
    w: Poly

    def __post_init__(self):
        if self.w.field != self.field:
            raise ValueError("potential not over the ground field")

    def curvature_sign(self, side: str) -> int:
        if side == LEFT:
            return 1
        if side == RIGHT:
            return -1
        raise ValueError(f"bad side {side!r}")

    def __repr__(self):
        return f"CDGRing({self.field!r}, w={self.w!r})"


class MatrixFactorization:
    """A curved module with free parity components: d0 : R^rank0 -> R^rank1,
    d1 : R^rank1 -> R^rank0, with both composites equal to (side sign) * w."""

    __slots__ = ("ring", "side", "d0", "d1")

    def __init__(self, ring: CDGRing, side: str, d0: PolyMatrix, d1: PolyMatrix,
                 *, check: bool = True):
        self.ring = ring
        self.side = side
        self.d0 = d0
        self.d1 = d1
        if d0.cols != d1.rows or d0.rows != d1.cols:
            raise ShapeMismatch(f"d0 {d0.shape} incompatible with d1 {d1.shape}")
        if check:
            validate(self)

    @property
    def rank0(self) -> int:
        return self.d0.cols

    @property
    def rank1(self) -> int:
        return self.d1.cols

    @property
    def field(self):
        return self.ring.field

    def component(self, parity: int) -> FPModule:
        return FPModule.free(self.field, self.rank0 if parity % 2 == 0 else self.rank1)

    def differential(self, parity: int) -> PolyMatrix:
        return self.d0 if parity % 2 == 0 else self.d1

    @property
    def is_zero_object(self) -> bool:
        return self.rank0 == 0 and self.rank1 == 0

    def __eq__(self, other):
        return (
            isinstance(other, MatrixFactorization)
            and self.ring == other.ring and self.side == other.side
            and self.d0 == other.d0 and self.d1 == other.d1
        )

    def __hash__(self):
        return hash((self.ring, self.side, self.d0, self.d1))

    def __repr__(self):
        return (f"MF({self.side}, w={self.ring.w!r}, "
                f"ranks=({self.rank0},{self.rank1}))")


class FPCDGModule:
    """A curved module whose parity components are finitely presented; the
    structure maps are matrices on generators squaring to (side sign)*w."""

    __slots__ = ("ring", "side", "comp0", "comp1", "d0", "d1")

    def __init__(self, ring: CDGRing, side: str, comp0: FPModule, comp1: FPModule,
                 d0: PolyMatrix, d1: PolyMatrix, *, check: bool = True):
        self.ring = ring
        self.side = side
        self.comp0 = comp0
        self.comp1 = comp1
        self.d0 = d0
        self.d1 = d1
        if d0.shape != (comp1.generators, comp0.generators):
            raise ShapeMismatch("d0 shape does not match generator counts")
        if d1.shape != (comp0.generators, comp1.generators):
            raise ShapeMismatch("d1 shape does not match generator counts")
        if check:
            validate(self)

    @classmethod
    def from_mf(cls, m: MatrixFactorization) -> "FPCDGModule":
        return cls(m.ring, m.side,
                   FPModule.free(m.field, m.rank0), FPModule.free(m.field, m.rank1),
                   m.d0, m.d1, check=False)

    @property
    def field(self):
        return self.ring.field

    def component(self, parity: int) -> FPModule:
        return self.comp0 if parity % 2 == 0 else self.comp1

    def differential(self, parity: int) -> PolyMatrix:
        return self.d0 if parity % 2 == 0 else self.d1

    @property
    def is_zero_object(self) -> bool:
        return self.comp0.is_zero_module and self.comp1.is_zero_module

    def __eq__(self, other):
        return (
            isinstance(other, FPCDGModule)
            and self.ring == other.ring and self.side == other.side
            and self.comp0 == other.comp0 and self.comp1 == other.comp1
            and self.d0 == other.d0 and self.d1 == other.d1
        )

    def __hash__(self):
        return hash((self.ring, self.side, self.comp0, self.comp1, self.d0, self.d1))

    def __repr__(self):
        return (f"FPCDGModule({self.side}, w={self.ring.w!r}, "
                f"comp0={self.comp0!r}, comp1={self.comp1!r})")


def as_fpcdg(obj) -> FPCDGModule:
    if isinstance(obj, FPCDGModule):
        return obj
    return FPCDGModule.from_mf(obj)


def is_graded_free(obj) -> bool:
    if isinstance(obj, MatrixFactorization):
        return True
    return obj.comp0.is_free_presentation and obj.comp1.is_free_presentation


def validate(obj) -> None:
    """Check the curvature identity (and well-definedness for f.p. data).

    Raises CurvatureMismatch naming the offending composite, or IllDefinedMap.
    """
    ring = obj.ring
    sign = ring.curvature_sign(obj.side)
    w = ring.w if sign == 1 else -ring.w
    if isinstance(obj, MatrixFactorization):
        want0 = PolyMatrix.scalar(ring.field, obj.rank0, w)
        want1 = PolyMatrix.scalar(ring.field, obj.rank1, w)
        if obj.d1 * obj.d0 != want0:
            raise CurvatureMismatch(
                f"d1*d0 = {obj.d1 * obj.d0!r}, expected {sign:+d}w on component 0")
        if obj.d0 * obj.d1 != want1:
            raise CurvatureMismatch(
                f"d0*d1 = {obj.d0 * obj.d1!r}, expected {sign:+d}w on component 1")
        return
    check_well_defined(obj.d0, obj.comp0, obj.comp1)
    check_well_defined(obj.d1, obj.comp1, obj.comp0)
    want0 = PolyMatrix.scalar(ring.field, obj.comp0.generators, w)
    want1 = PolyMatrix.scalar(ring.field, obj.comp1.generators, w)
    if not maps_equal(obj.d1 * obj.d0, want0, obj.comp0):
        raise CurvatureMismatch("d1*d0 differs from the curvature on component 0")
    if not maps_equal(obj.d0 * obj.d1, want1, obj.comp1):
        raise CurvatureMismatch("d0*d1 differs from the curvature on component 1")


def is_valid(obj) -> bool:
    try:
        validate(obj)
        return True
    except (CurvatureMismatch, IllDefinedMap):
        return False


def zero_mf(ring: CDGRing, side: str) -> MatrixFactorization:
    z = PolyMatrix.zeros(ring.field, 0, 0)
    return MatrixFactorization(ring, side, z, z, check=False)


def shift(obj, n: int):
    """Grading shift: parities swap for odd n, differential scales by (-1)^n.

    shift(shift(M, a), b) equals shift(M, a + b) as literal data.
    """
    if n % 2 == 0:
        return obj
    s = SHIFT_DIFFERENTIAL_SIGN
    if isinstance(obj, MatrixFactorization):
        return MatrixFactorization(
            obj.ring, obj.side,
            obj.d1.scale(Poly.const(obj.field, s)),
            obj.d0.scale(Poly.const(obj.field, s)),
            check=False)
    return FPCDGModule(
        obj.ring, obj.side, obj.comp1, obj.comp0,
        obj.d1.scale(Poly.const(obj.field, s)),
        obj.d0.scale(Poly.const(obj.field, s)),
        check=False)


class ClosedMorphism:
    """Degree-0 map commuting with the differentials, stored on generators."""

    __slots__ = ("source", "target", "f0", "f1")

    def __init__(self, source, target, f0: PolyMatrix, f1: PolyMatrix,
                 *, check: bool = True):
        if source.ring != target.ring or source.side != target.side:
            raise ShapeMismatch("morphism endpoints live over different rings/sides")
        self.source = source
        self.target = target
        self.f0 = f0
        self.f1 = f1
        src, tgt = as_fpcdg(source), as_fpcdg(target)
        if f0.shape != (tgt.comp0.generators, src.comp0.generators):
            raise ShapeMismatch("f0 shape mismatch")
        if f1.shape != (tgt.comp1.generators, src.comp1.generators):
            raise ShapeMismatch("f1 shape mismatch")
        if check:
            self.validate()

    def validate(self):
        src, tgt = as_fpcdg(self.source), as_fpcdg(self.target)
        check_well_defined(self.f0, src.comp0, tgt.comp0)
        check_well_defined(self.f1, src.comp1, tgt.comp1)
        if not maps_equal(self.f1 * src.d0, tgt.d0 * self.f0, tgt.comp1):
            raise CurvatureMismatch("morphism fails to commute with d on component 0")
        if not maps_equal(self.f0 * src.d1, tgt.d1 * self.f1, tgt.comp0):
            raise CurvatureMismatch("morphism fails to commute with d on component 1")

    def component(self, parity: int) -> PolyMatrix:
        return self.f0 if parity % 2 == 0 else self.f1

    @property
    def is_zero_map(self) -> bool:
        return self.f0.is_zero and self.f1.is_zero

    def __eq__(self, other):
        return (
            isinstance(other, ClosedMorphism)
            and self.source == other.source and self.target == other.target
            and self.f0 == other.f0 and self.f1 == other.f1
        )

    def __hash__(self):
        return hash((self.f0, self.f1))

    def __repr__(self):
        return f"ClosedMorphism({self.source!r} -> {self.target!r})"


def identity_morphism(obj) -> ClosedMorphism:
    m = as_fpcdg(obj)
    f = obj.ring.field
    return ClosedMorphism(
        obj, obj,
        PolyMatrix.identity(f, m.comp0.generators),
        PolyMatrix.identity(f, m.comp1.generators),
        check=False)


def zero_morphism(source, target) -> ClosedMorphism:
    s, t = as_fpcdg(source), as_fpcdg(target)
    f = source.ring.field
    return ClosedMorphism(
        source, target,
        PolyMatrix.zeros(f, t.comp0.generators, s.comp0.generators),
        PolyMatrix.zeros(f, t.comp1.generators, s.comp1.generators),
        check=False)


def compose(g: ClosedMorphism, f: ClosedMorphism) -> ClosedMorphism:
    if f.target != g.source:
        raise ShapeMismatch("morphisms not composable")
    return ClosedMorphism(f.source, g.target, g.f0 * f.f0, g.f1 * f.f1, check=False)


def shift_morphism(f: ClosedMorphism, n: int) -> ClosedMorphism:
    if n % 2 == 0:
        return f
    return ClosedMorphism(shift(f.source, n), shift(f.target, n), f.f1, f.f0,
                          check=False)


def morphism_add(f: ClosedMorphism, g: ClosedMorphism) -> ClosedMorphism:
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatch("morphism sum endpoints differ")
    return ClosedMorphism(f.source, f.target, f.f0 + g.f0, f.f1 + g.f1, check=False)


def morphism_scale(f: ClosedMorphism, c) -> ClosedMorphism:
    p = Poly.const(f.source.ring.field, c) if not isinstance(c, Poly) else c
    return ClosedMorphism(f.source, f.target, f.f0.scale(p), f.f1.scale(p),
                          check=False)


def direct_sum(a, b):
    """Block-diagonal sum; both arguments of the same kind, ring, and side."""
    if a.ring != b.ring or a.side != b.side:
        raise ShapeMismatch("direct sum endpoints over different rings/sides")
    fld = a.ring.field
    if isinstance(a, MatrixFactorization) and isinstance(b, MatrixFactorization):
        return MatrixFactorization(
            a.ring, a.side,
            block_diag(fld, [a.d0, b.d0]),
            block_diag(fld, [a.d1, b.d1]),
            check=False)
    fa, fb = as_fpcdg(a), as_fpcdg(b)
    from .fpmod import fp_direct_sum
    return FPCDGModule(
        a.ring, a.side,
        fp_direct_sum(fa.comp0, fb.comp0), fp_direct_sum(fa.comp1, fb.comp1),
        block_diag(fld, [fa.d0, fb.d0]), block_diag(fld, [fa.d1, fb.d1]),
        check=False)


def cone(f: ClosedMorphism):
    """Mapping cone of a closed morphism between graded-free objects.

    Returns (cone, inclusion of the target, projection onto source[1]); the
    two maps compose to zero and the sequence is graded-split by construction.
    """
    if not (isinstance(f.source, MatrixFactorization)
            and isinstance(f.target, MatrixFactorization)):
        raise ShapeMismatch("cone requires graded-free endpoints")
    l, m = f.source, f.target
    fld = l.ring.field
    minus = Poly.const(fld, -1)
    d0 = block_matrix(fld, [
        [m.d0, f.f1],
        [PolyMatrix.zeros(fld, l.rank0, m.rank0), l.d1.scale(minus)],
    ])
    d1 = block_matrix(fld, [
        [m.d1, f.f0],
        [PolyMatrix.zeros(fld, l.rank1, m.rank1), l.d0.scale(minus)],
    ])
    c = MatrixFactorization(l.ring, l.side, d0, d1, check=False)
    incl = ClosedMorphism(
        m, c,
        PolyMatrix.identity(fld, m.rank0).vstack(PolyMatrix.zeros(fld, l.rank1, m.rank0)),
        PolyMatrix.identity(fld, m.rank1).vstack(PolyMatrix.zeros(fld, l.rank0, m.rank1)),
        check=False)
    lsh = shift(l, 1)
    proj = ClosedMorphism(
        c, lsh,
        PolyMatrix.zeros(fld, l.rank1, m.rank0).hstack(PolyMatrix.identity(fld, l.rank1)),
        PolyMatrix.zeros(fld, l.rank0, m.rank1).hstack(PolyMatrix.identity(fld, l.rank0)),
        check=False)
    return c, incl, proj


def cone_splittings(f: ClosedMorphism):
    """Graded (not closed) splittings of the cone sequence: a retraction of
    the inclusion and a section of the projection, as component matrices."""
    l, m = f.source, f.target
    fld = l.ring.field
    retr0 = PolyMatrix.identity(fld, m.rank0).hstack(PolyMatrix.zeros(fld, m.rank0, l.rank1))
    retr1 = PolyMatrix.identity(fld, m.rank1).hstack(PolyMatrix.zeros(fld, m.rank1, l.rank0))
    sect0 = PolyMatrix.zeros(fld, m.rank0, l.rank1).vstack(PolyMatrix.identity(fld, l.rank1))
    sect1 = PolyMatrix.zeros(fld, m.rank1, l.rank0).vstack(PolyMatrix.identity(fld, l.rank0))
    return (retr0, retr1), (sect0, sect1)


def g_plus(ring: CDGRing, side: str, r0: int, r1: int) -> MatrixFactorization:
    """Free curved module on a free graded module with parity ranks (r0, r1):
    extension of scalars along the inclusion of the even part.

    The underlying graded module doubles: components (r0 + r1, r1 + r0),
    ordered (original generators, adjoined odd copies).
    """
    fld = ring.field
    w = ring.w
    one = Poly.one(fld)
    sgn = ring.curvature_sign(side)
    wi_r1 = PolyMatrix.scalar(fld, r1, w if sgn == 1 else -w)
    wi_r0 = PolyMatrix.scalar(fld, r0, w)
    eye_r0 = PolyMatrix.scalar(fld, r0, one if sgn == 1 else -one)
    eye_r1 = PolyMatrix.identity(fld, r1)
    d0 = block_matrix(fld, [
        [PolyMatrix.zeros(fld, r1, r0), wi_r1],
        [eye_r0, PolyMatrix.zeros(fld, r0, r1)],
    ])
    d1 = block_matrix(fld, [
        [PolyMatrix.zeros(fld, r0, r1), wi_r0],
        [eye_r1, PolyMatrix.zeros(fld, r1, r0)],
    ])
    return MatrixFactorization(ring, side, d0, d1, check=False)


def g_plus_cover(n) -> tuple:
    """The natural closed epimorphism g_plus(underlying of n) -> n, one free
    generator per stored generator of each component.

    Works for both sides; the epi is the adjunction counit, surjective on
    both components by its identity block.
    """
    m = as_fpcdg(n)
    fld = n.ring.field
    g0, g1 = m.comp0.generators, m.comp1.generators
    p = g_plus(n.ring, n.side, g0, g1)
    if n.side == LEFT:
        eps0 = PolyMatrix.identity(fld, g0).hstack(m.d1)
        eps1 = PolyMatrix.identity(fld, g1).hstack(m.d0)
    else:
        eps0 = PolyMatrix.identity(fld, g0).hstack(m.d1)
        eps1 = PolyMatrix.identity(fld, g1).hstack(-m.d0)
    epi = ClosedMorphism(p, n, eps0, eps1)
    return p, epi


def g_minus(ring: CDGRing, side: str, r0: int, r1: int) -> MatrixFactorization:
    """Cofree curved module on a free graded module with parity ranks
    (r0, r1): coinduction along the inclusion of the even part.

    Components are ordered (value at 1, value at the adjoined odd generator),
    so the underlying module is F[1] + F blockwise.
    """
    fld = ring.field
    w = ring.w
    one = Poly.one(fld)
    if side == LEFT:
        d0 = block_matrix(fld, [
            [PolyMatrix.zeros(fld, r1, r0), PolyMatrix.identity(fld, r1)],
            [PolyMatrix.scalar(fld, r0, w), PolyMatrix.zeros(fld, r0, r1)],
        ])
        d1 = block_matrix(fld, [
            [PolyMatrix.zeros(fld, r0, r1), PolyMatrix.identity(fld, r0)],
            [PolyMatrix.scalar(fld, r1, w), PolyMatrix.zeros(fld, r1, r0)],
        ])
    else:
        minus_one = Poly.const(fld, -1)
        d0 = block_matrix(fld, [
            [PolyMatrix.zeros(fld, r1, r0), PolyMatrix.scalar(fld, r1, minus_one)],
            [PolyMatrix.scalar(fld, r0, -w), PolyMatrix.zeros(fld, r0, r1)],
        ])
        d1 = block_matrix(fld, [
            [PolyMatrix.zeros(fld, r0, r1), PolyMatrix.identity(fld, r0)],
            [PolyMatrix.scalar(fld, r1, w), PolyMatrix.zeros(fld, r1, r0)],
        ])
    return MatrixFactorization(ring, side, d0, d1, check=False)


def g_plus_sequence(ring: CDGRing, side: str, r0: int, r1: int):
    """Graded maps exhibiting 0 -> F -> g_plus(F)# -> F[-1] -> 0 blockwise."""
    fld = ring.field
    incl0 = PolyMatrix.identity(fld, r0).vstack(PolyMatrix.zeros(fld, r1, r0))
    incl1 = PolyMatrix.identity(fld, r1).vstack(PolyMatrix.zeros(fld, r0, r1))
    proj0 = PolyMatrix.zeros(fld, r1, r0).hstack(PolyMatrix.identity(fld, r1))
    proj1 = PolyMatrix.zeros(fld, r0, r1).hstack(PolyMatrix.identity(fld, r0))
    return (incl0, incl1), (proj0, proj1)


def g_minus_sequence(ring: CDGRing, side: str, r0: int, r1: int):
    """Graded maps exhibiting 0 -> F[1] -> g_minus(F)# -> F -> 0 blockwise."""
    fld = ring.field
    incl0 = PolyMatrix.zeros(fld, r0, r1).vstack(PolyMatrix.identity(fld, r1))
    incl1 = PolyMatrix.zeros(fld, r1, r0).vstack(PolyMatrix.identity(fld, r0))
    proj0 = PolyMatrix.identity(fld, r0).hstack(PolyMatrix.zeros(fld, r0, r1))
    proj1 = PolyMatrix.identity(fld, r1).hstack(PolyMatrix.zeros(fld, r1, r0))
    return (incl0, incl1), (proj0, proj1)
