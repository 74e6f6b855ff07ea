"""Finite graded-projective resolutions and the compact duality functor.

A finitely presented right curved module N is covered by the free curved
module on its generators; over k[x] the kernel of the cover again has free
components (submodules of free modules over a PID are free) and is closed
under the structure maps, so every resolution stops after one step.  The
duality functor dualizes the two-step resolution into left modules and
totalizes, sending N to a matrix factorization of the same potential.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import Poly
from .matrices import PolyMatrix, ShapeMismatch, block_matrix
from .smith import LinearSolver, kernel_basis
from .fpmod import FPModule, maps_equal
from .cdg import (
    MatrixFactorization, FPCDGModule, ClosedMorphism, CDGRing,
    as_fpcdg, identity_morphism, zero_morphism, compose, shift,
    shift_morphism, g_plus_cover, zero_mf, validate,
    InternalAssertionFailure, LEFT, RIGHT,
)
from .homotopy import (
    homotopy_witness, is_homotopy_equivalence, reduce_mf,
)


@dataclass(frozen=True)
class Resolution:
    """0 -> p1 -> p0 -> target -> 0, exact on both parity components."""
    target: FPCDGModule
    p0: MatrixFactorization
    p1: MatrixFactorization
    epi: ClosedMorphism
    incl: ClosedMorphism


@dataclass(frozen=True)
class CompactDualResult:
    xi: MatrixFactorization
    resolution: Resolution
    dual_p0: MatrixFactorization
    dual_p1: MatrixFactorization
    dual_incl: ClosedMorphism


def free_cover(n) -> tuple:
    """Closed epi from the free curved module on the stored generators."""
    if n.side != RIGHT:
        raise ShapeMismatch("free_cover expects a right module")
    return g_plus_cover(n)


def _component_kernel(eps: PolyMatrix, relations: PolyMatrix) -> PolyMatrix:
    """Basis of {v : eps v lies in the relation submodule}, free over k[x]."""
    stacked = eps.hstack(-relations)
    full = kernel_basis(stacked)
    return full.submatrix(range(eps.cols), range(full.cols))


def resolve(n) -> Resolution:
    """Two-step resolution by curved modules with free components.

    The kernel inherits its structure maps by exact restriction; failures of
    freeness or closure cannot happen over k[x] and raise
    InternalAssertionFailure if they somehow do.
    """
    nn = as_fpcdg(n)
    p0, epi = free_cover(nn)
    v0 = _component_kernel(epi.f0, nn.comp0.presentation)
    v1 = _component_kernel(epi.f1, nn.comp1.presentation)
    solver0 = LinearSolver(v0)
    solver1 = LinearSolver(v1)
    d0_p1 = solver1.solve(p0.d0 * v0)
    d1_p1 = solver0.solve(p0.d1 * v1)
    if d0_p1 is None or d1_p1 is None:
        raise InternalAssertionFailure("kernel not closed under the structure maps")
    if kernel_basis(v0).cols or kernel_basis(v1).cols:
        raise InternalAssertionFailure("kernel basis not free")
    p1 = MatrixFactorization(nn.ring, nn.side, d0_p1, d1_p1)
    incl = ClosedMorphism(p1, p0, v0, v1)
    res = Resolution(target=nn, p0=p0, p1=p1, epi=epi, incl=incl)
    _verify_resolution(res)
    return res


def _verify_resolution(res: Resolution):
    nn = res.target
    # epi . incl = 0 modulo target relations
    if not maps_equal(res.epi.f0 * res.incl.f0,
                      PolyMatrix.zeros(nn.field, res.epi.f0.rows, res.incl.f0.cols),
                      nn.comp0):
        raise InternalAssertionFailure("resolution not a complex on component 0")
    if not maps_equal(res.epi.f1 * res.incl.f1,
                      PolyMatrix.zeros(nn.field, res.epi.f1.rows, res.incl.f1.cols),
                      nn.comp1):
        raise InternalAssertionFailure("resolution not a complex on component 1")
    # exactness at p0: the kernel of the epi equals the image of incl, which
    # holds by construction; re-derive the kernel and check mutual containment
    for eps, rel, v in (
        (res.epi.f0, nn.comp0.presentation, res.incl.f0),
        (res.epi.f1, nn.comp1.presentation, res.incl.f1),
    ):
        fresh = _component_kernel(eps, rel)
        if LinearSolver(v).solve(fresh) is None:
            raise InternalAssertionFailure("kernel not generated by incl")
        if LinearSolver(fresh).solve(v) is None:
            raise InternalAssertionFailure("incl leaves the kernel")


def dualize(p: MatrixFactorization) -> MatrixFactorization:
    """Component-wise dual into the opposite side.

    The Hom-complex differential on maps into the ring gives transposes with
    one sign: (d0, d1) |-> (-d1^T, d0^T); curvature flips side as it must.
    """
    other = LEFT if p.side == RIGHT else RIGHT
    return MatrixFactorization(
        p.ring, other, -(p.d1.transpose()), p.d0.transpose())


def dualize_morphism(u: ClosedMorphism) -> ClosedMorphism:
    """Contravariant: a closed u : P -> P' dualizes to dual(P') -> dual(P)."""
    if not isinstance(u.source, MatrixFactorization) or \
            not isinstance(u.target, MatrixFactorization):
        raise ShapeMismatch("dualize needs graded-free endpoints")
    return ClosedMorphism(
        dualize(u.target), dualize(u.source),
        u.f0.transpose(), u.f1.transpose())


def double_dual_iso(p: MatrixFactorization) -> ClosedMorphism:
    """The canonical closed isomorphism p -> dualize(dualize(p))."""
    dd = dualize(dualize(p))
    fld = p.ring.field
    return ClosedMorphism(
        p, dd,
        PolyMatrix.identity(fld, p.rank0),
        -(PolyMatrix.identity(fld, p.rank1)))


def totalize(terms, maps) -> MatrixFactorization:
    """Collapse a finite complex of matrix factorizations (closed maps with
    zero composites) into one: column n contributes with sign (-1)^n.
    """
    if not terms:
        raise ShapeMismatch("totalize needs at least one term")
    ring = terms[0].ring
    side = terms[0].side
    fld = ring.field
    if len(maps) != len(terms) - 1:
        raise ShapeMismatch("need one map per adjacent pair")
    for t in terms:
        if t.ring != ring or t.side != side:
            raise ShapeMismatch("totalize terms over different rings/sides")
    for a, b in zip(maps, maps[1:]):
        comp = compose(b, a)
        if not comp.is_zero_map:
            raise ShapeMismatch("totalize input is not a complex")

    def build(parity):
        k = len(terms)
        src_blocks = [(n, (parity - n) % 2) for n in range(k)]
        tgt_blocks = [(n, (parity + 1 - n) % 2) for n in range(k)]
        grid = []
        for (tn, tq) in tgt_blocks:
            row = []
            t_rank = _rank_of(terms[tn], tq)
            for (sn, sq) in src_blocks:
                s_rank = _rank_of(terms[sn], sq)
                if tn == sn:
                    blk = terms[sn].differential(sq)
                    if sn % 2 == 1:
                        blk = blk.scale(Poly.const(fld, -1))
                elif tn == sn + 1:
                    blk = maps[sn].component(sq)
                else:
                    blk = PolyMatrix.zeros(fld, t_rank, s_rank)
                row.append(blk)
            grid.append(row)
        return block_matrix(fld, grid)

    d0 = build(0)
    d1 = build(1)
    return MatrixFactorization(ring, side, d0, d1)


def _rank_of(mf: MatrixFactorization, parity: int) -> int:
    return mf.rank0 if parity % 2 == 0 else mf.rank1


def tot2(x: MatrixFactorization, u: ClosedMorphism, y: MatrixFactorization):
    """Totalization of the two-term complex x -> y with x in degree 0."""
    return totalize([x, y], [u])


def tot2_morphism(src_pair, src_map, tgt_pair, tgt_map, a, b, h=None):
    """Morphism Tot2(src) -> Tot2(tgt) induced by components a, b and a
    homotopy h filling the square: tgt_map a - b src_map = dh + hd."""
    fld = a.source.ring.field
    s = tot2(src_pair[0], src_map, src_pair[1])
    t = tot2(tgt_pair[0], tgt_map, tgt_pair[1])
    if h is None:
        hz0 = PolyMatrix.zeros(fld, _rank_of(tgt_pair[1], 1), _rank_of(src_pair[0], 0))
        hz1 = PolyMatrix.zeros(fld, _rank_of(tgt_pair[1], 0), _rank_of(src_pair[0], 1))
        h = (hz0, hz1)
    f0 = block_matrix(fld, [
        [a.f0, PolyMatrix.zeros(fld, a.f0.rows, b.f1.cols)],
        [h[0], b.f1],
    ])
    f1 = block_matrix(fld, [
        [a.f1, PolyMatrix.zeros(fld, a.f1.rows, b.f0.cols)],
        [h[1], b.f0],
    ])
    return ClosedMorphism(s, t, f0, f1)


def compact_dual(n) -> CompactDualResult:
    """Totalized dual of the two-step resolution: a left matrix factorization
    of the same potential, compact in the appropriate sense."""
    res = resolve(n)
    q0 = dualize(res.p0)
    q1 = dualize(res.p1)
    dincl = dualize_morphism(res.incl)
    xi = tot2(q0, dincl, q1)
    return CompactDualResult(xi=xi, resolution=res, dual_p0=q0, dual_p1=q1,
                             dual_incl=dincl)


def lift_through_covers(f: ClosedMorphism, res_src: Resolution, res_tgt: Resolution):
    """Lift f : K -> N to the free covers and restrict to the kernels.

    The cover lift is the functorial block-diagonal map on generators, which
    is exactly compatible with the counits; the kernel restriction is an
    exact solve.  Returns (f0 : p0K -> p0N, f1 : p1K -> p1N).
    """
    k, n = res_src.target, res_tgt.target
    fld = k.ring.field
    f0 = ClosedMorphism(
        res_src.p0, res_tgt.p0,
        block_matrix(fld, [
            [f.f0, PolyMatrix.zeros(fld, f.f0.rows, f.f1.cols)],
            [PolyMatrix.zeros(fld, f.f1.rows, f.f0.cols), f.f1],
        ]),
        block_matrix(fld, [
            [f.f1, PolyMatrix.zeros(fld, f.f1.rows, f.f0.cols)],
            [PolyMatrix.zeros(fld, f.f0.rows, f.f1.cols), f.f0],
        ]))
    # counit naturality: eps_N f0 = f eps_K modulo target relations
    if not maps_equal(res_tgt.epi.f0 * f0.f0, f.f0 * res_src.epi.f0, n.comp0) or \
       not maps_equal(res_tgt.epi.f1 * f0.f1, f.f1 * res_src.epi.f1, n.comp1):
        raise InternalAssertionFailure("cover lift not natural")
    g0 = LinearSolver(res_tgt.incl.f0).solve(f0.f0 * res_src.incl.f0)
    g1 = LinearSolver(res_tgt.incl.f1).solve(f0.f1 * res_src.incl.f1)
    if g0 is None or g1 is None:
        raise InternalAssertionFailure("lift does not preserve kernels")
    f1 = ClosedMorphism(res_src.p1, res_tgt.p1, g0, g1)
    return f0, f1


def compact_dual_morphism(f: ClosedMorphism,
                          src_result: CompactDualResult | None = None,
                          tgt_result: CompactDualResult | None = None):
    """Contravariant action on a closed morphism f : K -> N of right modules:
    a closed map xi(N) -> xi(K), well defined up to homotopy."""
    src_result = src_result or compact_dual(f.source)
    tgt_result = tgt_result or compact_dual(f.target)
    f0, f1 = lift_through_covers(f, src_result.resolution, tgt_result.resolution)
    a = dualize_morphism(f0)   # dual_p0(N) -> dual_p0(K)
    b = dualize_morphism(f1)   # dual_p1(N) -> dual_p1(K)
    return tot2_morphism(
        (tgt_result.dual_p0, tgt_result.dual_p1), tgt_result.dual_incl,
        (src_result.dual_p0, src_result.dual_p1), src_result.dual_incl,
        a, b)


def short_dual_equivalence(p: MatrixFactorization):
    """For graded-free right p, the one-step resolution p = p itself shows
    that xi(p) is homotopy equivalent to dualize(p); returns the certified
    equivalence u : dualize(p) -> xi(p) together with the xi data."""
    result = compact_dual(as_fpcdg(p))
    res = result.resolution
    # lift of the identity from the standard resolution to the short one is
    # the counit itself; its dual includes dualize(p) into the totalization
    a = dualize_morphism(ClosedMorphism(res.p0, p, res.epi.f0, res.epi.f1))
    zero_tail = zero_mf(p.ring, p.side)
    dual_zero = dualize(zero_tail)
    u = tot2_morphism(
        (dualize(p), dual_zero), zero_morphism(dualize(p), dual_zero),
        (result.dual_p0, result.dual_p1), result.dual_incl,
        a, zero_morphism(dual_zero, result.dual_p1))
    # source of u is Tot2(dual p -> 0) whose data equals dualize(p) padded by
    # nothing; rebuild on dualize(p) itself
    u = ClosedMorphism(dualize(p), result.xi, u.f0, u.f1)
    cert = is_homotopy_equivalence(u)
    if cert is None:
        raise InternalAssertionFailure("short resolution comparison failed")
    return u, cert, result


def _sign_block_iso(x: MatrixFactorization, y: MatrixFactorization,
                    blocks0, blocks1):
    """Search diagonal +-1 block isomorphisms x -> y over the given block
    decompositions of the parity components; exact check, None if none fits."""
    import itertools
    fld = x.ring.field
    if sum(blocks0) != x.rank0 or sum(blocks0) != y.rank0:
        raise ShapeMismatch("parity-0 blocks do not fit")
    if sum(blocks1) != x.rank1 or sum(blocks1) != y.rank1:
        raise ShapeMismatch("parity-1 blocks do not fit")
    for signs0 in itertools.product((1, -1), repeat=len(blocks0)):
        diag0 = _signed_identity(fld, blocks0, signs0)
        for signs1 in itertools.product((1, -1), repeat=len(blocks1)):
            diag1 = _signed_identity(fld, blocks1, signs1)
            if y.d0 * diag0 == diag1 * x.d0 and y.d1 * diag1 == diag0 * x.d1:
                return ClosedMorphism(x, y, diag0, diag1)
    return None


def _signed_identity(fld, blocks, signs):
    diag = []
    for size, s in zip(blocks, signs):
        diag.extend([Poly.const(fld, s)] * size)
    return PolyMatrix.diagonal(fld, diag)


def xi_shift_iso(n) -> ClosedMorphism:
    """Literal sign isomorphism xi(n[1]) -> xi(n)[-1].

    The deterministic resolution of the shift is the shift of the resolution,
    so the two sides have identical block shapes and differ only by signs.
    """
    nn = as_fpcdg(n)
    lhs = compact_dual(shift(nn, 1)).xi
    base = compact_dual(nn)
    rhs = shift(base.xi, -1)
    res = base.resolution
    blocks0 = [res.p0.rank1, res.p1.rank0]
    blocks1 = [res.p0.rank0, res.p1.rank1]
    iso = _sign_block_iso(lhs, rhs, blocks0, blocks1)
    if iso is None:
        raise InternalAssertionFailure("shift comparison signs not found")
    return iso


def dual_of_cone_iso(f: ClosedMorphism) -> ClosedMorphism:
    """Literal sign isomorphism dualize(cone f) -> Tot2(dual N -> dual K)
    for a closed f : K -> N of graded-free right modules."""
    from .cdg import cone
    k, n = f.source, f.target
    c, _, _ = cone(f)
    lhs = dualize(c)
    dn, dk = dualize(n), dualize(k)
    rhs = tot2(dn, dualize_morphism(f), dk)
    iso = _sign_block_iso(lhs, rhs, [n.rank0, k.rank1], [n.rank1, k.rank0])
    if iso is None:
        raise InternalAssertionFailure("cone dual comparison signs not found")
    return iso
