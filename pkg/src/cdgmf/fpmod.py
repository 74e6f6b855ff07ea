"""Finitely presented k[x]-modules and maps between them.

A module is the cokernel of its presentation matrix A (generators = rows,
relations = columns).  The Smith form of A yields the canonical invariant
factor decomposition: free rank plus monic non-unit torsion factors.  Maps
are matrices on generators; all membership questions reduce to solve_linear.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import Poly, poly_divmod
from .matrices import PolyMatrix, ShapeMismatch, block_diag
from .smith import LinearSolver, smith_normal_form, kernel_basis


class IllDefinedMap(ValueError):
    pass


@dataclass(frozen=True)
class NormalForm:
    free_rank: int
    torsion_factors: tuple  # monic non-unit polynomials, divisibility chain


class FPModule:
    __slots__ = ("field", "presentation", "_normal", "_solver")

    def __init__(self, presentation: PolyMatrix):
        self.field = presentation.field
        self.presentation = presentation
        self._normal = None
        self._solver = None

    @classmethod
    def free(cls, field, rank: int):
        return cls(PolyMatrix.zeros(field, rank, 0))

    @classmethod
    def zero(cls, field):
        return cls.free(field, 0)

    @classmethod
    def cyclic(cls, field, p: Poly):
        """R/(p); the zero polynomial gives R itself."""
        if p.is_zero:
            return cls.free(field, 1)
        return cls(PolyMatrix(field, 1, 1, [[p]]))

    @property
    def generators(self) -> int:
        return self.presentation.rows

    @property
    def is_free_presentation(self) -> bool:
        """True when the stored presentation has no relation columns."""
        return self.presentation.cols == 0

    def solver(self) -> LinearSolver:
        if self._solver is None:
            self._solver = LinearSolver(self.presentation)
        return self._solver

    @property
    def normal_form(self) -> NormalForm:
        if self._normal is None:
            s = smith_normal_form(self.presentation)
            torsion = tuple(p for p in s.invariant_factors if p.degree >= 1)
            self._normal = NormalForm(
                free_rank=self.generators - s.rank,
                torsion_factors=torsion,
            )
        return self._normal

    @property
    def free_rank(self) -> int:
        return self.normal_form.free_rank

    @property
    def torsion_factors(self) -> tuple:
        return self.normal_form.torsion_factors

    @property
    def is_zero_module(self) -> bool:
        nf = self.normal_form
        return nf.free_rank == 0 and not nf.torsion_factors

    def k_dimension(self):
        """Dimension over the ground field, or None when infinite."""
        nf = self.normal_form
        if nf.free_rank > 0:
            return None
        return sum(p.degree for p in nf.torsion_factors)

    def normalized(self) -> "FPModule":
        """Canonical presentation diag(torsion factors) padded with free rows."""
        nf = self.normal_form
        f = self.field
        g = len(nf.torsion_factors) + nf.free_rank
        pres = PolyMatrix.zeros(f, g, len(nf.torsion_factors))
        ent = [list(r) for r in pres.entries]
        for i, p in enumerate(nf.torsion_factors):
            ent[i][i] = p
        return FPModule(PolyMatrix(f, g, len(nf.torsion_factors), ent))

    def same_class(self, other: "FPModule") -> bool:
        """Abstract isomorphism: equal normal forms."""
        return self.field == other.field and self.normal_form == other.normal_form

    def contains_in_relations(self, cols: PolyMatrix) -> bool:
        if cols.cols == 0:
            return True
        return self.solver().contains(cols)

    def __eq__(self, other):
        return isinstance(other, FPModule) and self.presentation == other.presentation

    def __hash__(self):
        return hash(self.presentation)

    def __repr__(self):
        nf = self.normal_form
        return f"FPModule(free={nf.free_rank}, torsion={list(nf.torsion_factors)})"


def check_well_defined(f: PolyMatrix, source: FPModule, target: FPModule):
    """A matrix on generators descends to the quotients iff it maps the
    source relations into the target relation submodule."""
    if f.rows != target.generators or f.cols != source.generators:
        raise ShapeMismatch(
            f"map shape {f.shape} vs generators {target.generators}x{source.generators}")
    moved = f * source.presentation
    if not target.contains_in_relations(moved):
        raise IllDefinedMap("map does not respect relations")


def map_is_zero(f: PolyMatrix, target: FPModule) -> bool:
    """The map is zero iff every generator image lies in the relations."""
    return target.contains_in_relations(f)


def maps_equal(f: PolyMatrix, g: PolyMatrix, target: FPModule) -> bool:
    return map_is_zero(f - g, target)


def fp_kernel(f: PolyMatrix, source: FPModule, target: FPModule):
    """Kernel of the induced map, as (module, inclusion matrix into source).

    The inclusion matrix expresses kernel generators in source generators.
    """
    check_well_defined(f, source, target)
    fld = source.field
    # preimage of the relation submodule: {v : f v lies in im(target.presentation)}
    stacked = f.hstack(-target.presentation)
    full = kernel_basis(stacked)
    incl = full.submatrix(range(source.generators), range(full.cols))
    # relations among the kernel generators inside the source module
    rel_stack = incl.hstack(-source.presentation)
    rel_full = kernel_basis(rel_stack)
    rels = rel_full.submatrix(range(incl.cols), range(rel_full.cols))
    return FPModule(rels), incl


def fp_cokernel(f: PolyMatrix, source: FPModule, target: FPModule) -> FPModule:
    check_well_defined(f, source, target)
    return FPModule(f.hstack(target.presentation))


def fp_image(f: PolyMatrix, source: FPModule, target: FPModule):
    """Image submodule, as (module, inclusion matrix into target)."""
    check_well_defined(f, source, target)
    rel_stack = f.hstack(-target.presentation)
    rel_full = kernel_basis(rel_stack)
    rels = rel_full.submatrix(range(f.cols), range(rel_full.cols))
    return FPModule(rels), f


def fp_subquotient(kernel_incl: PolyMatrix, kernel_rels: FPModule,
                   image_gens: PolyMatrix, ambient: FPModule) -> FPModule:
    """(submodule spanned by kernel_incl) / (submodule spanned by image_gens),
    for image contained in the kernel inside the ambient module."""
    k = kernel_incl.cols
    if image_gens.cols == 0:
        coords = PolyMatrix.zeros(ambient.field, k, 0)
    else:
        stacked = kernel_incl.hstack(-ambient.presentation)
        sol = LinearSolver(stacked).solve(image_gens)
        if sol is None:
            raise IllDefinedMap("image does not lie in the kernel")
        coords = sol.submatrix(range(k), range(image_gens.cols))
    return FPModule(coords.hstack(kernel_rels.presentation))


def fp_module_ops(source: FPModule, target: FPModule, f: PolyMatrix, op: str):
    """Spec-level dispatcher over the f.p. module toolkit."""
    if op == "kernel":
        return fp_kernel(f, source, target)[0]
    if op == "cokernel":
        return fp_cokernel(f, source, target)
    if op == "is_zero":
        check_well_defined(f, source, target)
        return map_is_zero(f, target)
    if op == "k_dimension":
        return source.k_dimension()
    raise ValueError(f"unknown op {op!r}")


def fp_tensor(a: FPModule, b: FPModule) -> FPModule:
    """Tensor product over k[x]; generators ordered with the a-index outer."""
    f = a.field
    ia = PolyMatrix.identity(f, a.generators)
    ib = PolyMatrix.identity(f, b.generators)
    rel_a = a.presentation.kron(ib)
    rel_b = ia.kron(b.presentation)
    return FPModule(rel_a.hstack(rel_b))


def fp_direct_sum(a: FPModule, b: FPModule) -> FPModule:
    return FPModule(block_diag(a.field, [a.presentation, b.presentation]))
