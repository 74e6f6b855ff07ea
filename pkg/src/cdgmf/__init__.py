"""Exact calculus of curved modules of matrix-factorization type over k[x].

The layers, bottom up: exact fields and polynomials, Smith normal form and
complete linear solving over k[x], finitely presented modules, curved
modules and their structural constructors, Hom/tensor complexes with the
null-homotopy solver, the compact duality functor, and a verification suite
that machine-checks the computable identities on small instances.
"""

from .fields import QQ, PrimeField, RationalField, FieldError, \
    field_from_token, field_to_token
from .poly import Poly, poly_divmod, poly_gcd, poly_divides, poly_arith
from .matrices import PolyMatrix, ShapeMismatch, block_matrix, block_diag, \
    determinant
from .smith import SmithForm, smith_normal_form, solve_linear, kernel_basis, \
    matrix_rank, LinearSolver
from .fpmod import FPModule, IllDefinedMap, fp_kernel, fp_cokernel, fp_image, \
    fp_module_ops, fp_tensor, fp_direct_sum, check_well_defined, map_is_zero, \
    maps_equal
from .cdg import CDGRing, MatrixFactorization, FPCDGModule, ClosedMorphism, \
    CurvatureMismatch, InternalAssertionFailure, validate, is_valid, shift, \
    shift_morphism, direct_sum, cone, cone_splittings, g_plus, g_minus, \
    g_plus_cover, identity_morphism, zero_morphism, compose, morphism_add, \
    morphism_scale, zero_mf, as_fpcdg, LEFT, RIGHT
from .homotopy import PeriodicComplex, CohomologyPair, HomotopyWitness, \
    hom_complex, tensor_complex, cohomology, homotopy_witness, \
    morphisms_homotopic, is_contractible, is_homotopy_equivalence, \
    find_homotopy_equivalence, reduce_mf, closed_morphism_basis
from .duality import Resolution, CompactDualResult, free_cover, resolve, \
    dualize, dualize_morphism, double_dual_iso, totalize, tot2, \
    compact_dual, compact_dual_morphism, short_dual_equivalence, \
    xi_shift_iso, dual_of_cone_iso
from .verify import CheckReport, InstanceGenerator, check_pairing, \
    check_duality, check_duality_against_oracle, check_totalization_lemmas, \
    check_adjunction_isos, check_xi_triangulated, check_cdg_axioms, \
    check_differential_squares, stable_hom_oracle, classical_mf_table, \
    oracle_mf_table, one_sided_cyclic, selftest, all_passed
from .io import serialize, parse, to_json_dict, from_json_dict, \
    instance_digest, MalformedInput

__version__ = "0.1.0"
