"""Exact computations with vertex algebras built from singular commutative data."""

from .bicharacter import (Bicharacter, BicharacterError, Counit, TableBicharacter, bichar_convolve,
                          bichar_eval, bichar_inverse, braiding_form, default_bicharacter, phi_r,
                          singular_extension, twisted_product)
from .delta import delta_annihilation_check, delta_contract, delta_symmetry_check, delta_window
from .divided_powers import DPElement, TensorDP, antipode, dp_coproduct, dp_mul
from .laurent import LaurentPoly, residue
from .pbw import AlgebraFamily, State, TensorState, graded_basis, straighten
from .quantum import (RMatrixOp, ShiftedSingularRing, braided_comm_check, braided_R_from_bichar,
                      rmatrix_hexagon_check, toy_bicharacter, ybe_check)
from .serialize import parse_state
from .singular import S_E, S_L, S_Y, Ring, SingularFn, expand_singular
from .vertex import (OpeResult, VertexAlgebraInstance, check_locality, check_translation,
                     check_vacuum, mode_matrix, ope, ope_commutator, taylor_two_point, vertex_op)

__version__ = "0.1.0"
