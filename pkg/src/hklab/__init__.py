"""Desk-scale numerical verification of the Dirac / dual-Dirac construction
over the infinite dihedral group: exact group arithmetic, graded Clifford and
tensor algebra, discretized function spaces and operators, the asymptotic
morphism families with their defect measurements, and the crossed-product
convolution algebra.
"""

from .group import (DihedralElement, E, RHO, SIGMA, ScaledAction, act, inverse, multiply,
                    properness_ball, sign)
from .graded import (CliffordElement, GradedAlgebra, GradedTensorElement, clifford_algebra,
                     clifford_embed, clifford_mul, even_odd_decompose, graded_tensor_mul,
                     graded_tensor_star, matrix_algebra)
from .spaces import (CliffFunction, GridSpec, HermiteBasis, HilbertVector, SFunction,
                     act_on_cliff_function, act_on_hilbert, hermite_basis, l2_norm, sup_norm,
                     u_function, v_function)
from .operators import (DenseOperator, clifford_mult_matrix, compactness_profile,
                        conjugate_action, dirac_matrix, functional_calculus, mult_operator,
                        operator_norm, oscillator_matrix)
from .morphisms import (ConvergenceReport, alpha, alpha_defect, beta, beta_defect, defect_suite,
                        gamma, homotopy_H, kernel_projection, mult_identity_residual)
from .crossed import (CoefficientAlgebra, GroupAlgebraElement, TruncatedL2, convolve, delta,
                      involution, reduced_norm_estimate, regular_representation)
from .config import RunConfig, load_config

__version__ = "0.1.0"
