"""Exact diagram calculus for covariant derivatives along parallel tensors.

Words (perfect matchings on 2k positions) act on eigenfunctions of the
Laplace-Beltrami operator over constant-curvature spaces as scalars;
this package computes those scalars exactly as polynomials in the
eigenvalue variable θ and the curvature constant K with rational-
function coefficients in the dimension n, applies linking operators,
solves the resulting linear systems, and cross-checks everything
against an independent computation on the unit sphere.
"""

from .errors import SizeLimitError
from .multipoly import MultiPoly, poly_gcd
from .algebra import (RationalFunctionN, DiagramPoly, FieldElem, PoleError,
                      poly_arith, substitute)
from .linsolve import solve_linear, SingularSystemError
from .words import (Word, DiagramRender, parse_word, canonicalize,
                    enumerate_words, reverse, concat, render,
                    word_from_pairing, double_factorial,
                    LetterCountError, EmptyTokenError, UnsupportedFormatError)
from .reduction import (Reducer, reduce_word, default_reducer,
                        transpose_step, leading_part, GradeError)
from .linking import (LinkSpec, LinkedWord, link, multi_link, tau,
                      tau_permuted, tau_linked, OverlapError,
                      CircleUnexpectedError)
from .conjecture import (system_index, build_system, solve_coefficients,
                         target_polynomial, root_product, conjectured_product,
                         closed_form_constant, verify_conjectures,
                         ConjectureReport, NotDivisibleError)
from .sphere import (HarmonicEigenfunction, AmbientTensorField, SphereOracle,
                     make_eigenfunction, covariant_derivative, is_tangential,
                     sphere_points, pick_points, get_oracle, BasePointError)

__version__ = "0.1.0"
