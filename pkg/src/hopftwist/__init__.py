"""Exact symbolic engine for twisted coordinate Hopf algebras.

Builds coordinate Hopf algebras of unipotent and connected nilpotent groups
over exact rationals, applies 2-cocycle twists to their multiplication, and
verifies the resulting algebra structure: bracket presentations, cotriangular
R-forms, quotient algebras of double cosets, Weyl pairs, smash-product
relations, and the classical Yang-Baxter layer.
"""

from .poly import (AlgebraElement, DomainError, EngineError, InputError, Mono,
                   TensorElement, ValidationError, Variables, format_element,
                   format_tensor, monomials_up_to, mono_tuples_up_to,
                   parse_element, parse_tensor, tensor_of)
from .hopf import GroupPoint, GroupPresentation, validate_presentation
from .twists import (ConvolutionTwist, ExpRTwist, FlippedTwist, PairForm,
                     PullbackTwist, RawPairTable, TableTwist, TrivialTwist,
                     Twist, build_expr_twist, build_table_twist, convolve_bi,
                     flip_twist, pullback_twist, trivial_twist)
from .products import (CheckReport, TwistedProduct, check_associativity,
                       check_coproduct_homomorphism, check_cotriangular,
                       check_hopf_cocycle, check_leading_term,
                       check_primitive_pairing, check_product_equality,
                       commutator, rform, twisted_product)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
