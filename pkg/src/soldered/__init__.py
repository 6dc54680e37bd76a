"""Exact tensor calculus for soldered tensors and Dirac submanifolds of Poisson and Jacobi manifolds."""

from .calculus import (
    PolyMap,
    d,
    differential,
    exterior_derivative,
    flat,
    interior_product,
    lie_derivative,
    pullback,
    pushforward,
    schouten_bracket,
    sharp,
    wedge,
)
from .chart import Chart
from .errors import *  # noqa: F401,F403
from .lifts import (
    TangentChart,
    complete_lift_form,
    complete_lift_multivector,
    euler_field,
    is_coisotropic,
    soldering_via_lift,
    tangent_jacobi,
    tangent_poisson,
    vertical_lift,
)
from .report import Verdict, Witness
from .scalar import Scalar
from .scalar_parse import parse_scalar
from .structures import (
    ContactData,
    HomogeneousPoisson,
    JacobiPair,
    LcsData,
    conformal_change,
    contact_verify,
    is_homogeneous,
    is_jacobi,
    is_poisson,
    lcs_verify,
    poissonize,
    symplectization_check,
)
from .submanifold import (
    ClassificationFlags,
    FrameMatrix,
    InducedStructure,
    NormalizedSubmanifold,
    SecondFundamentalData,
    alternate_normal_check,
    classify_jacobi,
    classify_poisson,
    conformal_flatten,
    induced_structure,
    involution_fixed_locus_check,
    is_soldered_form,
    is_soldered_multivector,
    is_soldered_symmetric,
    second_fundamental,
    soldered_closure_suite,
    tubular_poisson_check,
)
from .tensors import DifferentialForm, Multivector, SymmetricTwoTensor

__version__ = "0.1.0"
