"""Degrees, Wirtinger numbers and trianalyticity tests on flat quaternionic tori.

The package models flat hyperkähler geometry at the linear level:
quaternionic vector spaces carrying (I, J, K, g), their Kähler and
holomorphic symplectic forms, flat complex subtori with lattices, the
Kähler and symplectic degrees, Wirtinger numbers, and a chain verifier
for nested symplectic immersions backed by an explicit hyperkähler
certificate.
"""

from ._version import __version__
from ._kernels import backend as kernel_backend
from .exterior import (
    Multivector,
    SkewMatrix,
    complex_pfaffian,
    form_power,
    pfaffian,
    pfaffian_oracle,
    top_coefficient,
    two_form_multivector,
    wedge,
)
from .spaces import (
    ComplexTwoForm,
    InducedStructure,
    QuaternionicSpace,
    RecoveryFailure,
    TwoForm,
    holomorphic_symplectic_form,
    induced_structure,
    kahler_form,
    recover_structure,
    rotate_structure,
    standard_space,
)
from .subvariety import (
    DegreeReport,
    Subvariety,
    complex_span,
    deg_Omega,
    deg_omega,
    form_degree,
    full_space,
    interpolating_subspace,
    is_trianalytic,
    quaternionic_span,
    random_subvariety,
    restrict_form,
    volume,
    wirtinger_number,
    wirtinger_numbers,
)
from .chains import (
    ChainReport,
    HKCertificate,
    ImmersionEdge,
    generate_chain_suite,
    is_symplectic_immersion,
    linear_calabi_yau,
    restricted_complex_form,
    verify_chain,
)
from .scene import (
    Report,
    Scene,
    SceneError,
    parse_scene,
    run_scene,
    serialize_scene,
)
from .properties import run_properties

__all__ = [
    "__version__",
    "kernel_backend",
    "Multivector",
    "SkewMatrix",
    "complex_pfaffian",
    "form_power",
    "pfaffian",
    "pfaffian_oracle",
    "top_coefficient",
    "two_form_multivector",
    "wedge",
    "ComplexTwoForm",
    "InducedStructure",
    "QuaternionicSpace",
    "RecoveryFailure",
    "TwoForm",
    "holomorphic_symplectic_form",
    "induced_structure",
    "kahler_form",
    "recover_structure",
    "rotate_structure",
    "standard_space",
    "DegreeReport",
    "Subvariety",
    "complex_span",
    "deg_Omega",
    "deg_omega",
    "form_degree",
    "full_space",
    "interpolating_subspace",
    "is_trianalytic",
    "quaternionic_span",
    "random_subvariety",
    "restrict_form",
    "volume",
    "wirtinger_number",
    "wirtinger_numbers",
    "ChainReport",
    "HKCertificate",
    "ImmersionEdge",
    "generate_chain_suite",
    "is_symplectic_immersion",
    "linear_calabi_yau",
    "restricted_complex_form",
    "verify_chain",
    "Report",
    "Scene",
    "SceneError",
    "parse_scene",
    "run_scene",
    "serialize_scene",
    "run_properties",
]
