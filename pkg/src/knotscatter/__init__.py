"""Scattering of charged particles off knotted magnetic flux lines.

A thin flux line shaped like a (p, q) torus knot (or one of three unknot
presets) is modeled as a closed loop of tangent magnetic dipoles. The
package computes the loop's multipole moments, its vector potential (exact
line integral and far-field multipole truncation), and the first-order
scattering matrix element of a charged particle off that potential, and
verifies numerically that the torus-knot amplitude factorizes into three
unknot amplitudes weighted by p/2 and -q/2.
"""

from .angular import (
    TABULATED_BRACKETS,
    TABULATED_VARIANTS,
    TRIPLE_PRODUCT_IDENTITIES,
    DirectionCosineMonomial,
    HarmonicExpansion,
    angular_bracket,
    discrepancy_report,
    monomial_expansion,
    sphere_quadrature_bracket,
    triple_product_residual,
)
from .born import (
    BornAmplitude,
    BruteforceGrid,
    CouplingConfig,
    ScatteringKinematics,
    amplitude_to_dict,
    born_amplitude,
    factorization_residual,
    random_kinematics,
    triad_amplitude,
    vni_bruteforce,
    vni_octopole,
    vni_quadrupole,
)
from .curves import (
    CurvePoint,
    KnotSpec,
    SampledCurve,
    TorusKnot,
    UnknotXY,
    UnknotXZ,
    UnknotYZ,
    curve_integral,
    eval_curve,
    min_enclosing_radius,
    sample_curve,
    sampled_from_json,
    sampled_from_spec,
)
from .multipole import (
    OctopoleMoments,
    QuadrupoleMoments,
    dipole_moment,
    moments_to_dict,
    octopole_moments,
    quadrupole_moments,
)
from .potential import (
    FieldPoint,
    VectorPotentialValue,
    biot_savart_dipole_line,
    divergence_multipole,
    multipole_potential,
)
from .radial import (
    RadialCoefficients,
    radial_A_closed,
    radial_B_closed,
    radial_coefficients,
    radial_quadrature,
    radial_reference,
)
from .specfun import (
    DegenerateClosedForm,
    NonConvergent,
    clebsch_gordan,
    gamma_ratio,
    gaunt,
    hyp1f2,
    legendre_p,
    sphere_integral,
    sphere_rule,
    spherical_bessel_j,
    spherical_harmonic,
)

__all__ = [
    "BornAmplitude",
    "BruteforceGrid",
    "CouplingConfig",
    "CurvePoint",
    "DegenerateClosedForm",
    "DirectionCosineMonomial",
    "FieldPoint",
    "HarmonicExpansion",
    "KnotSpec",
    "NonConvergent",
    "OctopoleMoments",
    "QuadrupoleMoments",
    "RadialCoefficients",
    "SampledCurve",
    "ScatteringKinematics",
    "TABULATED_BRACKETS",
    "TABULATED_VARIANTS",
    "TRIPLE_PRODUCT_IDENTITIES",
    "TorusKnot",
    "UnknotXY",
    "UnknotXZ",
    "UnknotYZ",
    "VectorPotentialValue",
    "amplitude_to_dict",
    "angular_bracket",
    "biot_savart_dipole_line",
    "born_amplitude",
    "clebsch_gordan",
    "curve_integral",
    "dipole_moment",
    "discrepancy_report",
    "divergence_multipole",
    "eval_curve",
    "factorization_residual",
    "gamma_ratio",
    "gaunt",
    "hyp1f2",
    "legendre_p",
    "min_enclosing_radius",
    "moments_to_dict",
    "monomial_expansion",
    "multipole_potential",
    "octopole_moments",
    "quadrupole_moments",
    "radial_A_closed",
    "radial_B_closed",
    "radial_coefficients",
    "radial_quadrature",
    "radial_reference",
    "random_kinematics",
    "sample_curve",
    "sampled_from_json",
    "sampled_from_spec",
    "sphere_integral",
    "sphere_quadrature_bracket",
    "sphere_rule",
    "spherical_bessel_j",
    "spherical_harmonic",
    "triad_amplitude",
    "triple_product_residual",
    "vni_bruteforce",
    "vni_octopole",
    "vni_quadrupole",
]
