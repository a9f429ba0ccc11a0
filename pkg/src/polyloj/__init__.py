"""Exact-arithmetic toolkit for polynomial mappings: Newton polyhedra at
infinity, non-degeneracy certificates, monomial reductions, and empirical
growth-inequality estimation."""

from .genericity import GenericityStats, OpennessResult, genericity_trial, openness_probe
from .lattice import (
    AffineSupportCovectors,
    ReducedMapping,
    ReductionVerification,
    UnimodularBasis,
    affine_support_covectors,
    primitive,
    reduce_mapping,
    simplex_lattice_points,
    unimodular_complete,
    verify_reduction,
)
from .lojasiewicz import (
    ExponentFit,
    FitError,
    InequalityReport,
    KtildeProbeReport,
    MultiplierReport,
    SequenceEvidence,
    fit_exponents,
    hunt_sequences,
    ktilde_probe,
    mu_estimate,
    mu_estimate_detail,
    multiplier,
    verify_inequality,
)
from .nondegeneracy import (
    Evidence,
    FaceSystem,
    NondegeneracyReport,
    check_witness,
    exact_check_2d,
    face_rank_matrix,
    face_system,
    khovanskii_check,
    nondegenerate_at_infinity,
    rescale_witness,
    witness_search,
)
from .polyhedra import (
    Face,
    FaceTuple,
    FaceTupleEnumeration,
    NewtonPolyhedron,
    all_faces,
    d_and_face,
    dimension,
    enumerate_negative_face_tuples,
    integer_points,
    is_convenient,
    minkowski_sum,
    missing_axes,
    newton_polyhedron,
)
from .polynomials import (
    ParseError,
    Polynomial,
    PolynomialError,
    PolynomialMapping,
    euler_residual,
    face_part,
    gradient,
    parse_polynomial,
    restrict_to_axes,
)
from .reports import VERSION, RunConfig, build_report, dumps, input_hash

__version__ = VERSION

__all__ = [
    "AffineSupportCovectors",
    "Evidence",
    "ExponentFit",
    "Face",
    "FaceSystem",
    "FaceTuple",
    "FaceTupleEnumeration",
    "FitError",
    "GenericityStats",
    "InequalityReport",
    "KtildeProbeReport",
    "MultiplierReport",
    "NewtonPolyhedron",
    "NondegeneracyReport",
    "OpennessResult",
    "ParseError",
    "Polynomial",
    "PolynomialError",
    "PolynomialMapping",
    "ReducedMapping",
    "ReductionVerification",
    "RunConfig",
    "SequenceEvidence",
    "UnimodularBasis",
    "VERSION",
    "affine_support_covectors",
    "all_faces",
    "build_report",
    "check_witness",
    "d_and_face",
    "dimension",
    "dumps",
    "enumerate_negative_face_tuples",
    "euler_residual",
    "exact_check_2d",
    "face_part",
    "face_rank_matrix",
    "face_system",
    "fit_exponents",
    "genericity_trial",
    "gradient",
    "hunt_sequences",
    "input_hash",
    "integer_points",
    "is_convenient",
    "khovanskii_check",
    "ktilde_probe",
    "minkowski_sum",
    "missing_axes",
    "mu_estimate",
    "mu_estimate_detail",
    "multiplier",
    "newton_polyhedron",
    "nondegenerate_at_infinity",
    "openness_probe",
    "parse_polynomial",
    "primitive",
    "reduce_mapping",
    "rescale_witness",
    "restrict_to_axes",
    "simplex_lattice_points",
    "unimodular_complete",
    "verify_inequality",
    "verify_reduction",
    "witness_search",
]
