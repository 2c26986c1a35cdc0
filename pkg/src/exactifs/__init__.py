"""Exact overlaps, overlap gaps and entropy dimension for self-similar IFSs."""

from .algebra import (AlgebraicScalar, FieldElement, IntPolynomial, ScalarField,
                      SeparationContext, Sign, certify_sign, eval_enclosure, height,
                      poly_norms, poly_product, separation_bound)
from .config import PRESETS, model_to_config, parse_config, preset_expected
from .errors import (BudgetExceeded, CertificateError, ExactIFSError, InvalidInput,
                     PreconditionError)
from .functionals import (CandidateSet, CombinationRecord, LinearFunctional, RankReport,
                          build_candidate_set, consistency_check, functional_from_words,
                          gram_rank, lift_to_higher_dim, projection_residual,
                          reconstruct_translations, transfer_certificate)
from .ifs import (IFSModel, SimilarityMap, attractor_hull, compose, multi_index, normalize,
                  rate_stats, similarity_dimension, span_check)
from .measure import (DiscreteAffineMeasure, PartitionSpec, convolve, dim_estimate,
                      dim_upper_bound, hochman_diagnostic, nu_n, partition_entropy)
from .overlaps import (UNDEFINED, LambdaClass, OverlapCertificate, decay_profile, delta_n,
                       find_overlap, lambda_classes, verify_certificate)

__version__ = "0.1.0"

__all__ = [
    "AlgebraicScalar",
    "BudgetExceeded",
    "CandidateSet",
    "CertificateError",
    "CombinationRecord",
    "DiscreteAffineMeasure",
    "ExactIFSError",
    "FieldElement",
    "IFSModel",
    "IntPolynomial",
    "InvalidInput",
    "LambdaClass",
    "LinearFunctional",
    "OverlapCertificate",
    "PRESETS",
    "PartitionSpec",
    "PreconditionError",
    "RankReport",
    "ScalarField",
    "SeparationContext",
    "Sign",
    "SimilarityMap",
    "UNDEFINED",
    "attractor_hull",
    "build_candidate_set",
    "certify_sign",
    "compose",
    "consistency_check",
    "convolve",
    "decay_profile",
    "delta_n",
    "dim_estimate",
    "dim_upper_bound",
    "eval_enclosure",
    "find_overlap",
    "functional_from_words",
    "gram_rank",
    "height",
    "hochman_diagnostic",
    "lambda_classes",
    "lift_to_higher_dim",
    "model_to_config",
    "multi_index",
    "normalize",
    "nu_n",
    "parse_config",
    "partition_entropy",
    "poly_norms",
    "poly_product",
    "preset_expected",
    "projection_residual",
    "rate_stats",
    "reconstruct_translations",
    "separation_bound",
    "similarity_dimension",
    "span_check",
    "transfer_certificate",
    "verify_certificate",
]
