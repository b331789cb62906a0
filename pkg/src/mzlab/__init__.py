"""Mathieu-Zhao spaces from derivations and E-derivations of GF(p)[x]."""

from __future__ import annotations

from .classify import (Decision, MembershipMode, Verdict, Witness, classify_ideal_derivation,
                       classify_ideal_ederivation, classify_image_derivation,
                       classify_image_ederivation, classify_single_partial_multivariate,
                       classify_triangular, translation_sum_certificate)
from .errors import (CapExceeded, FieldError, InvariantViolation, MzlabError, ParseError,
                     ShapeError, ZeroPolynomialError)
from .field import FieldSpec, is_prime
from .maps import EDerivation, TriangularDerivation, UnivariateDerivation, iterate_map, orbit
from .nilpotency import (LfStatus, LnStatus, coeff_table, is_ln_derivation, is_ln_ederivation,
                         is_locally_finite, nilpotency_bound)
from .oracle import ProbeConfig, agreement_suite, radical_probe, verify_witness
from .poly import MultiPoly, Poly, slot_decompose
from .span import IdealSpec, Membership, ederivation_monomial_table, image_span

__all__ = [
    "CapExceeded", "Decision", "EDerivation", "FieldError", "FieldSpec", "IdealSpec",
    "InvariantViolation", "LfStatus", "LnStatus", "Membership", "MembershipMode", "MultiPoly",
    "MzlabError", "ParseError", "Poly", "ProbeConfig", "ShapeError", "TriangularDerivation",
    "UnivariateDerivation", "Verdict", "Witness", "ZeroPolynomialError", "agreement_suite",
    "classify_ideal_derivation", "classify_ideal_ederivation", "classify_image_derivation",
    "classify_image_ederivation", "classify_single_partial_multivariate", "classify_triangular",
    "coeff_table", "ederivation_monomial_table", "image_span", "is_ln_derivation",
    "is_ln_ederivation", "is_locally_finite", "is_prime", "iterate_map", "nilpotency_bound",
    "orbit", "radical_probe", "slot_decompose", "translation_sum_certificate", "verify_witness",
]
