"""Exact arithmetic tooling for comparing function fields through the
splitting behaviour of Drinfeld-module torsion polynomials, plus group-side
Gassmann-triple certification."""

from .exprs import (
    ParseError,
    parse,
    parse_element,
    parse_modulus,
    render_residue_poly,
    render_tpoly,
    render_twisted,
    render_ypoly,
)
from .fields import FieldElement, FiniteField, extension_field, prime_field
from .gassmann import (
    GassmannCertificate,
    MatElem,
    MatGroup,
    Subgroup,
    build_gl,
    conjugacy_classes,
    example1_subgroups,
    permutation_character_fixpoints,
    stabilizer_pair,
    verify_gassmann,
)
from .poly import (
    Factorization,
    Poly,
    factor,
    is_irreducible,
    monic_irreducibles,
    random_irreducible,
)
from .splitting import (
    EquivalenceReport,
    Exhaustive,
    PrimeVerdict,
    Sampled,
    SideResult,
    SplitType,
    compare_split_types,
    irreducible_count,
    reduce_mod_prime,
    split_type,
)
from .twisted import (
    DrinfeldModule,
    TwistedPoly,
    YPoly,
    carlitz,
    rho_eval,
    torsion_polynomial,
)

__all__ = [
    "DrinfeldModule",
    "EquivalenceReport",
    "Exhaustive",
    "Factorization",
    "FieldElement",
    "FiniteField",
    "GassmannCertificate",
    "MatElem",
    "MatGroup",
    "ParseError",
    "Poly",
    "PrimeVerdict",
    "Sampled",
    "SideResult",
    "SplitType",
    "Subgroup",
    "TwistedPoly",
    "YPoly",
    "build_gl",
    "carlitz",
    "compare_split_types",
    "conjugacy_classes",
    "example1_subgroups",
    "extension_field",
    "factor",
    "irreducible_count",
    "is_irreducible",
    "monic_irreducibles",
    "parse",
    "parse_element",
    "parse_modulus",
    "permutation_character_fixpoints",
    "prime_field",
    "random_irreducible",
    "reduce_mod_prime",
    "render_residue_poly",
    "render_tpoly",
    "render_twisted",
    "render_ypoly",
    "rho_eval",
    "split_type",
    "stabilizer_pair",
    "torsion_polynomial",
    "verify_gassmann",
]
