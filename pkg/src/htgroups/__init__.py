"""Exact computation in Higman-Thompson groups V_{n,r} and stabilisers of
finite sets of rational points."""
from .clopen import ClopenSet, complement, difference, intersection, normalize, split_into, type_of, union
from .conjugator import ConjugatorData, conjugate, conjugator
from .constructions import (
    AbelImage,
    FixClopenIso,
    HnnData,
    HnnReport,
    abelianize,
    attracting_all,
    attracting_element,
    fix_clopen_iso,
    hnn_data,
    hnn_decompose,
    in_commutator,
    order_two_element,
    random_fix_element,
    same_type_homeo,
    verify_hnn_criterion,
)
from .element import (
    Element,
    PartialMap,
    assemble,
    compose,
    evaluate,
    identity,
    identity_locus,
    image_clopen,
    invert,
    make_element,
    parity,
    power,
    random_element,
    restrict,
)
from .errors import (
    DomainError,
    HTGError,
    LayerCapError,
    NotIsomorphicError,
    ParseError,
    PreconditionError,
    TypeMismatchError,
    ValidationError,
)
from .germs import RationalSet, germ_exponent, germ_tuple, in_fix, in_fix0
from .words import RationalPoint, Space, canonical_point, cone_contains_point, replace_prefix_point

__version__ = "0.1.0"

__all__ = [
    "ClopenSet",
    "complement",
    "difference",
    "intersection",
    "normalize",
    "split_into",
    "type_of",
    "union",
    "ConjugatorData",
    "conjugate",
    "conjugator",
    "AbelImage",
    "FixClopenIso",
    "HnnData",
    "HnnReport",
    "abelianize",
    "attracting_all",
    "attracting_element",
    "fix_clopen_iso",
    "hnn_data",
    "hnn_decompose",
    "in_commutator",
    "order_two_element",
    "random_fix_element",
    "same_type_homeo",
    "verify_hnn_criterion",
    "Element",
    "PartialMap",
    "assemble",
    "compose",
    "evaluate",
    "identity",
    "identity_locus",
    "image_clopen",
    "invert",
    "make_element",
    "parity",
    "power",
    "random_element",
    "restrict",
    "DomainError",
    "HTGError",
    "LayerCapError",
    "NotIsomorphicError",
    "ParseError",
    "PreconditionError",
    "TypeMismatchError",
    "ValidationError",
    "RationalSet",
    "germ_exponent",
    "germ_tuple",
    "in_fix",
    "in_fix0",
    "RationalPoint",
    "Space",
    "canonical_point",
    "cone_contains_point",
    "replace_prefix_point",
]
