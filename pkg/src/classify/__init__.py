"""
Classification of vector-field germs at the origin under C0, C1 and Cinf
conjugacy, with the local model tables and the jet-level modulus reduction.
"""

from .models import (
    GermClassification,
    NormalForm,
    NormalFormTerm,
    REGULAR,
    HYPERBOLIC,
    DEGENERATE,
    FLAT,
    ZERO_FIELD,
    FINITE_KINDS,
    C0_CLASSES,
    RELATIONS,
)
from .belitskii import belitskii_reduce, modulus_from_residue
from .germ import (
    classify_germ,
    normal_form,
    normal_forms_table,
    model_expression,
    c0_class_of,
    c0_class_from_signs,
    cinf_sign,
)

__all__ = [
    'GermClassification',
    'NormalForm',
    'NormalFormTerm',
    'REGULAR',
    'HYPERBOLIC',
    'DEGENERATE',
    'FLAT',
    'ZERO_FIELD',
    'FINITE_KINDS',
    'C0_CLASSES',
    'RELATIONS',
    'belitskii_reduce',
    'modulus_from_residue',
    'classify_germ',
    'normal_form',
    'normal_forms_table',
    'model_expression',
    'c0_class_of',
    'c0_class_from_signs',
    'cinf_sign',
]
