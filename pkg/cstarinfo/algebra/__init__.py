"""Finite-dimensional abelian C*-algebras in their atomic basis, tensor powers and functional calculus"""

from ._algebra import AtomicAlgebra, Element, distinct_values
from ._tensor import MultiIndex, TensorElement
from ._operations import arithmetic, norm_and_spectrum, norm, spectrum, allclose
from ._operations import is_self_adjoint, is_positive, is_projection, leq, sqrt, absolute, pos_neg_parts
from ._operations import positivity_toolkit, functional_calculus
from ._operations import tensor_product, embed_at, truncate_to_level, tensor_ops
from ._operations import sum_embedded, string_values, product_values

__all__ = [
    "AtomicAlgebra",
    "Element",
    "distinct_values",
    "MultiIndex",
    "TensorElement",
    "arithmetic",
    "norm_and_spectrum",
    "norm",
    "spectrum",
    "allclose",
    "is_self_adjoint",
    "is_positive",
    "is_projection",
    "leq",
    "sqrt",
    "absolute",
    "pos_neg_parts",
    "positivity_toolkit",
    "functional_calculus",
    "tensor_product",
    "embed_at",
    "truncate_to_level",
    "tensor_ops",
    "sum_embedded",
    "string_values",
    "product_values",
    ]
