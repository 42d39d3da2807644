"""Exact Poincare series and rational cohomology of Kac-Moody groups.

Typical use::

    from kacmoody import build_named, flag_poincare, group_presentation

    A = build_named("complete", 3, a=3)
    flag_poincare(A).P_A          # (1 + q^2) / (1 - 2 q^2)
    group_presentation(A, 10)     # exterior y3 plus polynomial generators
"""

from kacmoody.cartan import (
    CartanMatrix,
    KMType,
    Symmetrization,
    build_named,
    classify,
    components,
    coxeter_matrix,
    is_symmetrizable,
    symmetrize,
    validate,
)
from kacmoody.cohomology import (
    GeneratorDegrees,
    RingPresentation,
    epsilon,
    exponent_sequence,
    finite_group_cohomology,
    flag_presentation,
    flag_series_from_generators,
    generator_degrees,
    group_presentation,
    homotopy_ranks,
    invariant_quadratics,
)
from kacmoody.polynomial import RationalFunction
from kacmoody.powerseries import (
    CharSeq,
    Series,
    char_sequence,
    char_sequence_log,
    expand,
    mobius,
    rebuild,
    witt_dim,
)
from kacmoody.weylgrowth import (
    FiniteTypeLabel,
    affine_flag_poincare,
    degrees,
    flag_poincare,
    format_decomposition,
    order_decomposition,
    recognize_finite,
    weyl_growth_bfs,
    weyl_growth_rational,
)

__version__ = "0.1.0"

__all__ = [
    "CartanMatrix",
    "CharSeq",
    "FiniteTypeLabel",
    "GeneratorDegrees",
    "KMType",
    "RationalFunction",
    "RingPresentation",
    "Series",
    "Symmetrization",
    "affine_flag_poincare",
    "build_named",
    "char_sequence",
    "char_sequence_log",
    "classify",
    "components",
    "coxeter_matrix",
    "degrees",
    "epsilon",
    "expand",
    "exponent_sequence",
    "finite_group_cohomology",
    "flag_poincare",
    "flag_presentation",
    "flag_series_from_generators",
    "format_decomposition",
    "generator_degrees",
    "group_presentation",
    "homotopy_ranks",
    "invariant_quadratics",
    "is_symmetrizable",
    "mobius",
    "order_decomposition",
    "rebuild",
    "recognize_finite",
    "symmetrize",
    "validate",
    "weyl_growth_bfs",
    "weyl_growth_rational",
    "witt_dim",
]
