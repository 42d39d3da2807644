"""
Rational cohomology from the Poincare series
============================================

For an indecomposable indefinite Cartan matrix the rational cohomology of
the Kac-Moody group is free on generators whose degrees are recovered from
the flag manifold series alone.  The rank-3 matrix with every off-diagonal
entry equal to -3 is the running example.
"""

from kacmoody import (
    build_named,
    epsilon,
    flag_poincare,
    flag_presentation,
    generator_degrees,
    group_presentation,
    homotopy_ranks,
    invariant_quadratics,
    validate,
    witt_dim,
)
from kacmoody.cohomology import flag_series_from_generators, generators_from_group_series

A = build_named("complete", 3, a=3)
pa = flag_poincare(A).P_A
print("P_A(q) =", pa)

# symmetrizable, so there is one invariant quadratic form
print("epsilon =", epsilon(A), " invariant forms:", invariant_quadratics(A).basis)

g = generator_degrees(A, 10)
print({k: v for k, v in g.i.items() if v})
print([witt_dim(2, k) for k in range(2, 11)])  # the even-degree counts

G = group_presentation(A, 10)
F = flag_presentation(A, 10)
print("H*(G):", G.describe())
print("H*(F):", F.describe())

# going around the loop: group series -> generators -> flag series
back = generators_from_group_series(G.poincare_series(), A.n, epsilon(A))
print(flag_series_from_generators(back, 20) == F.poincare_series())

ranks = homotopy_ranks(A, 6)
print("pi_*(G):", {k: v for k, v in ranks.group.items() if v})

# without symmetrizability the degree 3 generator is gone
B = validate([[2, -1, -1], [-2, 2, -1], [-1, -1, 2]])
print("epsilon =", epsilon(B), group_presentation(B, 6).describe())
