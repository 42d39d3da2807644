"""
Growth of Weyl groups
=====================

The length generating function of a Weyl group is rational.  It is assembled
from the finite parabolic subgroups and checked here against a direct
breadth-first walk over the group.
"""

from kacmoody import (
    build_named,
    classify,
    expand,
    flag_poincare,
    format_decomposition,
    order_decomposition,
    weyl_growth_bfs,
    weyl_growth_rational,
)

# finite type: the Weyl group of A3 is the symmetric group S4
A3 = build_named("A", 3)
print(classify(A3), flag_poincare(A3).P_A, "order", flag_poincare(A3).P_A(1))

# affine A1: infinite dihedral, two elements of each positive length
A1t = build_named("affine", 1, base="A")
print(classify(A1t), weyl_growth_rational(A1t))
print("decomposition", format_decomposition(order_decomposition(A1t)))

# every pair of generators generates an infinite group here,
# so the group is free Coxeter and the counts grow like 4 * 3^(k-1)
C = build_named("complete", 4, a=3)
W = weyl_growth_rational(C)
print(classify(C), W)

closed = list(expand(W, 12).coeffs)
walked = weyl_growth_bfs(C, 12)
for k, (a, b) in enumerate(zip(closed, walked)):
    print(f"{k:>3} {a:>10} {b:>10}")
print("agree:", closed == walked)
