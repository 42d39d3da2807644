import math

import pytest

from battery import AFFINE, BATTERY, FINITE, INDEFINITE, THREE_CYCLE
from kacmoody import polynomial as P
from kacmoody.cartan import KMType, build_named, classify, coxeter_matrix, validate
from kacmoody.errors import MemoryBudgetExceeded, NonCanonicalDecomposition, RankCapExceeded
from kacmoody.polynomial import RationalFunction
from kacmoody.powerseries import expand
from kacmoody.weylgrowth import (
    Factor,
    FiniteTypeLabel as L,
    affine_flag_poincare,
    degrees,
    finite_growth_poly,
    flag_poincare,
    format_decomposition,
    order_decomposition,
    recognize_finite,
    weyl_growth_bfs,
    weyl_growth_rational,
)


def RF(num, den=(1,)):
    return RationalFunction.from_polys(num, den)


def q2(k):
    """1 - q^(2k)"""
    return (1,) + (0,) * (2 * k - 1) + (-1,)


# -- recognition -----------------------------------------------------------------

def test_recognize_simple():
    m = coxeter_matrix(build_named("A", 2))
    assert recognize_finite(m, [0, 1]) == [L("A", 2)]
    assert recognize_finite(m, [1]) == [L("A", 1)]
    assert recognize_finite(m, []) == []
    assert recognize_finite(coxeter_matrix(validate([[2, -2], [-2, 2]])), [0, 1]) is None


@pytest.mark.parametrize("family, rank, label", [
    ("A", 5, L("A", 5)), ("B", 4, L("B", 4)), ("C", 4, L("B", 4)), ("B", 2, L("B", 2)),
    ("D", 4, L("D", 4)), ("D", 6, L("D", 6)), ("E", 6, L("E", 6)), ("E", 7, L("E", 7)),
    ("E", 8, L("E", 8)), ("F", 4, L("F", 4)), ("G", 2, L("G", 2))])
def test_recognize_templates(family, rank, label):
    A = build_named(family, rank)
    assert recognize_finite(coxeter_matrix(A), range(A.n)) == [label]


def test_recognize_permuted_and_disconnected():
    A = build_named("E", 6).permuted([3, 5, 0, 1, 4, 2])
    assert recognize_finite(coxeter_matrix(A), range(6)) == [L("E", 6)]
    m = coxeter_matrix(build_named("A", 4))
    assert recognize_finite(m, [0, 2]) == [L("A", 1), L("A", 1)]
    assert recognize_finite(m, [0, 1, 3]) == [L("A", 1), L("A", 2)]


@pytest.mark.parametrize("name", sorted(AFFINE) + sorted(INDEFINITE))
def test_infinite_types_not_recognized(name):
    A = BATTERY[name]
    assert recognize_finite(coxeter_matrix(A), range(A.n)) is None


# -- degrees ----------------------------------------------------------------------

def test_degree_tables():
    assert degrees(L("A", 2)) == [2, 3]
    assert degrees(L("G", 2)) == [2, 6]
    assert degrees(L("B", 2)) == [2, 4]
    assert degrees(L("D", 4)) == [2, 4, 4, 6]
    assert degrees(L("E", 8)) == [2, 8, 12, 14, 18, 20, 24, 30]


@pytest.mark.parametrize("family, rank", [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2),
                                          ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4),
                                          ("B", 4), ("D", 5)])
def test_degrees_against_bfs(family, rank):
    A = build_named(family, rank)
    (label,) = recognize_finite(coxeter_matrix(A), range(A.n))
    ds = degrees(label)
    assert len(ds) == rank and min(ds) >= 2
    top = sum(d - 1 for d in ds)  # length of the longest element
    counts = weyl_growth_bfs(A, top + 1)
    assert counts[-1] == 0 and counts[top] == 1
    assert sum(counts) == math.prod(ds)
    assert tuple(counts[: top + 1]) == finite_growth_poly([label])


def test_finite_growth_poly():
    assert finite_growth_poly([L("A", 1)]) == (1, 1)
    assert finite_growth_poly([L("A", 2)]) == P.mul((1, 1), (1, 1, 1))
    assert finite_growth_poly([]) == (1,)


# -- closed form -------------------------------------------------------------------

def test_growth_examples():
    assert weyl_growth_rational(validate([[2, -3], [-3, 2]])) == RF((1, 1), (1, -1))
    assert weyl_growth_rational(build_named("A", 2)) == RF(P.mul((1, 1), (1, 1, 1)))
    assert weyl_growth_rational(validate([[2, -2], [-2, 2]])) == RF((1, 1), (1, -1))


def test_flag_examples():
    for n in range(2, 6):
        A = build_named("complete", n, a=2)
        assert flag_poincare(A).P_A == RF((1, 0, 1), (1, 0, -(n - 1)))
    assert flag_poincare(build_named("A", 2)).P_A == RF(P.mul((1, 0, 1), (1, 0, 1, 0, 1)))
    assert flag_poincare(build_named("affine", 1, base="A")).P_A == RF((1, 0, 1), (1, 0, -1))


def test_rank_cap():
    with pytest.raises(RankCapExceeded):
        weyl_growth_rational(build_named("A", 6), cap=5)


# -- BFS oracle --------------------------------------------------------------------

def test_bfs_examples():
    assert weyl_growth_bfs(build_named("A", 2), 3) == [1, 2, 2, 1]
    assert weyl_growth_bfs(validate([[2, -3], [-3, 2]]), 4) == [1, 2, 2, 2, 2]
    assert weyl_growth_bfs(build_named("complete", 3, a=2), 3) == [1, 3, 6, 12]


def test_bfs_state_cap():
    with pytest.raises(MemoryBudgetExceeded):
        weyl_growth_bfs(build_named("complete", 3, a=2), 20, state_cap=1000)


def test_bfs_big_integer_path():
    # coordinates overflow int64 quickly with entries of this size
    A = validate([[2, -1, -40], [-1, 2, -1], [-40, -1, 2]])
    assert weyl_growth_bfs(A, 14) == list(expand(weyl_growth_rational(A), 14).coeffs)


@pytest.mark.parametrize("name", sorted(BATTERY))
def test_oracle_agreement(name):
    A = BATTERY[name]
    lmax = 14
    assert list(expand(weyl_growth_rational(A), lmax).coeffs) == weyl_growth_bfs(A, lmax)


# -- growth-data invariants ---------------------------------------------------------

@pytest.mark.parametrize("name", sorted(BATTERY))
def test_flag_series_shape(name):
    A = BATTERY[name]
    P_A = flag_poincare(A).P_A
    s = expand(P_A, 40)
    assert s[0] == 1
    assert all(s[k] == 0 for k in range(1, 41, 2))
    even = s.coeffs[::2]
    nonzero = [c for c in even if c]
    assert all(c >= 1 for c in nonzero)
    if classify(A) is not KMType.FINITE:
        assert len(weyl_growth_rational(A).den) > 1


@pytest.mark.parametrize("name", sorted(FINITE))
def test_finite_flag_polynomial(name):
    A = FINITE[name]
    P_A = flag_poincare(A).P_A
    assert P_A.is_polynomial()
    n_pos = sum(d - 1 for lab in recognize_finite(coxeter_matrix(A), range(A.n)) for d in degrees(lab))
    assert P.degree(P_A.num) == 2 * n_pos
    assert P_A.num == P_A.num[::-1]
    labels = recognize_finite(coxeter_matrix(A), range(A.n))
    assert P_A(1) == math.prod(d for lab in labels for d in degrees(lab))


def test_free_coxeter_counts():
    for n in (3, 4):
        A = build_named("complete", n, a=3)
        s = expand(flag_poincare(A).P_A, 24)
        for k in range(1, 13):
            assert s[2 * k] == n * (n - 1) ** (k - 1)


def test_component_multiplicativity():
    A2, G2 = build_named("A", 2), validate([[2, -3], [-3, 2]])
    block = validate([[2, -1, 0, 0], [-1, 2, 0, 0], [0, 0, 2, -3], [0, 0, -3, 2]])
    assert flag_poincare(block).P_A == flag_poincare(A2).P_A * flag_poincare(G2).P_A


# -- affine formula and decompositions -----------------------------------------------

def test_affine_examples():
    assert affine_flag_poincare(L("A", 1)) == RF((1, 0, 1), (1, 0, -1))
    expect = RF(P.mul((1, 0, 1), (1, 0, 1, 0, 1)), P.mul(q2(1), q2(2)))
    assert affine_flag_poincare(L("A", 2)) == expect
    g2 = RF(P.mul(P.substitute_power((1,) * 2, 2), P.substitute_power((1,) * 6, 2)),
            P.mul(q2(1), q2(5)))
    assert affine_flag_poincare(L("G", 2)) == g2


@pytest.mark.parametrize("family, rank", [("A", 1), ("A", 2), ("A", 3), ("B", 3), ("C", 3),
                                          ("D", 4), ("G", 2), ("F", 4)])
def test_affine_formula_matches_engine(family, rank):
    A = build_named("affine", rank, base=family)
    label = recognize_finite(coxeter_matrix(build_named(family, rank)), range(rank))[0]
    assert affine_flag_poincare(label) == flag_poincare(A).P_A


def test_affine_g2_against_bfs():
    A = build_named("affine", 2, base="G")
    s = expand(affine_flag_poincare(L("G", 2)), 40)
    assert list(s.coeffs[::2]) == weyl_growth_bfs(A, 20)


def test_order_decomposition():
    assert order_decomposition(build_named("A", 2)) == [Factor(2), Factor(3)]
    dec = order_decomposition(build_named("affine", 1, base="A"))
    assert dec == [Factor(2), Factor(1, True)]
    assert format_decomposition(dec) == "[2][∞]_1"
    with pytest.raises(NonCanonicalDecomposition):
        order_decomposition(validate([[2, -3], [-3, 2]]))


@pytest.mark.parametrize("name", sorted(FINITE) + sorted(AFFINE))
def test_decomposition_product_equals_series(name):
    A = BATTERY[name]
    prod = RationalFunction.one()
    for f in order_decomposition(A):
        prod = prod * f.rational()
    assert prod == flag_poincare(A).P_A


@pytest.mark.parametrize("A", [build_named("affine", 2, base="A"), build_named("A", 1),
                               build_named("complete", 4, a=2), THREE_CYCLE,
                               validate([[2, -40, -40], [-40, 2, -40], [-40, -40, 2]])])
def test_bfs_symmetry_reduction_agrees(A):
    assert weyl_growth_bfs(A, 12) == weyl_growth_bfs(A, 12, use_symmetry=False)


def test_bfs_symmetric_rank6():
    A = build_named("complete", 6, a=2)
    assert weyl_growth_bfs(A, 12) == [1] + [6 * 5 ** (k - 1) for k in range(1, 13)]
