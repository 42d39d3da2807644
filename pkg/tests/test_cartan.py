import itertools
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from battery import AFFINE, BATTERY, FINITE, INDEFINITE, THREE_CYCLE
from kacmoody.cartan import (
    KMType,
    build_named,
    classify,
    components,
    coxeter_matrix,
    determinant,
    format_matrix_text,
    highest_root,
    is_symmetrizable,
    parse_matrix_text,
    positive_roots,
    symmetrize,
    validate,
)
from kacmoody.errors import (
    DiagonalNotTwo,
    NotSquare,
    NotSymmetrizable,
    PositiveOffDiagonal,
    RankCapExceeded,
    RankOutOfRange,
    UnknownFamily,
    ZeroPairingViolated,
)


def test_validate_accepts_a2():
    A = validate([[2, -1], [-1, 2]])
    assert A.n == 2 and A.a == ((2, -1), (-1, 2))


def test_validate_positive_off_diagonal():
    with pytest.raises(PositiveOffDiagonal) as exc:
        validate([[2, 1], [-1, 2]])
    assert (exc.value.i, exc.value.j) == (0, 1)


def test_validate_zero_pairing():
    with pytest.raises(ZeroPairingViolated) as exc:
        validate([[2, 0], [-1, 2]])
    assert (exc.value.i, exc.value.j) == (0, 1)


def test_validate_diagonal_and_shape():
    with pytest.raises(DiagonalNotTwo) as exc:
        validate([[2, -1], [-1, 3]])
    assert exc.value.i == 1
    with pytest.raises(NotSquare):
        validate([[2, -1]])
    with pytest.raises(NotSquare):
        validate([])


def test_first_error_in_row_major_order():
    # (0,1) is positive and comes before the bad diagonal at (1,1)
    with pytest.raises(PositiveOffDiagonal):
        validate([[2, 1, 0], [-1, 5, 0], [0, 0, 2]])


def test_components():
    assert components(validate([[2, -1], [-1, 2]])) == [frozenset({0, 1})]
    assert components(validate([[2, 0], [0, 2]])) == [frozenset({0}), frozenset({1})]
    path = validate([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert components(path) == [frozenset({0, 1, 2})]


@pytest.mark.parametrize("a12, a21, m", [(-1, -1, 3), (-2, -2, math.inf), (-3, -1, 6),
                                         (0, 0, 2), (-2, -1, 4), (-1, -4, math.inf)])
def test_coxeter_table(a12, a21, m):
    M = coxeter_matrix(validate([[2, a12], [a21, 2]]))
    assert M[0][1] == M[1][0] == m
    assert M[0][0] == 1


# -- symmetrization ------------------------------------------------------------

def _brute_symmetrizable(A, bound=6):
    # search positive diagonal d with entries up to ``bound``; scale-invariant
    n = A.n
    for d in itertools.product(range(1, bound + 1), repeat=n):
        if all(A.a[i][j] * d[j] == A.a[j][i] * d[i] for i in range(n) for j in range(n)):
            return True
    return False


def test_symmetric_gives_identity():
    A = build_named("complete", 3, a=3)
    s = symmetrize(A)
    assert s.d == (1, 1, 1)
    assert s.b == tuple(tuple(Fraction(x) for x in row) for row in A.a)


def test_rank2_example():
    s = symmetrize(validate([[2, -2], [-1, 2]]))
    assert s.d == (2, 1)
    assert s.b == ((1, -1), (-1, 2))


def test_three_cycle_not_symmetrizable():
    with pytest.raises(NotSymmetrizable) as exc:
        symmetrize(THREE_CYCLE)
    w = exc.value
    assert sorted(w.cycle) == [0, 1, 2]
    assert {w.forward, w.backward} == {-1, -2}
    assert not _brute_symmetrizable(THREE_CYCLE)


@pytest.mark.parametrize("name", sorted(BATTERY))
def test_symmetrize_agrees_with_brute_force(name):
    A = BATTERY[name]
    assert is_symmetrizable(A) == _brute_symmetrizable(A)


@pytest.mark.parametrize("name", sorted(BATTERY))
def test_symmetrization_reconstructs(name):
    A = BATTERY[name]
    try:
        s = symmetrize(A)
    except NotSymmetrizable as exc:
        assert exc.forward != exc.backward
        return
    n = A.n
    assert all(d > 0 for d in s.d)
    for i in range(n):
        for j in range(n):
            assert s.d[i] * s.b[i][j] == A.a[i][j]
            assert s.b[i][j] == s.b[j][i]


gcm_entries = st.integers(0, 4)


@st.composite
def random_gcm(draw, n=3):
    a = [[2] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = draw(gcm_entries)
            y = draw(st.integers(1, 4)) if x else 0
            a[i][j], a[j][i] = -x, -y
    return validate(a)


@settings(max_examples=150, deadline=None)
@given(random_gcm())
def test_symmetrizable_random(A):
    assert is_symmetrizable(A) == _brute_symmetrizable(A, bound=16)


# -- classification -------------------------------------------------------------------

def test_classify_examples():
    assert classify(validate([[2, -1], [-1, 2]])) is KMType.FINITE
    assert classify(validate([[2, -2], [-2, 2]])) is KMType.AFFINE
    assert classify(validate([[2, -3], [-3, 2]])) is KMType.INDEFINITE


def test_rank2_trichotomy_exhaustive():
    for a in range(0, 13):
        for b in range(0, 13):
            if (a == 0) != (b == 0) or a * b > 12:
                continue
            kind = classify(validate([[2, -a], [-b, 2]]))
            p = a * b
            expect = KMType.FINITE if p <= 3 else KMType.AFFINE if p == 4 else KMType.INDEFINITE
            assert kind is expect, (a, b)


@pytest.mark.parametrize("name", sorted(FINITE))
def test_finite_builders(name):
    assert classify(FINITE[name]) is KMType.FINITE


@pytest.mark.parametrize("name", sorted(AFFINE))
def test_affine_builders(name):
    A = AFFINE[name]
    assert classify(A) is KMType.AFFINE
    assert determinant(A.a) == 0


@pytest.mark.parametrize("name", sorted(INDEFINITE))
def test_indefinite(name):
    assert classify(INDEFINITE[name]) is KMType.INDEFINITE


@settings(max_examples=60, deadline=None)
@given(random_gcm(), st.permutations([0, 1, 2]))
def test_classify_permutation_invariant(A, perm):
    assert classify(A) is classify(A.permuted(perm))


def test_classify_component_and_cap():
    A = validate([[2, -1, 0], [-1, 2, 0], [0, 0, 2]])
    assert classify(A, [0, 1]) is KMType.FINITE
    with pytest.raises(RankCapExceeded):
        classify(build_named("A", 5), cap=4)


def test_determinant_matches_fraction_elimination():
    m = [[2, -1, -3, 0], [-2, 2, -1, -1], [-1, -1, 2, -4], [0, -2, -1, 2]]
    # Leibniz expansion as an independent check
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inv
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    assert determinant(m) == total


# -- builders -------------------------------------------------------------------------

def test_build_named_examples():
    assert build_named("A", 2).a == ((2, -1), (-1, 2))
    assert build_named("rank2", a=3, b=3).a == ((2, -3), (-3, 2))
    assert build_named("affine", 1, base="A").a == ((2, -2), (-2, 2))


@pytest.mark.parametrize("family, rank, count", [
    ("A", 3, 6), ("B", 3, 9), ("C", 3, 9), ("D", 4, 12), ("G", 2, 6), ("F", 4, 24),
    ("E", 6, 36), ("E", 7, 63), ("E", 8, 120)])
def test_positive_root_counts(family, rank, count):
    assert len(positive_roots(build_named(family, rank))) == count


def test_highest_roots():
    assert highest_root(build_named("A", 1)) == (1,)
    assert sum(highest_root(build_named("E", 8))) == 29  # Coxeter number 30 minus 1
    assert sum(highest_root(build_named("G", 2))) == 5


@pytest.mark.parametrize("family, rank", [("A", 2), ("A", 4), ("B", 3), ("C", 3), ("D", 4),
                                          ("D", 5), ("G", 2), ("F", 4), ("E", 6)])
def test_affinization_is_affine(family, rank):
    A = build_named("affine", rank, base=family)
    assert A.n == rank + 1
    assert classify(A) is KMType.AFFINE


def test_builder_errors():
    with pytest.raises(UnknownFamily):
        build_named("Z", 3)
    with pytest.raises(RankOutOfRange):
        build_named("E", 5)
    with pytest.raises(RankOutOfRange):
        build_named("D", 3)


# -- text formats ---------------------------------------------------------------------

def test_parse_text_and_json():
    text = "# a comment\n2\n2 -3\n-3 2\n"
    A = parse_matrix_text(text)
    assert A.a == ((2, -3), (-3, 2))
    assert parse_matrix_text(json.dumps({"n": 2, "a": [[2, -3], [-3, 2]]})) == A
    assert parse_matrix_text(format_matrix_text(A)) == A


def test_parse_errors():
    with pytest.raises(NotSquare):
        parse_matrix_text("3\n2 -1\n-1 2\n")
    with pytest.raises(NotSquare):
        parse_matrix_text("2\n2 x\n-1 2\n")
