"""Growth series of Weyl groups and Poincare series of flag manifolds.

The growth series ``W(q) = sum_w q^l(w)`` of an infinite Coxeter group is
obtained from its finite parabolic subgroups through

    sum_{J finite} (-1)^|J| / W_J(q) = 1 / W(1/q),

and the flag manifold series is ``P_A(q) = W(q^2)``.  The breadth-first
enumeration in :func:`weyl_growth_bfs` is an independent check of the
closed form.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence

import numpy as np

from kacmoody import polynomial as P
from kacmoody.cartan import (
    INF,
    CartanMatrix,
    KMType,
    classify,
    components,
    coxeter_matrix,
)
from kacmoody.errors import MemoryBudgetExceeded, NonCanonicalDecomposition, RankCapExceeded
from kacmoody.polynomial import RationalFunction

DEFAULT_SUBSET_CAP = 20
DEFAULT_STATE_CAP = 10 ** 7


@dataclass(frozen=True, order=True)
class FiniteTypeLabel:
    family: str  # one of A, B, D, E, F, G
    rank: int

    def __str__(self):
        return f"{self.family}{self.rank}"


_DEGREES = {
    ("E", 6): (2, 5, 6, 8, 9, 12),
    ("E", 7): (2, 6, 8, 10, 12, 14, 18),
    ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
    ("F", 4): (2, 6, 8, 12),
    ("G", 2): (2, 6),
}


def degrees(label: FiniteTypeLabel) -> List[int]:
    """Degrees of the basic invariants of the finite Weyl group, sorted."""
    f, n = label.family, label.rank
    if f == "A":
        return list(range(2, n + 2))
    if f == "B":
        return [2 * k for k in range(1, n + 1)]
    if f == "D":
        return sorted([2 * k for k in range(1, n)] + [n])
    try:
        return list(_DEGREES[(f, n)])
    except KeyError:
        raise ValueError(f"no finite Weyl group of type {label}") from None


# -- Coxeter diagram recognition -------------------------------------------------

def _diagram_components(m, J: Sequence[int]) -> List[List[int]]:
    J = sorted(J)
    left = set(J)
    out = []
    while left:
        start = min(left)
        comp, stack = {start}, [start]
        while stack:
            i = stack.pop()
            for j in J:
                if j not in comp and m[i][j] != 2:
                    comp.add(j)
                    stack.append(j)
        left -= comp
        out.append(sorted(comp))
    return out


def _match_component(m, comp: List[int]) -> Optional[FiniteTypeLabel]:
    k = len(comp)
    if k == 1:
        return FiniteTypeLabel("A", 1)
    edges = [(i, j, m[i][j]) for a, i in enumerate(comp) for j in comp[a + 1:] if m[i][j] != 2]
    if len(edges) != k - 1 or any(w == INF for _, _, w in edges):
        return None  # cycle, or an infinite bond
    labels = [w for _, _, w in edges]
    if 6 in labels:
        return FiniteTypeLabel("G", 2) if k == 2 else None
    adj = {i: [] for i in comp}
    for i, j, _ in edges:
        adj[i].append(j)
        adj[j].append(i)
    deg = {i: len(v) for i, v in adj.items()}
    branch = [i for i in comp if deg[i] >= 3]
    fours = [(i, j) for i, j, w in edges if w == 4]
    if len(fours) > 1:
        return None
    if not branch:
        if not fours:
            return FiniteTypeLabel("A", k)
        i, j = fours[0]
        if deg[i] == 1 or deg[j] == 1:
            return FiniteTypeLabel("B", k)
        if k == 4:
            return FiniteTypeLabel("F", 4)
        return None
    if fours or len(branch) > 1 or deg[branch[0]] > 3:
        return None
    c = branch[0]
    arms = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while deg[cur] == 2:
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return FiniteTypeLabel("D", k)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return FiniteTypeLabel("E", k)
    return None


def recognize_finite(m, J: Iterable[int]) -> Optional[List[FiniteTypeLabel]]:
    """Finite-type labels of the parabolic subgroup on ``J``, or ``None`` if it is infinite.

    ``m`` is a Coxeter matrix (see :func:`kacmoody.cartan.coxeter_matrix`).
    The empty subset gives ``[]``.
    """
    labels = []
    for comp in _diagram_components(m, list(J)):
        label = _match_component(m, comp)
        if label is None:
            return None
        labels.append(label)
    return sorted(labels)


def finite_growth_poly(labels: Iterable[FiniteTypeLabel]) -> P.Poly:
    """``prod_labels prod_d (1 - q^d)/(1 - q)`` as an exact polynomial."""
    out = P.ONE
    for label in labels:
        for d in degrees(label):
            out = P.mul(out, (1,) * d)
    return out


# -- closed form --------------------------------------------------------------

def _finite_subsets(m, comp: Sequence[int]) -> Dict[FrozenSet[int], List[FiniteTypeLabel]]:
    # finiteness is inherited by subsets, so grow finite sets by larger indices only
    comp = sorted(comp)
    found = {frozenset(): []}
    frontier = [()]
    while frontier:
        nxt = []
        for J in frontier:
            start = comp.index(J[-1]) + 1 if J else 0
            for v in comp[start:]:
                K = J + (v,)
                labels = recognize_finite(m, K)
                if labels is not None:
                    found[frozenset(K)] = labels
                    nxt.append(K)
        frontier = nxt
    return found


def _component_growth(m, comp: Sequence[int]) -> RationalFunction:
    full = recognize_finite(m, comp)
    if full is not None:
        return RationalFunction.polynomial(finite_growth_poly(full))
    # group the alternating sum by denominator before adding rationals
    by_poly: Dict[P.Poly, int] = {}
    for J, labels in _finite_subsets(m, comp).items():
        poly = finite_growth_poly(labels)
        by_poly[poly] = by_poly.get(poly, 0) + (-1) ** len(J)
    total = RationalFunction.from_polys(P.ZERO)
    for poly, coeff in sorted(by_poly.items()):
        if coeff:
            total = total + RationalFunction.from_polys((coeff,), poly)
    return RationalFunction.one() / total.invert_variable()


def weyl_growth_rational(A: CartanMatrix, cap: int = DEFAULT_SUBSET_CAP) -> RationalFunction:
    """Growth series ``sum_w q^l(w)`` of ``W(A)`` as a reduced rational function.

    Decomposable matrices give the product over components.
    """
    if A.n > cap:
        raise RankCapExceeded(A.n, cap)
    m = coxeter_matrix(A)
    out = RationalFunction.one()
    for comp in components(A):
        out = out * _component_growth(m, sorted(comp))
    return out


@dataclass(frozen=True)
class GrowthData:
    W_of_q: RationalFunction
    P_A: RationalFunction


def flag_poincare(A: CartanMatrix, cap: int = DEFAULT_SUBSET_CAP) -> GrowthData:
    W = weyl_growth_rational(A, cap)
    return GrowthData(W, W.substitute_q_squared())


# -- brute-force oracle ---------------------------------------------------------

def _fully_symmetric(A: CartanMatrix) -> bool:
    """True when every permutation of the nodes is a diagram automorphism."""
    off = {A.a[i][j] for i in range(A.n) for j in range(A.n) if i != j}
    return A.n > 1 and len(off) == 1


def _orbit_sizes(rows: np.ndarray) -> np.ndarray:
    """``n! / prod(mult!)`` for each sorted row."""
    n = rows.shape[1]
    size = np.full(len(rows), math.factorial(n), dtype=object)
    run = np.ones(len(rows), dtype=np.int64)
    for c in range(1, n):
        same = rows[:, c] == rows[:, c - 1]
        run = np.where(same, run + 1, 1)
        size = size // np.where(same, run, 1).astype(object)
    return size


def weyl_growth_bfs(A: CartanMatrix, lmax: int, state_cap: int = DEFAULT_STATE_CAP,
                    use_symmetry: bool = True) -> List[int]:
    """Number of elements of each length ``0..lmax`` by walking the regular orbit.

    A state is ``w(rho)`` in fundamental-weight coordinates, starting from
    ``rho = (1, ..., 1)``.  Applying ``s_j`` raises the length exactly when
    coordinate ``j`` is positive, so layer ``L+1`` is generated from layer
    ``L`` alone and only needs de-duplication within itself.

    When every permutation of the nodes preserves ``A`` the layers are
    stored as sorted representatives, each weighted by its orbit size.
    ``state_cap`` bounds the number of stored states.

    Layers run as int64 arrays while the coordinates provably fit, and as
    tuples of Python ints afterwards.
    """
    n = A.n
    sym = use_symmetry and _fully_symmetric(A)
    amax = max(abs(x) for row in A.a for x in row)
    cols = np.array(A.a, dtype=np.int64).T  # cols[j] = A[:, j]
    layer = np.ones((1, n), dtype=np.int64)
    big = None
    counts = [1]
    stored = 1
    for _ in range(lmax):
        if big is None and len(layer) and int(np.abs(layer).max()) * (amax + 1) >= _INT64_SAFE:
            big = {tuple(int(v) for v in row) for row in layer}
        if big is None:
            parts = []
            for j in range(n):
                src = layer[layer[:, j] > 0]
                if len(src):
                    parts.append(src - src[:, j:j + 1] * cols[j])
            layer = np.concatenate(parts) if parts else layer[:0]
            if sym:
                layer = np.sort(layer, axis=1)
            layer = _unique_rows(layer)
            size = int(_orbit_sizes(layer).sum()) if sym else len(layer)
            stored += len(layer)
        else:
            big = _bfs_step(big, A, sym)
            size = sum(_tuple_orbit(x) for x in big) if sym else len(big)
            stored += len(big)
        if stored > state_cap:
            raise MemoryBudgetExceeded(f"more than {state_cap} states visited")
        counts.append(size)
    return counts


_INT64_SAFE = 2 ** 62


def _unique_rows(arr: np.ndarray) -> np.ndarray:
    if len(arr) == 0:
        return arr
    arr = np.ascontiguousarray(arr)
    view = arr.view(np.dtype((np.void, arr.dtype.itemsize * arr.shape[1])))
    _, idx = np.unique(view.ravel(), return_index=True)
    return arr[idx]


def _tuple_orbit(x: tuple) -> int:
    size = math.factorial(len(x))
    for mult in Counter(x).values():
        size //= math.factorial(mult)
    return size


def _bfs_step(layer: set, A: CartanMatrix, sym: bool = False) -> set:
    n = A.n
    cols = [tuple(A.a[i][j] for i in range(n)) for j in range(n)]
    nxt = set()
    for x in layer:
        for j in range(n):
            xj = x[j]
            if xj > 0:
                y = [xi - xj * c for xi, c in zip(x, cols[j])]
                nxt.add(tuple(sorted(y)) if sym else tuple(y))
    return nxt


# -- affine formula and order decompositions -------------------------------------

def _bracket(k: int) -> RationalFunction:
    # [k] = (1 - q^{2k}) / (1 - q^2)
    return RationalFunction.polynomial(P.substitute_power((1,) * k, 2))


def _inf_bracket(k: int) -> RationalFunction:
    # [inf]_k = 1 / (1 - q^{2k})
    return RationalFunction.from_polys(P.ONE, (1,) + (0,) * (2 * k - 1) + (-1,))


def affine_flag_poincare(label: FiniteTypeLabel) -> RationalFunction:
    """``prod_k [d_k] [inf]_{d_k - 1}`` for the untwisted affinization of ``label``."""
    out = RationalFunction.one()
    for d in degrees(label):
        out = out * _bracket(d) * _inf_bracket(d - 1)
    return out


@dataclass(frozen=True)
class Factor:
    """``[k]`` when ``infinite`` is false, else ``[inf]_k``."""

    k: int
    infinite: bool = False

    def rational(self) -> RationalFunction:
        return _inf_bracket(self.k) if self.infinite else _bracket(self.k)

    def __str__(self):
        return f"[∞]_{self.k}" if self.infinite else f"[{self.k}]"


def order_decomposition(A: CartanMatrix) -> List[Factor]:
    """Factor ``P_A`` into ``[d]`` and ``[inf]_k`` tags for finite and affine types.

    Affine components are matched against ``affine_flag_poincare`` of the
    finite types obtained by deleting one node.
    """
    m = coxeter_matrix(A)
    out: List[Factor] = []
    for comp in components(A):
        comp = sorted(comp)
        kind = classify(A, comp)
        if kind is KMType.FINITE:
            labels = recognize_finite(m, comp)
            out.extend(Factor(d) for label in labels for d in degrees(label))
        elif kind is KMType.AFFINE:
            target = _component_growth(m, comp).substitute_q_squared()
            for v in comp:
                labels = recognize_finite(m, [u for u in comp if u != v])
                if labels is None or len(labels) != 1:
                    continue
                if affine_flag_poincare(labels[0]) == target:
                    ds = degrees(labels[0])
                    out.extend(Factor(d) for d in ds)
                    out.extend(Factor(d - 1, True) for d in ds)
                    break
            else:
                raise NonCanonicalDecomposition(
                    f"no finite type on {comp} reproduces the affine series")
        else:
            raise NonCanonicalDecomposition(
                "indefinite components have no canonical order decomposition")
    return out


def format_decomposition(factors: Iterable[Factor]) -> str:
    return "".join(str(f) for f in factors)
