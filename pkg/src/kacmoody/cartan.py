"""Generalized Cartan matrices: validation, structure and classification.

Indices are 0-based throughout.  The convention is ``a[i][j] = <alpha_j,
alpha_i^vee>``, so the simple reflection ``s_j`` moves weight coordinates by
``x_i -> x_i - x_j * a[i][j]``.
"""

from __future__ import annotations

import enum
import json
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import FrozenSet, List, Sequence, Tuple

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

INF = math.inf
DEFAULT_MINOR_CAP = 12


@dataclass(frozen=True)
class CartanMatrix:
    a: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.a)

    def __getitem__(self, ij):
        i, j = ij
        return self.a[i][j]

    def submatrix(self, indices: Sequence[int]) -> "CartanMatrix":
        idx = sorted(indices)
        return CartanMatrix(tuple(tuple(self.a[i][j] for j in idx) for i in idx))

    def permuted(self, perm: Sequence[int]) -> "CartanMatrix":
        """Simultaneous row/column permutation: new index k is old ``perm[k]``."""
        return CartanMatrix(tuple(tuple(self.a[i][j] for j in perm) for i in perm))

    def is_symmetric(self) -> bool:
        return all(self.a[i][j] == self.a[j][i]
                   for i in range(self.n) for j in range(i))

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.a]

    def __str__(self) -> str:
        width = max(len(str(x)) for row in self.a for x in row)
        return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in self.a)


def validate(raw) -> CartanMatrix:
    """Check the three GCM axioms; errors name the first bad entry in row-major order."""
    rows = [list(r) for r in raw]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NotSquare(f"expected a non-empty square matrix, got row lengths "
                        f"{[len(r) for r in rows]}")
    for i in range(n):
        for j in range(n):
            x = rows[i][j]
            if isinstance(x, bool) or int(x) != x:
                raise NotSquare(f"a[{i}][{j}] = {x!r} is not an integer")
            x = int(x)
            if i == j:
                if x != 2:
                    raise DiagonalNotTwo(i, x)
            elif x > 0:
                raise PositiveOffDiagonal(i, j, x)
            elif (x == 0) != (rows[j][i] == 0):
                raise ZeroPairingViolated(i, j, x, rows[j][i])
    return CartanMatrix(tuple(tuple(int(x) for x in r) for r in rows))


# -- matrix text formats ----------------------------------------------------

def parse_matrix_text(text: str) -> CartanMatrix:
    """Read ``n`` then ``n`` rows of integers, or a JSON ``{"n": .., "a": ..}`` object."""
    stripped = text.strip()
    if stripped.startswith("{"):
        obj = json.loads(stripped)
        a = obj["a"]
        if "n" in obj and obj["n"] != len(a):
            raise NotSquare(f"declared n = {obj['n']} but {len(a)} rows given")
        return validate(a)
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise NotSquare("empty matrix file")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise NotSquare(f"unparseable matrix text: {exc}") from None
    if len(rows) != n:
        raise NotSquare(f"declared n = {n} but {len(rows)} rows given")
    return validate(rows)


def format_matrix_text(A: CartanMatrix) -> str:
    return "\n".join([str(A.n)] + [" ".join(str(x) for x in row) for row in A.a]) + "\n"


# -- structure ----------------------------------------------------------------

def components(A: CartanMatrix) -> List[FrozenSet[int]]:
    """Connected components of the graph with an edge where ``a[i][j] != 0``.

    Components are listed by their smallest index.
    """
    seen = set()
    out = []
    for start in range(A.n):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(A.n):
                if j != i and A.a[i][j] != 0 and j not in comp:
                    comp.add(j)
                    queue.append(j)
        seen |= comp
        out.append(frozenset(comp))
    return out


def is_indecomposable(A: CartanMatrix) -> bool:
    return len(components(A)) == 1


def coxeter_entry(product: int):
    if product >= 4:
        return INF
    return (2, 3, 4, 6)[product]


def coxeter_matrix(A: CartanMatrix) -> Tuple[Tuple, ...]:
    """Braid orders ``m[i][j]``; infinity is ``math.inf``."""
    n = A.n
    return tuple(
        tuple(1 if i == j else coxeter_entry(A.a[i][j] * A.a[j][i]) for j in range(n))
        for i in range(n))


# -- symmetrization -----------------------------------------------------------

@dataclass(frozen=True)
class Symmetrization:
    """``A = diag(d) * b`` with ``b`` symmetric and ``d`` positive."""

    d: Tuple[Fraction, ...]
    b: Tuple[Tuple[Fraction, ...], ...]


def symmetrize(A: CartanMatrix) -> Symmetrization:
    """Find ``D`` and ``B``, or raise :class:`NotSymmetrizable` with a witness cycle.

    ``d`` is propagated along a BFS spanning tree of each component via
    ``d[j] = d[i] * a[j][i] / a[i][j]``.  Each component is then scaled to the
    smallest positive integer vector, so a symmetric matrix gets ``D = 1``.
    """
    n = A.n
    d: List[Fraction | None] = [None] * n
    parent: List[int | None] = [None] * n
    for comp in components(A):
        root = min(comp)
        d[root] = Fraction(1)
        queue = deque([root])
        order = [root]
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j != i and A.a[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * A.a[j][i] / A.a[i][j]
                    parent[j] = i
                    queue.append(j)
                    order.append(j)
        for i in sorted(comp):
            for j in sorted(comp):
                if j > i and A.a[i][j] != 0 and A.a[i][j] * d[j] != A.a[j][i] * d[i]:
                    cycle = _tree_cycle(parent, i, j)
                    fwd, bwd = _cycle_products(A, cycle)
                    raise NotSymmetrizable(cycle, fwd, bwd)
        denom_lcm = reduce(lambda x, y: x * y // math.gcd(x, y),
                           (d[i].denominator for i in comp), 1)
        num_gcd = reduce(math.gcd, ((d[i] * denom_lcm).numerator for i in comp))
        for i in comp:
            d[i] = d[i] * denom_lcm / num_gcd
    b = tuple(tuple(Fraction(A.a[i][j]) / d[i] for j in range(n)) for i in range(n))
    return Symmetrization(tuple(d), b)


def is_symmetrizable(A: CartanMatrix) -> bool:
    try:
        symmetrize(A)
    except NotSymmetrizable:
        return False
    return True


def _path_to_root(parent, i):
    path = [i]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path


def _tree_cycle(parent, i, j) -> List[int]:
    # walk i -> lca -> j in the tree, then close with the non-tree edge j -> i
    pi, pj = _path_to_root(parent, i), _path_to_root(parent, j)
    on_pj = set(pj)
    lca = next(v for v in pi if v in on_pj)
    up = pi[: pi.index(lca) + 1]
    down = pj[: pj.index(lca)][::-1]
    return up + down


def _cycle_products(A: CartanMatrix, cycle: Sequence[int]) -> Tuple[int, int]:
    k = len(cycle)
    fwd = bwd = 1
    for t in range(k):
        u, v = cycle[t], cycle[(t + 1) % k]
        fwd *= A.a[u][v]
        bwd *= A.a[v][u]
    return fwd, bwd


# -- classification -----------------------------------------------------------

class KMType(enum.Enum):
    FINITE = "Finite"
    AFFINE = "Affine"
    INDEFINITE = "Indefinite"

    def __str__(self):
        return self.value


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by Bareiss fraction-free elimination."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def principal_minor(A: CartanMatrix, idx: Sequence[int]) -> int:
    return determinant([[A.a[i][j] for j in idx] for i in idx])


def classify(A: CartanMatrix, component=None, cap: int = DEFAULT_MINOR_CAP) -> KMType:
    """Finite / affine / indefinite by principal minors of the component.

    Finite: every principal minor is positive.  Affine: determinant zero and
    every proper principal minor positive.  ``component`` defaults to all
    indices.
    """
    idx = sorted(range(A.n) if component is None else component)
    k = len(idx)
    if k > cap:
        raise RankCapExceeded(k, cap)
    proper_positive = all(
        principal_minor(A, sub) > 0
        for size in range(1, k)
        for sub in combinations(idx, size))
    if not proper_positive:
        return KMType.INDEFINITE
    det = principal_minor(A, idx)
    if det > 0:
        return KMType.FINITE
    if det == 0:
        return KMType.AFFINE
    return KMType.INDEFINITE


# -- named matrices ------------------------------------------------------------

def _path(n, edges=()):
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    for (i, j), v in edges:
        a[i][j] = v
    return a


def _finite(family: str, rank: int):
    f = family.upper()
    if f == "A":
        if rank < 1:
            raise RankOutOfRange("A_n needs n >= 1")
        return _path(rank)
    if f in ("B", "C"):
        if rank < 2:
            raise RankOutOfRange(f"{f}_n needs n >= 2")
        # B: alpha_n short, so <alpha_{n-1}, alpha_n^vee> = -2
        hi, lo = (rank - 1, rank - 2) if f == "B" else (rank - 2, rank - 1)
        return _path(rank, [((hi, lo), -2)])
    if f == "D":
        if rank < 4:
            raise RankOutOfRange("D_n needs n >= 4")
        a = _path(rank - 1) + [[0] * (rank - 1)]
        for row in a:
            row.append(0)
        a[rank - 1][rank - 1] = 2
        a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1
        return a
    if f == "E":
        if rank not in (6, 7, 8):
            raise RankOutOfRange("E_n needs n in {6, 7, 8}")
        # chain 0-1-...-(n-2), extra node n-1 attached to node 2
        a = _path(rank - 1) + [[0] * (rank - 1)]
        for row in a:
            row.append(0)
        a[rank - 1][rank - 1] = 2
        a[2][rank - 1] = a[rank - 1][2] = -1
        return a
    if f == "F":
        if rank != 4:
            raise RankOutOfRange("F_n needs n = 4")
        return _path(4, [((1, 2), -2)])
    if f == "G":
        if rank != 2:
            raise RankOutOfRange("G_n needs n = 2")
        return _path(2, [((1, 0), -3)])
    raise UnknownFamily(f"unknown finite family {family!r}")


def positive_roots(A: CartanMatrix) -> List[Tuple[int, ...]]:
    """Positive roots of a finite-type matrix in simple-root coordinates.

    Closes the simple roots under simple reflections, keeping positive
    results; ``<beta, alpha_i^vee> = sum_j beta_j a[i][j]``.
    """
    n = A.n
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    found = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(n):
            pair = sum(beta[j] * A.a[i][j] for j in range(n))
            if pair == 0:
                continue
            img = tuple(beta[k] - (pair if k == i else 0) for k in range(n))
            if all(c >= 0 for c in img) and img not in found:
                found.add(img)
                queue.append(img)
        if len(found) > 10_000:
            raise ValueError("root enumeration diverged; matrix is not of finite type")
    return sorted(found, key=lambda r: (sum(r), r))


def highest_root(A: CartanMatrix) -> Tuple[int, ...]:
    return positive_roots(A)[-1]


def affinize(A: CartanMatrix) -> CartanMatrix:
    """Untwisted affine extension: append the node ``alpha_0 = delta - theta``."""
    n = A.n
    sym = symmetrize(A)
    theta = highest_root(A)

    def form(u, v):
        return sum(u[i] * sym.b[i][j] * v[j] for i in range(n) for j in range(n))

    unit = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    tt = form(theta, theta)
    a = [list(row) + [0] for row in A.a] + [[0] * n + [2]]
    for i in range(n):
        ti = form(theta, unit[i])
        a[n][i] = _exact_int(-2 * ti / tt)
        a[i][n] = _exact_int(-2 * ti / form(unit[i], unit[i]))
    return validate(a)


def _exact_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"non-integral Cartan entry {x}")
    return x.numerator


def build_named(family: str, rank: int = 0, **params) -> CartanMatrix:
    """Standard matrices for the test corpus.

    ``family`` is one of A..G; ``"rank2"`` with ``a``, ``b`` giving
    ``[[2, -a], [-b, 2]]``; ``"complete"`` with ``a`` giving all off-diagonal
    entries ``-a``; ``"affine"`` with ``base`` naming the finite family.
    """
    fam = family.lower()
    if fam == "rank2":
        a, b = int(params["a"]), int(params["b"])
        if a < 0 or b < 0 or (a == 0) != (b == 0):
            raise RankOutOfRange(f"rank2 needs a, b >= 0 with a = 0 iff b = 0, got {a}, {b}")
        return validate([[2, -a], [-b, 2]])
    if fam == "complete":
        a = int(params.get("a", 2))
        if rank < 1:
            raise RankOutOfRange("complete family needs rank >= 1")
        if a < 1:
            raise RankOutOfRange("complete family needs a >= 1")
        return validate([[2 if i == j else -a for j in range(rank)] for i in range(rank)])
    if fam == "affine":
        base = params.get("base")
        if base is None:
            raise UnknownFamily("affine builder needs base=<finite family>")
        return affinize(build_named(base, rank))
    if fam.upper() in ("A", "B", "C", "D", "E", "F", "G"):
        return validate(_finite(fam, rank))
    raise UnknownFamily(f"unknown family {family!r}")
