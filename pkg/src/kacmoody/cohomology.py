"""Rational cohomology of Kac-Moody groups and flag manifolds from ``P_A``.

For a connected H-space the rational cohomology is free graded commutative
on ``i_k`` generators in degree ``k``.  The flag series satisfies

    P_A(q) = prod_k (1 - q^{2k})^{i_{2k-1}} / ((1 - q^2)^n prod_k (1 - q^{2k})^{i_{2k}}),

so with ``t = q^2`` and ``P_A(q) = G(t)`` the characteristic sequence of
``1/G`` is ``e_1 = n + i_2 - i_1`` and ``e_k = i_{2k} - i_{2k-1}``.  For an
indecomposable indefinite matrix the odd generators are pinned down by the
invariant theory of ``W(A)``: ``i_1 = i_2 = 0``, ``i_3 = epsilon(A)`` and no
other odd generators.  That fixes every ``i_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from kacmoody import polynomial as P
from kacmoody.cartan import (
    CartanMatrix,
    KMType,
    classify,
    is_indecomposable,
    is_symmetrizable,
)
from kacmoody.errors import (
    KacMoodyError,
    NegativeRank,
    NotIndecomposable,
    NotIndefinite,
    NotInZ1,
    OddSupport,
)
from kacmoody.polynomial import RationalFunction
from kacmoody.powerseries import (
    Series,
    _mul_cyclotomic_power,
    char_sequence,
    expand,
    rebuild,
)
from kacmoody.weylgrowth import FiniteTypeLabel, degrees, flag_poincare

DEFAULT_N = 20  # cutoff in steps of q^2


@dataclass(frozen=True)
class GeneratorDegrees:
    """Generator counts ``i_k`` for ``1 <= k <= cutoff``."""

    n: int
    epsilon: int
    i: Dict[int, int]
    cutoff: int

    def get(self, k: int) -> int:
        return self.i.get(k, 0)

    def odd_total(self) -> int:
        return sum(v for k, v in self.i.items() if k % 2)


@dataclass(frozen=True)
class ExponentSeq:
    """``e_1..e_N`` with ``1/P_A = prod_k (1 - q^{2k})^{e_k}`` up to ``q^{2N}``."""

    e: Tuple[int, ...]
    n: int

    def get(self, k: int) -> int:
        return self.e[k - 1]


# -- series built from generator counts ------------------------------------------

def _product_series(factors, order: int) -> Series:
    g = [1] + [0] * order
    for k, e in factors:
        if e and k <= order:
            g = _mul_cyclotomic_power(g, k, e, order)
    return Series(tuple(g), order)


def group_series_from_generators(g: GeneratorDegrees, order: Optional[int] = None) -> Series:
    """Poincare series of ``H*(G(A))``: ``prod (1 + q^odd)^i / prod (1 - q^even)^i``."""
    order = g.cutoff if order is None else order
    # (1 + q^d)^i for odd d is (1 - q^d)^i at -q; build there and flip back
    factors = [(k, v if k % 2 else -v) for k, v in sorted(g.i.items())]
    return _product_series(factors, order).evaluate_negated()


def generators_from_group_series(pg: Series, n: int, epsilon: int) -> GeneratorDegrees:
    """Invert :func:`group_series_from_generators` through the characteristic sequence.

    ``P_G(-q) = prod (1 - q^k)^{c_k}`` with ``c_odd = i_odd`` and
    ``c_even = -i_even``.
    """
    c = char_sequence(pg.evaluate_negated(), pg.order)
    i = {k: (v if k % 2 else -v) for k, v in enumerate(c, start=1)}
    return GeneratorDegrees(n, epsilon, i, pg.order)


def flag_series_from_generators(g: GeneratorDegrees, order: Optional[int] = None) -> Series:
    """Flag manifold series from generator counts, truncated at ``g.cutoff``."""
    order = g.cutoff if order is None else order
    factors = [(2, -g.n)]
    for k, v in sorted(g.i.items()):
        if k % 2:
            factors.append((k + 1, v))   # i_{2m-1} feeds (1 - q^{2m})
        else:
            factors.append((k, -v))
    return _product_series(factors, order)


def flag_rational_from_generators(g: GeneratorDegrees, max_degree: int = 5000) -> RationalFunction:
    """Same product as :func:`flag_series_from_generators`, kept as a rational function.

    Only usable when the exponents are small; ``max_degree`` bounds the
    degree of the expanded numerator and denominator.
    """
    num_deg = sum((k + 1) * v for k, v in g.i.items() if k % 2 and v > 0)
    den_deg = 2 * g.n + sum(k * v for k, v in g.i.items() if not k % 2 and v > 0)
    if max(num_deg, den_deg) > max_degree:
        raise ValueError("exponents too large for a closed rational form; use the series")
    num, den = P.ONE, P.power((1, 0, -1), g.n)
    for k, v in g.i.items():
        d = k + 1 if k % 2 else k
        exp = v if k % 2 else -v
        factor = P.power((1,) + (0,) * (d - 1) + (-1,), abs(exp))
        if exp > 0:
            num = P.mul(num, factor)
        elif exp < 0:
            den = P.mul(den, factor)
    return RationalFunction.from_polys(num, den)


def flag_rational_from_exponents(e: Sequence[int]) -> RationalFunction:
    """``1 / prod_k (1 - q^{2k})^{e_k}``, the simplified flag series."""
    num, den = P.ONE, P.ONE
    for k, v in enumerate(e, start=1):
        factor = P.power((1,) + (0,) * (2 * k - 1) + (-1,), abs(v))
        if v > 0:
            den = P.mul(den, factor)
        elif v < 0:
            num = P.mul(num, factor)
    return RationalFunction.from_polys(num, den)


def exponents_from_generators(g: GeneratorDegrees) -> Tuple[int, ...]:
    N = g.cutoff // 2
    e = [g.n + g.get(2) - g.get(1)]
    e += [g.get(2 * k) - g.get(2 * k - 1) for k in range(2, N + 1)]
    return tuple(e)


# -- exponent sequence -----------------------------------------------------------

def exponent_sequence(pa: RationalFunction | Series, n: int, N: int) -> ExponentSeq:
    """Read ``e_k`` off the flag series: the characteristic sequence of ``1/G(t)``."""
    s = pa if isinstance(pa, Series) else expand(pa, 2 * N)
    s = s.truncate(2 * N)
    for k in range(1, 2 * N + 1, 2):
        if s[k]:
            raise OddSupport(k)
    if s[0] != 1:
        raise NotInZ1(s[0])
    inv = s.even_part().reciprocal()
    e = char_sequence(inv, N)
    if rebuild(e, N) != inv:
        raise KacMoodyError("characteristic sequence failed to rebuild 1/G")
    return ExponentSeq(e.i, n)


# -- invariants -------------------------------------------------------------------

def epsilon(A: CartanMatrix) -> int:
    return 1 if is_symmetrizable(A) else 0


def reflection_matrices(A: CartanMatrix) -> List[List[List[int]]]:
    """``S_j`` acting on fundamental-weight coordinates: ``x -> x - x_j * A[:, j]``."""
    n = A.n
    return [[[(1 if i == k else 0) - (A.a[i][j] if k == j else 0) for k in range(n)]
             for i in range(n)] for j in range(n)]


def nullspace(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of the right null space by reduced row echelon form."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(m, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def _normalize_integer(v: Sequence[Fraction]) -> List[int]:
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0) or 1
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        g = -g
    return [x // g for x in ints]


@dataclass(frozen=True)
class QuadraticInvariantSpace:
    basis: Tuple[Tuple[Tuple[int, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def invariant_quadratics(A: CartanMatrix) -> QuadraticInvariantSpace:
    """All symmetric ``Q`` with ``S_j^T Q S_j = Q`` for every simple reflection.

    Each basis matrix is scaled to coprime integers whose first nonzero
    entry (row-major) is positive.
    """
    n = A.n
    slots = [(a, b) for a in range(n) for b in range(a, n)]
    index = {s: t for t, s in enumerate(slots)}

    def var(a, b):
        return index[(a, b) if a <= b else (b, a)]

    rows = []
    for S in reflection_matrices(A):
        for u in range(n):
            for v in range(u, n):
                row = [Fraction(0)] * len(slots)
                # (S^T Q S)_{uv} = sum_{i,k} S[i][u] Q[i][k] S[k][v]
                for i in range(n):
                    if S[i][u]:
                        for k in range(n):
                            if S[k][v]:
                                row[var(i, k)] += S[i][u] * S[k][v]
                row[var(u, v)] -= 1
                if any(row):
                    rows.append(row)
    basis = []
    for vec in nullspace(rows, len(slots)):
        vals = _normalize_integer(vec)
        Q = [[0] * n for _ in range(n)]
        for (a, b), x in zip(slots, vals):
            Q[a][b] = Q[b][a] = x
        basis.append(tuple(tuple(r) for r in Q))
    basis.sort(reverse=True)
    return QuadraticInvariantSpace(tuple(basis))


def is_invariant(A: CartanMatrix, Q: Sequence[Sequence[int]]) -> bool:
    n = A.n
    for S in reflection_matrices(A):
        for u in range(n):
            for v in range(n):
                val = sum(S[i][u] * Q[i][k] * S[k][v] for i in range(n) for k in range(n))
                if val != Q[u][v]:
                    return False
    return True


# -- generator degrees -------------------------------------------------------------

def generator_degrees_from_series(pa: RationalFunction | Series, eps: int, n: int,
                                  N: int = DEFAULT_N) -> GeneratorDegrees:
    """Assemble ``i_1..i_{2N}`` from the flag series, ``epsilon`` and the rank.

    This is the whole pipeline once the hypotheses on ``A`` are checked; its
    output depends on ``(P_A, epsilon, n)`` only.
    """
    e = exponent_sequence(pa, n, N)
    if e.get(1) != n:
        raise KacMoodyError(f"e_1 = {e.get(1)} but the rank is {n}; i_2 would be nonzero")
    i = {k: 0 for k in range(1, 2 * N + 1)}
    if N >= 2:
        i[3] = eps
        i[4] = e.get(2) + eps
    for k in range(3, N + 1):
        i[2 * k] = e.get(k)
    for k, v in i.items():
        if v < 0:
            raise NegativeRank(k, v)
    g = GeneratorDegrees(n, eps, i, 2 * N)
    target = pa if isinstance(pa, Series) else expand(pa, 2 * N)
    if flag_series_from_generators(g) != target.truncate(2 * N):
        raise KacMoodyError("generator data does not reproduce the flag series")
    return g


def _require_indefinite(A: CartanMatrix) -> None:
    if not is_indecomposable(A):
        raise NotIndecomposable("the cohomology formulas need an indecomposable matrix")
    kind = classify(A)
    if kind is not KMType.INDEFINITE:
        raise NotIndefinite(f"matrix is of {kind} type")


def generator_degrees(A: CartanMatrix, N: int = DEFAULT_N) -> GeneratorDegrees:
    _require_indefinite(A)
    pa = flag_poincare(A).P_A
    return generator_degrees_from_series(pa, epsilon(A), A.n, N)


# -- ring presentations ---------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    name: str
    degree: int
    matrix: Optional[Tuple[Tuple[int, ...], ...]] = None

    def to_json(self) -> dict:
        out = {"name": self.name, "degree": self.degree}
        if self.matrix is not None:
            out["matrix"] = [[str(x) for x in row] for row in self.matrix]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Relation":
        m = obj.get("matrix")
        if m is not None:
            m = tuple(tuple(int(Fraction(x)) for x in row) for row in m)
        return cls(obj["name"], int(obj["degree"]), m)


@dataclass(frozen=True)
class RingPresentation:
    """Free generators, degree-2 ambient classes and relations of a cohomology ring.

    ``polynomial`` holds ``(degree, count)`` pairs.  ``truncated_at`` is the
    last degree covered, or ``None`` when the list is complete.
    """

    space: str
    n: int
    epsilon: int
    exterior: Tuple[int, ...] = ()
    polynomial: Tuple[Tuple[int, int], ...] = ()
    ambient_degree2: int = 0
    relations: Tuple[Relation, ...] = ()
    truncated_at: Optional[int] = None

    def poincare_series(self, order: Optional[int] = None) -> Series:
        if order is None:
            order = self.truncated_at if self.truncated_at is not None else self._top_degree()
        # odd exterior generators contribute (1 + q^d); evaluate at -q to use (1 - q^d)
        factors = [(d, 1) for d in self.exterior]
        factors += [(d, -c if d % 2 == 0 else c) for d, c in self.polynomial]
        factors += [(2, -self.ambient_degree2)]
        factors += [(r.degree, 1) for r in self.relations]
        return _product_series(factors, order).evaluate_negated()

    def _top_degree(self) -> int:
        return sum(self.exterior) + sum(r.degree for r in self.relations) + 2

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "n": self.n,
            "epsilon": self.epsilon,
            "exterior": list(self.exterior),
            "polynomial": [{"degree": d, "count": str(c)} for d, c in self.polynomial],
            "ambient_degree2": self.ambient_degree2,
            "relations": [r.to_json() for r in self.relations],
            "truncated_at": self.truncated_at,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RingPresentation":
        return cls(
            space=obj["space"],
            n=int(obj["n"]),
            epsilon=int(obj["epsilon"]),
            exterior=tuple(int(d) for d in obj["exterior"]),
            polynomial=tuple((int(p["degree"]), int(p["count"])) for p in obj["polynomial"]),
            ambient_degree2=int(obj["ambient_degree2"]),
            relations=tuple(Relation.from_json(r) for r in obj["relations"]),
            truncated_at=obj["truncated_at"],
        )

    def describe(self) -> str:
        parts = []
        if self.ambient_degree2:
            ring = f"Q[w1..w{self.ambient_degree2}]" if self.ambient_degree2 > 1 else "Q[w1]"
            if self.relations:
                ring += "/<" + ", ".join(r.name for r in self.relations) + ">"
            parts.append(ring)
        if self.exterior:
            parts.append("Λ(" + ", ".join(f"x{d}" for d in self.exterior) + ")")
        if self.polynomial:
            gens = ", ".join(f"z{d}" if c == 1 else f"z{d}^({c})" for d, c in self.polynomial)
            parts.append(f"Q[{gens}]")
        text = " ⊗ ".join(parts) if parts else "Q"
        if self.truncated_at is not None:
            text += f"   (generators listed through degree {self.truncated_at})"
        return text


def _poly_gens(g: GeneratorDegrees) -> Tuple[Tuple[int, int], ...]:
    return tuple((k, v) for k, v in sorted(g.i.items()) if k % 2 == 0 and k >= 4 and v)


def psi_relation(A: CartanMatrix) -> Relation:
    space = invariant_quadratics(A)
    if space.dim != 1:
        raise KacMoodyError(f"expected one invariant quadratic form, found {space.dim}")
    return Relation("psi", 4, space.basis[0])


def group_presentation(A: CartanMatrix, N: int = DEFAULT_N,
                       g: Optional[GeneratorDegrees] = None) -> RingPresentation:
    g = generator_degrees(A, N) if g is None else g
    return RingPresentation(
        space="G", n=g.n, epsilon=g.epsilon,
        exterior=(3,) if g.epsilon else (),
        polynomial=_poly_gens(g),
        truncated_at=g.cutoff)


def flag_presentation(A: CartanMatrix, N: int = DEFAULT_N,
                      g: Optional[GeneratorDegrees] = None) -> RingPresentation:
    g = generator_degrees(A, N) if g is None else g
    relations = (psi_relation(A),) if g.epsilon else ()
    return RingPresentation(
        space="F", n=g.n, epsilon=g.epsilon,
        polynomial=_poly_gens(g),
        ambient_degree2=g.n,
        relations=relations,
        truncated_at=g.cutoff)


def finite_group_cohomology(labels: Sequence[FiniteTypeLabel]) -> RingPresentation:
    """Exterior algebra on generators of degree ``2d - 1`` over all basic degrees."""
    ds = sorted(d for label in labels for d in degrees(label))
    n = sum(label.rank for label in labels)
    return RingPresentation(space="G", n=n, epsilon=1, exterior=tuple(2 * d - 1 for d in ds))


def finite_flag_cohomology(labels: Sequence[FiniteTypeLabel]) -> RingPresentation:
    """Coinvariant algebra: ``Q[w_1..w_n]`` modulo the basic invariants of degrees ``2 d_k``."""
    ds = sorted(d for label in labels for d in degrees(label))
    n = sum(label.rank for label in labels)
    rels = tuple(Relation(f"f{k}", 2 * d) for k, d in enumerate(ds, start=1))
    return RingPresentation(space="F", n=n, epsilon=1, ambient_degree2=n, relations=rels)


def tensor(presentations: Sequence[RingPresentation]) -> RingPresentation:
    """Tensor product of presentations of the same space."""
    spaces = {p.space for p in presentations}
    if len(spaces) != 1:
        raise ValueError("cannot tensor presentations of different spaces")
    poly: Dict[int, int] = {}
    for p in presentations:
        for d, c in p.polynomial:
            poly[d] = poly.get(d, 0) + c
    cuts = [p.truncated_at for p in presentations if p.truncated_at is not None]
    return RingPresentation(
        space=spaces.pop(),
        n=sum(p.n for p in presentations),
        epsilon=min(p.epsilon for p in presentations),
        exterior=tuple(sorted(d for p in presentations for d in p.exterior)),
        polynomial=tuple(sorted(poly.items())),
        ambient_degree2=sum(p.ambient_degree2 for p in presentations),
        relations=tuple(r for p in presentations for r in p.relations),
        truncated_at=min(cuts) if cuts else None)


# -- homotopy --------------------------------------------------------------------------

@dataclass(frozen=True)
class HomotopyRanks:
    group: Dict[int, int]
    flag: Dict[int, int]


def homotopy_ranks(A: CartanMatrix, N: int = DEFAULT_N,
                   g: Optional[GeneratorDegrees] = None) -> HomotopyRanks:
    """Ranks of ``pi_k ⊗ Q`` for ``G(A)`` and ``F(A)``, ``1 <= k <= 2N``.

    ``G(A)`` is rationally a product of Eilenberg-MacLane spaces, one per
    free generator.  For ``F(A)`` the fibration over ``BB(A)`` adds rank
    ``n`` in degree 2 and changes nothing else.
    """
    g = generator_degrees(A, N) if g is None else g
    group = {k: g.get(k) for k in range(1, g.cutoff + 1)}
    flag = dict(group)
    flag[2] = group.get(2, 0) + g.n
    return HomotopyRanks(group, flag)
