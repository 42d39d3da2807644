"""Truncated integer power series and characteristic sequences.

Every series in ``Z_1[q]`` (integer coefficients, constant term 1) factors
uniquely as ``prod_{k>=1} (1 - q^k)^{i_k}``.  The exponents ``i_k`` form its
characteristic sequence.  Two independent routes are provided:

* :func:`char_sequence` peels one factor per degree by exact division;
* :func:`char_sequence_log` takes the series logarithm and applies Moebius
  inversion to ``sum_{d | k} d * i_d = b_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from kacmoody.errors import NonIntegerResult, NonUnitConstantTerm, NotInZ1
from kacmoody.polynomial import RationalFunction

DEFAULT_ORDER = 40


@dataclass(frozen=True)
class Series:
    """Coefficients ``c_0..c_order`` of a power series known modulo ``q**(order+1)``."""

    coeffs: Tuple[int, ...]
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient count must equal order + 1")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], order: int | None = None) -> "Series":
        """Pad with zeros or truncate ``coeffs`` to exactly ``order + 1`` terms."""
        coeffs = list(coeffs)
        if order is None:
            order = max(len(coeffs) - 1, 0)
        coeffs = coeffs[: order + 1] + [0] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs), order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.from_coeffs([1], order)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError(f"cannot extend a series known to order {self.order} to {order}")
        return Series(self.coeffs[: order + 1], order)

    def __add__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series(tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)), n)

    def __neg__(self) -> "Series":
        return Series(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series(tuple(_mul_lists(self.coeffs, other.coeffs, n)), n)

    def reciprocal(self) -> "Series":
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise NonUnitConstantTerm(c0)
        out = [0] * (self.order + 1)
        out[0] = c0  # 1/c0 == c0 for a unit
        for k in range(1, self.order + 1):
            acc = 0
            for j in range(1, k + 1):
                if self.coeffs[j]:
                    acc += self.coeffs[j] * out[k - j]
            out[k] = -acc * c0
        return Series(tuple(out), self.order)

    def substitute_q_squared(self) -> "Series":
        out = [0] * (2 * self.order + 1)
        out[::2] = self.coeffs
        return Series(tuple(out), 2 * self.order)

    def even_part(self) -> "Series":
        """``G`` with ``self(q) = G(q**2)``; the caller checks odd support."""
        return Series(self.coeffs[::2], self.order // 2)

    def evaluate_negated(self) -> "Series":
        """The series ``f(-q)``."""
        return Series(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)),
                      self.order)

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "Series":
        return cls(tuple(int(c) for c in obj["coeffs"]), int(obj["order"]))


def _mul_lists(a: Sequence[int], b: Sequence[int], n: int) -> list:
    out = [0] * (n + 1)
    for i in range(min(len(a), n + 1)):
        ai = a[i]
        if ai:
            for j in range(min(len(b), n + 1 - i)):
                out[i + j] += ai * b[j]
    return out


def _binomial_factor(e: int, count: int) -> list:
    """Coefficients of ``(1 - x)**e`` for ``x**0 .. x**count`` (any integer ``e``)."""
    out = [1]
    c = 1
    for j in range(count):
        # c_{j+1} = c_j * (j - e) / (j + 1), always an exact division
        c = c * (j - e) // (j + 1)
        out.append(c)
        if c == 0:
            out.extend([0] * (count - j - 1))
            break
    return out


def _mul_cyclotomic_power(g: list, k: int, e: int, order: int) -> list:
    """``g * (1 - q**k)**e`` truncated to ``order``."""
    if e == 0:
        return g
    factor = _binomial_factor(e, order // k)
    out = [0] * (order + 1)
    for j, c in enumerate(factor):
        if c:
            step = k * j
            for t in range(step, order + 1):
                out[t] += c * g[t - step]
    return out


def expand(r: RationalFunction, order: int) -> Series:
    """Taylor expansion of ``num/den`` up to ``q**order``.

    Uses the recurrence ``s_k = num_k - sum_{j>=1} den_j s_{k-j}``, valid
    because the denominator is normalized to ``den(0) = 1``.
    """
    num, den = r.num, r.den
    out = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            if den[j]:
                acc -= den[j] * out[k - j]
        out.append(acc)
    return Series(tuple(_as_int(c) for c in out), order)


def _as_int(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    return c


def series_to_rational(f: Series) -> RationalFunction:
    """The truncated series read as a polynomial."""
    return RationalFunction.polynomial(f.coeffs)


@dataclass(frozen=True)
class CharSeq:
    """Exponents ``i_1..i_N`` with ``f = prod (1 - q^k)^{i_k}`` mod ``q^{N+1}``.

    ``i`` is stored 0-based; use :meth:`get` for the 1-based reading.
    """

    i: Tuple[int, ...]

    def get(self, k: int) -> int:
        if not 1 <= k <= len(self.i):
            raise IndexError(f"index {k} outside 1..{len(self.i)}")
        return self.i[k - 1]

    def __len__(self) -> int:
        return len(self.i)

    def __iter__(self):
        return iter(self.i)

    def __add__(self, other: "CharSeq") -> "CharSeq":
        return CharSeq(tuple(a + b for a, b in zip(self.i, other.i)))


def _check_z1(f: Series, n: int) -> None:
    if f.coeffs[0] != 1:
        raise NotInZ1(f.coeffs[0])
    if f.order < n:
        raise ValueError(f"series known only to order {f.order}, need {n}")


def char_sequence(f: Series, n: int) -> CharSeq:
    """Characteristic sequence by repeated division.

    At step ``k`` the running quotient is ``1 + a q^k + ...``; since
    ``(1 - q^k)^i = 1 - i q^k + ...``, set ``i_k = -a`` and divide by
    ``(1 - q^k)^{i_k}``.
    """
    _check_z1(f, n)
    g = list(f.coeffs[: n + 1])
    out = []
    for k in range(1, n + 1):
        ik = -g[k]
        out.append(ik)
        if ik:
            g = _mul_cyclotomic_power(g, k, -ik, n)
    return CharSeq(tuple(out))


def rebuild(seq: CharSeq | Sequence[int], n: int) -> Series:
    """``prod_{k=1}^{n} (1 - q^k)^{i_k}`` truncated to ``q**n``."""
    exps = seq.i if isinstance(seq, CharSeq) else tuple(seq)
    g = [1] + [0] * n
    for k, e in enumerate(exps[:n], start=1):
        if e:
            g = _mul_cyclotomic_power(g, k, e, n)
    return Series(tuple(g), n)


def log_series(f: Series, n: int) -> list:
    """Coefficients of ``ln f`` up to ``q**n`` as Fractions (``f(0) = 1``)."""
    _check_z1(f, n)
    f = f.truncate(n)
    deriv = [k * f.coeffs[k] for k in range(1, n + 1)] + [0]
    ratio = _mul_lists(deriv, f.reciprocal().coeffs, n)
    # integrate f'/f term by term
    return [Fraction(0)] + [Fraction(ratio[k - 1], k) for k in range(1, n + 1)]


def char_sequence_log(f: Series, n: int) -> CharSeq:
    """Characteristic sequence through ``ln f`` and Moebius inversion.

    With ``-ln f = sum_k (b_k / k) q^k`` one has ``b_k = sum_{d | k} d i_d``.
    """
    log = log_series(f, n)
    b = [None]
    for k in range(1, n + 1):
        bk = -k * log[k]
        if bk.denominator != 1:
            raise NonIntegerResult(f"b_{k} = {bk} is not an integer")
        b.append(bk.numerator)
    out = []
    for k in range(1, n + 1):
        total = sum(mobius(d) * b[k // d] for d in divisors(k))
        if total % k:
            raise NonIntegerResult(f"{k} does not divide {total}")
        out.append(total // k)
    return CharSeq(tuple(out))


def divisors(n: int) -> list:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    sign = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1
    if n > 1:
        sign = -sign
    return sign


def witt_dim(n: int, k: int) -> int:
    """Dimension of the degree-``k`` part of the free Lie algebra on ``n`` generators."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    total = sum(mobius(d) * n ** (k // d) for d in divisors(k))
    return total // k
