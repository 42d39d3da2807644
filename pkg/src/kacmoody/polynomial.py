"""Dense univariate polynomials and reduced rational functions in ``q``.

Polynomials are plain tuples of coefficients, constant term first, with no
trailing zeros (the zero polynomial is ``()``).  Coefficients are ``int``
or ``Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

Number = Union[int, Fraction]
Poly = Tuple[Number, ...]

ZERO: Poly = ()
ONE: Poly = (1,)


def trim(p: Sequence[Number]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(_demote(c) for c in p)


def _demote(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def degree(p: Poly) -> int:
    """Degree of ``p``; the zero polynomial has degree -1."""
    return len(p) - 1


def lc(p: Poly) -> Number:
    return p[-1]


def add(p: Poly, r: Poly) -> Poly:
    n = max(len(p), len(r))
    return trim([(p[k] if k < len(p) else 0) + (r[k] if k < len(r) else 0)
                 for k in range(n)])


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, r: Poly) -> Poly:
    return add(p, neg(r))


def mul(p: Poly, r: Poly) -> Poly:
    if not p or not r:
        return ZERO
    out = [0] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(r):
                out[i + j] += a * b
    return trim(out)


def scale(p: Poly, c: Number) -> Poly:
    return trim([c * x for x in p])


def power(p: Poly, e: int) -> Poly:
    if e < 0:
        raise ValueError("negative polynomial power")
    out, base = ONE, p
    while e:
        if e & 1:
            out = mul(out, base)
        base = mul(base, base)
        e >>= 1
    return out


def shift(p: Poly, k: int) -> Poly:
    """Multiply by ``q**k`` (k >= 0)."""
    return (0,) * k + p if p else ZERO


def reverse(p: Poly, d: int | None = None) -> Poly:
    """``q**d * p(1/q)`` with ``d`` defaulting to ``degree(p)``."""
    if d is None:
        d = degree(p)
    if d < degree(p):
        raise ValueError("reversal degree below polynomial degree")
    padded = list(p) + [0] * (d + 1 - len(p))
    return trim(padded[::-1])


def substitute_power(p: Poly, k: int) -> Poly:
    """``p(q**k)``."""
    if not p:
        return ZERO
    out = [0] * (k * degree(p) + 1)
    for i, c in enumerate(p):
        out[k * i] = c
    return trim(out)


def evaluate(p: Poly, x: Number) -> Number:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return _demote(acc) if isinstance(acc, Fraction) else acc


def divmod_poly(p: Poly, r: Poly) -> Tuple[Poly, Poly]:
    """Quotient and remainder over the rationals."""
    if not r:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in p]
    dr = degree(r)
    lead = Fraction(lc(r))
    quot = [Fraction(0)] * max(len(p) - dr, 0)
    for k in range(len(rem) - 1, dr - 1, -1):
        c = rem[k] / lead
        if c:
            quot[k - dr] = c
            for j in range(dr + 1):
                rem[k - dr + j] -= c * r[j]
    return trim(quot), trim(rem[:dr] if dr > 0 else [])


def exact_div(p: Poly, r: Poly) -> Poly:
    q, rem = divmod_poly(p, r)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return q


def content(p: Poly) -> int:
    """gcd of the coefficients of an integer polynomial (0 for zero)."""
    g = 0
    for c in p:
        g = math.gcd(g, int(c))
    return g


def primitive(p: Poly) -> Poly:
    """Integer polynomial divided by its content, with positive leading term."""
    if not p:
        return ZERO
    g = content(p)
    if lc(p) < 0:
        g = -g
    return tuple(int(c) // g for c in p)


def clear_denominators(p: Poly) -> Tuple[Poly, int]:
    """Return ``(m * p, m)`` with ``m`` the lcm of coefficient denominators."""
    m = 1
    for c in p:
        if isinstance(c, Fraction):
            m = m * c.denominator // math.gcd(m, c.denominator)
    return tuple(int(c * m) for c in p), m


def _prem(f: Poly, g: Poly) -> Poly:
    # lc(g)**(deg f - deg g + 1) * f  mod g, staying in the integers
    r = list(f)
    dg = degree(g)
    b = lc(g)
    e = degree(f) - dg + 1
    while len(r) - 1 >= dg and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dg:
            break
        c = r[-1]
        s = len(r) - 1 - dg
        r = [b * x for x in r]
        for j in range(dg + 1):
            r[s + j] -= c * g[j]
        r.pop()
        e -= 1
    r = trim(r)
    if e > 0:
        r = tuple(x * b ** e for x in r)
    return r


def gcd(f: Poly, g: Poly) -> Poly:
    """Primitive gcd of two integer polynomials by the subresultant PRS.

    The result has positive leading coefficient; ``gcd(0, 0) = 0``.
    """
    if not f:
        return primitive(g)
    if not g:
        return primitive(f)
    a, b = primitive(f), primitive(g)
    if degree(a) < degree(b):
        a, b = b, a
    if degree(b) == 0:
        return ONE
    big_g = h = 1
    while True:
        d = degree(a) - degree(b)
        r = _prem(a, b)
        if not r:
            break
        if degree(r) == 0:
            return ONE
        a = b
        denom = big_g * h ** d
        b = tuple(c // denom for c in r)
        big_g = lc(a)
        if d == 0:
            pass
        elif d == 1:
            h = big_g
        else:
            h = big_g ** d // h ** (d - 1)
    return primitive(b)


def to_strings(p: Poly) -> list:
    return [str(c) for c in p]


def from_strings(items) -> Poly:
    return trim([Fraction(s) for s in items])


def format_poly(p: Poly, var: str = "q") -> str:
    if not p:
        return "0"
    terms = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class RationalFunction:
    """A reduced ratio ``num/den`` of polynomials with ``den(0) = 1``.

    Build instances through :meth:`from_polys` (or the helpers below), which
    cancel the polynomial gcd and scale so the denominator has constant
    term 1.  The representation is then unique, so ``==`` is equality of
    rational functions.
    """

    num: Poly
    den: Poly

    @classmethod
    def from_polys(cls, num: Sequence[Number], den: Sequence[Number] = ONE) -> "RationalFunction":
        num, den = trim(num), trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls(ZERO, ONE)
        ni, mn = clear_denominators(num)
        di, md = clear_denominators(den)
        # num/den = (ni/mn) / (di/md) = (ni*md) / (di*mn)
        ni = scale(ni, md)
        di = scale(di, mn)
        g = gcd(ni, di)
        if degree(g) > 0:
            ni = tuple(int(c) for c in exact_div(ni, g))
            di = tuple(int(c) for c in exact_div(di, g))
        c0 = di[0]
        if c0 == 0:
            raise ValueError("rational function has a pole at q = 0")
        return cls(scale(ni, Fraction(1, c0)), scale(di, Fraction(1, c0)))

    @classmethod
    def polynomial(cls, p: Sequence[Number]) -> "RationalFunction":
        return cls.from_polys(p, ONE)

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls(ONE, ONE)

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.den == other.den:
            return RationalFunction.from_polys(add(self.num, other.num), self.den)
        return RationalFunction.from_polys(
            add(mul(self.num, other.den), mul(other.num, self.den)),
            mul(self.den, other.den))

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(neg(self.num), self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction.from_polys(mul(self.num, other.num),
                                           mul(self.den, other.den))

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if not other.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction.from_polys(mul(self.num, other.den),
                                           mul(self.den, other.num))

    def __pow__(self, e: int) -> "RationalFunction":
        if e >= 0:
            return RationalFunction.from_polys(power(self.num, e), power(self.den, e))
        return RationalFunction.one() / self ** (-e)

    def substitute_q_squared(self) -> "RationalFunction":
        # f(q^2), g(q^2) stay coprime when f, g are
        return RationalFunction(substitute_power(self.num, 2),
                                substitute_power(self.den, 2))

    def invert_variable(self) -> "RationalFunction":
        """The rational function ``r(1/q)``, renormalized.

        Both polynomials are reversed and the leftover power of ``q`` is put
        on whichever side keeps everything polynomial.
        """
        dn, dd = degree(self.num), degree(self.den)
        if not self.num:
            return self
        num, den = reverse(self.num), reverse(self.den)
        # r(1/q) = q^(dd - dn) * rev(num) / rev(den)
        if dd >= dn:
            num = shift(num, dd - dn)
        else:
            den = shift(den, dn - dd)
        return RationalFunction.from_polys(num, den)

    def expand(self, order: int):
        """Taylor coefficients up to ``q**order`` as a :class:`Series`."""
        from kacmoody.powerseries import expand
        return expand(self, order)

    def __call__(self, x: Number) -> Number:
        d = evaluate(self.den, x)
        if d == 0:
            raise ZeroDivisionError("pole")
        v = Fraction(evaluate(self.num, x)) / d
        return _demote(v)

    def to_json(self) -> dict:
        return {"num": to_strings(self.num), "den": to_strings(self.den)}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalFunction":
        return cls.from_polys(from_strings(obj["num"]), from_strings(obj["den"]))

    def __str__(self) -> str:
        if self.is_polynomial():
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"
