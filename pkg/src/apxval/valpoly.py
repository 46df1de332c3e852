"""Polynomials with truncated-series coefficients.

Provides evaluation, composition, formal derivatives with exact binomial
coefficients reduced mod p, simultaneous Taylor coefficients by synthetic
division, f-adic digit expansion, and the p-adic binomial valuation fact
used to bound relative approximation degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .errors import InsufficientPrecision, PreconditionError
from .hahn import Series, invert
from .ordval import INF, GroupValue


@dataclass(frozen=True)
class ValPoly:
    """Coefficients c_0..c_n, lowest degree first; the zero polynomial is
    the empty tuple."""

    p: int
    coeffs: tuple[Series, ...]

    @staticmethod
    def make(p: int, coeffs) -> "ValPoly":
        cs = list(coeffs)
        while cs and cs[-1].is_exact_zero:
            cs.pop()
        return ValPoly(p, tuple(cs))

    @staticmethod
    def zero(p: int) -> "ValPoly":
        return ValPoly(p, ())

    @staticmethod
    def constant(c: Series) -> "ValPoly":
        return ValPoly.make(c.p, (c,))

    @staticmethod
    def X(p: int) -> "ValPoly":
        return ValPoly(p, (Series.zero(p), Series.one(p)))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if self.is_zero:
            raise PreconditionError("degree of the zero polynomial")
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Series:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Series.zero(self.p)

    def __add__(self, other: "ValPoly") -> "ValPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return ValPoly.make(
            self.p, (self.coeff(i) + other.coeff(i) for i in range(n))
        )

    def __neg__(self) -> "ValPoly":
        return ValPoly(self.p, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ValPoly") -> "ValPoly":
        return self + (-other)

    def __mul__(self, other: "ValPoly") -> "ValPoly":
        if self.is_zero or other.is_zero:
            return ValPoly.zero(self.p)
        out = [Series.zero(self.p)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_exact_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_exact_zero:
                    continue
                out[i + j] = out[i + j] + a * b
        return ValPoly.make(self.p, out)

    def scale(self, c: Series) -> "ValPoly":
        return ValPoly.make(self.p, (c * a for a in self.coeffs))

    def __call__(self, x: Series) -> Series:
        # Horner evaluation
        acc = Series.zero(self.p)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "ValPoly") -> "ValPoly":
        acc = ValPoly.zero(self.p)
        for c in reversed(self.coeffs):
            acc = acc * other + ValPoly.constant(c)
        return acc

    def __str__(self) -> str:
        from .parsing import format_poly

        return format_poly(self)


def formal_derivative(f: ValPoly, i: int) -> ValPoly:
    """The i-th Hasse derivative f_i(X) = sum_{j>=i} C(j,i) c_j X^(j-i),
    binomials computed as exact integers then reduced mod p."""
    if i < 0:
        raise PreconditionError("derivative order must be nonnegative")
    if f.is_zero or i > f.degree():
        return ValPoly.zero(f.p)
    return ValPoly.make(
        f.p,
        (f.coeffs[j].scale(comb(j, i) % f.p) for j in range(i, len(f.coeffs))),
    )


def taylor_coefficients(f: ValPoly, c: Series) -> list[Series]:
    """All f_i(c) for 0 <= i <= deg f at once, by repeated synthetic
    division of f by (X - c)."""
    if f.is_zero:
        return []
    p = f.p
    work = list(f.coeffs)
    out: list[Series] = []
    while work:
        # synthetic division by (X - c): the final Horner value is the
        # remainder, the intermediate values are the quotient coefficients
        acc = Series.zero(p)
        quot: list[Series] = []
        for coeff in reversed(work):
            acc = acc * c + coeff
            quot.append(acc)
        rem = quot.pop()
        quot.reverse()
        out.append(rem)
        work = quot
    return out


def taylor_check(f: ValPoly, c: Series, x: Series) -> bool:
    """Whether f(x) equals sum_i f_i(c) (x-c)^i up to propagated precision."""
    if f.is_zero:
        return True
    lhs = f(x)
    diff = x - c
    rhs = Series.zero(f.p)
    power = Series.one(f.p)
    for fi_c in taylor_coefficients(f, c):
        rhs = rhs + fi_c * power
        power = power * diff
    delta = lhs - rhs
    if not delta.terms:
        return True
    if lhs.precision is not INF and delta.terms[0][0] >= lhs.precision:
        return True
    return False


def poly_divmod(g: ValPoly, f: ValPoly) -> tuple[ValPoly, ValPoly]:
    """Exact division with remainder; the leading coefficient of f must be an
    exact monomial so its inverse is representable."""
    if f.is_zero:
        raise PreconditionError("division by the zero polynomial")
    p = g.p
    lead = f.coeffs[-1]
    if lead.precision is not INF or len(lead.terms) != 1:
        raise PreconditionError(
            "divisor leading coefficient must be an exact monomial"
        )
    e, c = lead.terms[0]
    lead_inv = Series.monomial(p, -e, pow(c, -1, p))
    df = f.degree()
    rem = list(g.coeffs)
    quot: dict[int, Series] = {}
    while len(rem) - 1 >= df and rem:
        top = rem[-1]
        if top.is_exact_zero:
            rem.pop()
            continue
        k = len(rem) - 1 - df
        q = top * lead_inv
        quot[k] = quot.get(k, Series.zero(p)) + q
        for j in range(df + 1):
            rem[k + j] = rem[k + j] - q * f.coeffs[j]
        rem.pop()
    qdeg = max(quot) if quot else -1
    qpoly = ValPoly.make(p, tuple(quot.get(i, Series.zero(p)) for i in range(qdeg + 1)))
    return qpoly, ValPoly.make(p, rem)


def f_adic_expand(g: ValPoly, f: ValPoly) -> list[ValPoly]:
    """Digits c_0..c_k with g = sum c_i f^i and deg c_i < deg f."""
    if f.is_zero or f.degree() < 1:
        raise PreconditionError("expansion base must have degree >= 1")
    digits: list[ValPoly] = []
    cur = g
    while True:
        if cur.is_zero:
            if not digits:
                digits.append(ValPoly.zero(g.p))
            break
        if cur.degree() < f.degree():
            digits.append(cur)
            break
        q, r = poly_divmod(cur, f)
        digits.append(r)
        cur = q
    return digits


def f_adic_reconstruct(digits: list[ValPoly], f: ValPoly) -> ValPoly:
    acc = ValPoly.zero(f.p)
    for d in reversed(digits):
        acc = acc * f + d
    return acc


def binom_val(p: int, t: int, r: int) -> GroupValue:
    """The p-adic valuation of C(p^t * r, p^t); zero whenever gcd(r,p)=1."""
    if t < 0 or r < 1 or gcd(r, p) != 1:
        raise PreconditionError(f"need t >= 0 and r coprime to p, got t={t} r={r}")
    n = comb(p**t * r, p**t)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return Fraction(v)
