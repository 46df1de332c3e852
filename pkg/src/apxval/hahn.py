"""Truncated Hahn series over a prime field.

A series is a finite exponent -> coefficient map over F_p together with a
precision bound: terms with exponent >= precision are unknown.  Precision
INF marks an exact element.  The valuation is the least stored exponent,
with v(t) = 1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .errors import (
    IndeterminateValuation,
    InsufficientPrecision,
    NotRepresentable,
    PreconditionError,
)
from .ordval import INF, GroupValue, is_finite


@dataclass(frozen=True)
class SubfieldPredicate:
    """A decidable predicate on exponents carving a ground field out of the
    ambient Hahn field.  The accepted set must be a subgroup of Q containing Z.
    """

    name: str
    accepts: Callable[[Fraction], bool]

    def __call__(self, e: Fraction) -> bool:
        return self.accepts(e)


def integers_predicate() -> SubfieldPredicate:
    return SubfieldPredicate("Z", lambda e: e.denominator == 1)


def p_power_denominators(p: int) -> SubfieldPredicate:
    def ok(e: Fraction) -> bool:
        d = e.denominator
        while d % p == 0:
            d //= p
        return d == 1

    return SubfieldPredicate(f"Z[1/{p}]", ok)


def denominators_dividing(n: int) -> SubfieldPredicate:
    return SubfieldPredicate(f"(1/{n})Z", lambda e: n % e.denominator == 0)


def lattice_p_power(n: int, p: int) -> SubfieldPredicate:
    """Exponents m/(n*p^j): the perfect hull of the degree-n ramified step."""

    def ok(e: Fraction) -> bool:
        d = e.denominator
        while d % p == 0:
            d //= p
        return n % d == 0

    return SubfieldPredicate(f"(1/{n})Z[1/{p}]", ok)


def all_rationals() -> SubfieldPredicate:
    return SubfieldPredicate("Q", lambda e: True)


PREDICATES: dict[str, Callable[..., SubfieldPredicate]] = {
    "Z": lambda p: integers_predicate(),
    "Z[1/p]": lambda p: p_power_denominators(p),
    "Q": lambda p: all_rationals(),
}


def resolve_predicate(name: str, p: int) -> SubfieldPredicate:
    if name in PREDICATES:
        return PREDICATES[name](p)
    if name.startswith("div"):
        return denominators_dividing(int(name[3:]))
    raise PreconditionError(f"unknown subfield predicate {name!r}")


@dataclass(frozen=True)
class Series:
    """A truncated Hahn series: sorted tuple of (exponent, coeff mod p) with
    all exponents strictly below ``precision`` and no zero coefficients."""

    p: int
    terms: tuple[tuple[Fraction, int], ...]
    precision: GroupValue = INF

    @staticmethod
    def make(
        p: int,
        terms: Iterable[tuple[Fraction | int, int]],
        precision: GroupValue = INF,
    ) -> "Series":
        acc: dict[Fraction, int] = {}
        for e, c in terms:
            e = Fraction(e)
            acc[e] = (acc.get(e, 0) + c) % p
        kept = sorted((e, c) for e, c in acc.items() if c != 0 and e < precision)
        return Series(p, tuple(kept), precision)

    @staticmethod
    def zero(p: int, precision: GroupValue = INF) -> "Series":
        return Series(p, (), precision)

    @staticmethod
    def one(p: int) -> "Series":
        return Series.make(p, [(0, 1)])

    @staticmethod
    def monomial(p: int, e, c: int = 1, precision: GroupValue = INF) -> "Series":
        return Series.make(p, [(Fraction(e), c)], precision)

    @staticmethod
    def t(p: int) -> "Series":
        return Series.monomial(p, 1)

    @property
    def is_exact_zero(self) -> bool:
        return not self.terms and self.precision is INF

    def val(self) -> GroupValue:
        if self.terms:
            return self.terms[0][0]
        if self.precision is INF:
            return INF
        raise IndeterminateValuation(
            f"series is zero up to precision {self.precision}"
        )

    def coeff(self, e) -> int:
        e = Fraction(e)
        for ee, c in self.terms:
            if ee == e:
                return c
        return 0

    def leading(self) -> tuple[Fraction, int]:
        if not self.terms:
            raise IndeterminateValuation("no leading term")
        return self.terms[0]

    def _require_same_p(self, other: "Series"):
        if self.p != other.p:
            raise PreconditionError(f"mixed primes {self.p} and {other.p}")

    def __add__(self, other: "Series") -> "Series":
        self._require_same_p(other)
        prec = min_value(self.precision, other.precision)
        return Series.make(self.p, list(self.terms) + list(other.terms), prec)

    def __neg__(self) -> "Series":
        return Series(
            self.p,
            tuple((e, (-c) % self.p) for e, c in self.terms),
            self.precision,
        )

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other: "Series") -> "Series":
        self._require_same_p(other)
        prec = self._mul_precision(other)
        if not self.terms or not other.terms:
            return Series(self.p, (), prec)
        # int-keyed convolution over a common exponent denominator
        from math import lcm

        den = lcm(
            *(e.denominator for e, _ in self.terms),
            *(e.denominator for e, _ in other.terms),
        )
        a = [(int(e * den), c) for e, c in self.terms]
        b = [(int(e * den), c) for e, c in other.terms]
        cutoff = None if prec is INF else prec * den
        acc: dict[int, int] = {}
        for ea, ca in a:
            for eb, cb in b:
                k = ea + eb
                if cutoff is not None and k >= cutoff:
                    continue
                acc[k] = (acc.get(k, 0) + ca * cb) % self.p
        kept = sorted((Fraction(k, den), c) for k, c in acc.items() if c != 0)
        return Series(self.p, tuple(kept), prec)

    def _mul_precision(self, other: "Series") -> GroupValue:
        cands = []
        if other.precision is not INF:
            if self.terms:
                cands.append(self.terms[0][0] + other.precision)
            elif self.precision is INF:
                pass  # exact zero absorbs
            else:
                cands.append(self.precision + other.precision)
        if self.precision is not INF:
            if other.terms:
                cands.append(other.terms[0][0] + self.precision)
            elif other.precision is INF:
                pass
            else:
                cands.append(self.precision + other.precision)
        if (self.is_exact_zero or other.is_exact_zero):
            return INF
        return min(cands) if cands else INF

    def scale(self, c: int) -> "Series":
        c %= self.p
        if c == 0:
            return Series(self.p, (), self.precision)
        return Series(
            self.p,
            tuple((e, (cc * c) % self.p) for e, cc in self.terms),
            self.precision,
        )

    def shift(self, e) -> "Series":
        """Multiplication by the monomial t^e."""
        e = Fraction(e)
        prec = self.precision if self.precision is INF else self.precision + e
        return Series(
            self.p, tuple((ee + e, c) for ee, c in self.terms), prec
        )

    def __pow__(self, k: int) -> "Series":
        if k < 0:
            raise PreconditionError("negative power; use invert")
        out = Series.one(self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def truncate(self, precision: GroupValue) -> "Series":
        prec = min_value(self.precision, precision)
        return Series(
            self.p, tuple((e, c) for e, c in self.terms if e < prec), prec
        )

    def residue(self) -> int:
        v = None
        if self.terms:
            v = self.terms[0][0]
            if v < 0:
                raise PreconditionError("residue of a negative-value series")
        if self.precision is not INF and self.precision <= 0:
            raise InsufficientPrecision("precision does not reach exponent 0")
        return self.coeff(0)

    def __str__(self) -> str:
        from .parsing import format_series

        return format_series(self)


def min_value(a: GroupValue, b: GroupValue) -> GroupValue:
    if a is INF:
        return b
    if b is INF:
        return a
    return min(a, b)


def val(s: Series) -> GroupValue:
    return s.val()


def invert(a: Series, target_precision: GroupValue) -> Series:
    """Multiplicative approximate inverse: v(a*inv - 1) >= target - v(a)."""
    va = a.val()
    if va is INF:
        raise PreconditionError("cannot invert zero")
    if target_precision is INF:
        if a.precision is not INF or len(a.terms) > 1:
            raise InsufficientPrecision("exact inverse needs a monomial")
        e, c = a.terms[0]
        return Series.monomial(a.p, -e, pow(c, -1, a.p))
    if a.precision is not INF and a.precision < target_precision:
        raise InsufficientPrecision(
            f"precision {a.precision} below target {target_precision}"
        )
    # normalize to 1 + u with v(u) > 0, then sum the geometric series
    lead_e, lead_c = a.terms[0]
    unit = Series.monomial(a.p, -lead_e, pow(lead_c, -1, a.p))
    b = (a * unit).truncate(target_precision - va)
    one = Series.one(a.p)
    u = one - b
    inv_b = one
    term = one
    if u.terms:
        vu = u.terms[0][0]
        k = 1
        while k * vu < target_precision - va:
            term = (term * u).truncate(target_precision - va)
            inv_b = inv_b + term
            if not term.terms:
                break
            k += 1
    inv_b = inv_b.truncate(target_precision - va)
    return inv_b * unit


def truncate_to_subfield(
    x: Series, pred: SubfieldPredicate, alpha: GroupValue
) -> Series:
    """The truncation of x below alpha, certified to lie in the ground field.

    Returns c with v(x - c) >= alpha when every kept exponent satisfies the
    predicate; raises NotRepresentable otherwise.
    """
    if x.precision is not INF and alpha is INF:
        raise InsufficientPrecision("exact truncation of a truncated series")
    if x.precision is not INF and alpha > x.precision:
        raise InsufficientPrecision(
            f"alpha {alpha} beyond precision {x.precision}"
        )
    kept = [(e, c) for e, c in x.terms if e < alpha]
    bad = [e for e, _ in kept if not pred(e)]
    if bad:
        raise NotRepresentable(
            f"exponent {bad[0]} not accepted by predicate {pred.name}"
        )
    return Series(x.p, tuple(kept), INF)


def in_subfield(x: Series, pred: SubfieldPredicate) -> bool:
    return all(pred(e) for e, _ in x.terms)
