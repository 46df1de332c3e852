"""Tame cyclic extensions L = K(s), s^n = t, n | p - 1, over K = F_p((t)).

The Galois action multiplies the coefficient of each monomial by a power
of a primitive n-th root of unity zeta in F_p, determined by the s-part of
the exponent.  Exponents may additionally carry p-power denominators (the
perfect hull is fixed pointwise).  The module provides the character
chi_sigma(d) = residue of sigma(d)/d, the crossed-homomorphism identity,
a constructive valuation-independence witness search, standard-basis
decomposition, and the trace construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInconsistency, PreconditionError
from .hahn import Series, invert
from .ordval import INF, GroupValue


def _split_denominator(den: int, p: int) -> tuple[int, int]:
    """den = p^J * rest with gcd(rest, p) = 1; returns (p^J, rest)."""
    pj = 1
    while den % p == 0:
        den //= p
        pj *= p
    return pj, den


@dataclass(frozen=True)
class TameCyclic:
    p: int
    n: int
    zeta: int

    @staticmethod
    def make(p: int, n: int) -> "TameCyclic":
        if (p - 1) % n != 0:
            raise PreconditionError(f"need n | p - 1, got n={n}, p={p}")
        zeta = _primitive_root_of_unity(p, n)
        return TameCyclic(p, n, zeta)

    def s(self) -> Series:
        """The uniformizer of the ramified step: s = t^(1/n)."""
        return Series.monomial(self.p, Fraction(1, self.n))

    def s_part(self, e: Fraction) -> int:
        """m mod n with t^e = s^m * (fixed perfect-hull monomial)."""
        pj, rest = _split_denominator(e.denominator, self.p)
        if self.n % rest != 0:
            raise PreconditionError(
                f"exponent {e} does not lie in the degree-{self.n} step"
            )
        # e = m/n + b/p^J  =>  m = e*n*p^J * inverse(p^J) mod n
        num = e.numerator * self.n * pj // e.denominator
        return (num * pow(pj, -1, self.n)) % self.n

    def element(self, k: int) -> "GaloisElem":
        return GaloisElem(self, k % self.n)

    def elements(self) -> list["GaloisElem"]:
        return [self.element(k) for k in range(self.n)]


def _primitive_root_of_unity(p: int, n: int) -> int:
    for z in range(2, p) if n > 1 else [1]:
        if pow(z, n, p) == 1 and all(
            pow(z, k, p) != 1 for k in range(1, n)
        ):
            return z
    if n == 1:
        return 1
    raise InternalInconsistency(f"no primitive {n}-th root of unity mod {p}")


@dataclass(frozen=True)
class GaloisElem:
    group: TameCyclic
    k: int

    @property
    def is_identity(self) -> bool:
        return self.k == 0

    def __call__(self, a: Series) -> Series:
        G = self.group
        return Series(
            a.p,
            tuple(
                (e, (c * pow(G.zeta, self.k * G.s_part(e), G.p)) % G.p)
                for e, c in a.terms
            ),
            a.precision,
        )

    def __mul__(self, other: "GaloisElem") -> "GaloisElem":
        return GaloisElem(self.group, (self.k + other.k) % self.group.n)


def chi(G: TameCyclic, sigma: GaloisElem, d: Series) -> int:
    """Residue of sigma(d)/d; lies in the group of n-th roots of unity."""
    vd = d.val()
    if vd is INF:
        raise PreconditionError("chi of zero")
    q = sigma(d) * invert(d, vd + 1)
    return q.coeff(0)


def crossed_hom_check(
    G: TameCyclic, sigma: GaloisElem, tau: GaloisElem, d: Series
) -> bool:
    """chi_{sigma tau}(d) = chi_sigma(tau d) * chi_tau(d)."""
    left = chi(G, sigma * tau, d)
    right = (chi(G, sigma, tau(d)) * chi(G, tau, d)) % G.p
    return left == right


def valuation_independence_witness(
    G: TameCyclic, sigmas: list[GaloisElem], ds: list[Series]
) -> Series:
    """An element d with v(sum sigma_i(d) d_i) = min v(sigma_i(d) d_i):
    monomials s^k first, then two-monomial combinations."""
    if len(sigmas) != len(ds) or not sigmas:
        raise PreconditionError("need matching nonempty sigma/d lists")
    if len({s.k for s in sigmas}) != len(sigmas):
        raise PreconditionError("automorphisms must be pairwise distinct")
    for d in ds:
        if d.val() != 0:
            raise PreconditionError("every d_i must have value 0")
    for cand in _witness_candidates(G):
        if _witness_works(G, cand, sigmas, ds):
            return cand
    raise InternalInconsistency(
        "witness search exhausted: contradicts valuation independence "
        "of a tame Galois group"
    )


def _witness_candidates(G: TameCyclic):
    p, n = G.p, G.n
    for k in range(n):
        yield Series.monomial(p, Fraction(k, n))
    for a, b in itertools.combinations(range(n), 2):
        for c1 in range(1, p):
            for c2 in range(1, p):
                yield Series.make(
                    p, [(Fraction(a, n), c1), (Fraction(b, n), c2)]
                )


def _witness_works(
    G: TameCyclic, d: Series, sigmas: list[GaloisElem], ds: list[Series]
) -> bool:
    terms = [sig(d) * di for sig, di in zip(sigmas, ds)]
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    min_v = min(t.val() for t in terms)
    try:
        return total.val() == min_v
    except Exception:
        return False


def standard_basis_decompose(G: TameCyclic, a: Series) -> list[Series]:
    """Coefficients c_0..c_{n-1} over the basis {1, s, ..., s^{n-1}}, each
    with perfect-hull (p-power-denominator) exponents."""
    buckets: list[list[tuple[Fraction, int]]] = [[] for _ in range(G.n)]
    for e, c in a.terms:
        m = G.s_part(e)
        buckets[m].append((e - Fraction(m, G.n), c))
    out = []
    for m in range(G.n):
        prec = a.precision
        if prec is not INF:
            prec = prec - Fraction(m, G.n)
        out.append(Series.make(a.p, buckets[m], prec))
    return out


def best_ground_approx(G: TameCyclic, a: Series) -> tuple[Series, GroupValue]:
    """The coset-0 part c_0 and v(a - c_0), the maximum of v(a - c) over
    ground elements c."""
    c0 = standard_basis_decompose(G, a)[0]
    return c0, (a - c0).val()


def trace(G: TameCyclic, a: Series) -> Series:
    total = a
    for k in range(1, G.n):
        total = total + G.element(k)(a)
    return total


def trace_generator(G: TameCyclic, x: Series, d: Series) -> Series:
    """Tr(d * x) = sum over the group of rho(d) * rho(x)."""
    return trace(G, d * x)
