"""Relative approximation degree and constant, approximation coefficients,
multiplicativity, linear combinations, and the residue-factorization
witness.

Everything here rests on one law: along the approximant tail,
v(f(x) - f(c_n)) = beta + h * v(x - c_n) for a unique positive integer h
and constant beta.  The module computes (h, beta) two independent ways
(affine-law fit on sampled values, eventual argmin of the Taylor
intercept family) and treats any disagreement as an internal bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    IndeterminateValuation,
    InsufficientPrecision,
    InternalInconsistency,
    MarkerViolation,
    PreconditionError,
)
from .hahn import Series, invert, truncate_to_subfield
from .ordval import INF, Cut, GroupValue, is_finite, scale_cut, shift_cut
from .valpoly import ValPoly, f_adic_expand, formal_derivative, taylor_coefficients
from .apprtype import ApproxType, Fixed, NotFixed, pushed_forward
from .envelope import AffineFamily, eventual_argmin, eventual_order


@dataclass(frozen=True)
class RelDegree:
    h: int
    beta: GroupValue
    taylor_intercepts: tuple[GroupValue, ...]
    poly: ValPoly


@dataclass(frozen=True)
class ElementProxy:
    """An element y given as f(x) + r with v(r) at or above the floor."""

    poly: ValPoly
    perturbation_floor: Cut


@dataclass(frozen=True)
class FixedCase:
    value: GroupValue


@dataclass(frozen=True)
class NotFixedLaw:
    m: int
    h: int
    beta: GroupValue


def sampled_law(
    A: ApproxType, f: ValPoly, above: Optional[GroupValue] = None
) -> tuple[int, GroupValue]:
    """Fit v(f(x) - f(c_n)) = beta + h * gamma_n exactly on the tail.

    The affine law only holds once gamma_n has passed every crossing of the
    derivative-value family; callers that know that threshold pass it as
    ``above`` so the fit is restricted to the stable region.
    """
    fx = f(A.target)
    pts = []
    for n in A.tail():
        g = A.gamma(n)
        if not is_finite(g):
            continue
        if above is not None and not g > above:
            continue
        try:
            w = (fx - f(A.approximants[n])).val()
        except IndeterminateValuation:
            continue
        if w is INF:
            continue
        pts.append((g, w))
    if len(pts) < 2:
        raise InsufficientPrecision("too few determinate tail values")
    (g1, w1), (g2, w2) = pts[-2], pts[-1]
    h = Fraction(w2 - w1, g2 - g1)
    if h.denominator != 1 or h < 1:
        raise InternalInconsistency(f"sampled slope {h} is not a positive integer")
    h = int(h)
    beta = w1 - h * g1
    for g, w in pts:
        if w != beta + h * g:
            raise InternalInconsistency("tail values follow no affine law")
    return h, beta


def rel_degree(A: ApproxType, f: ValPoly) -> RelDegree:
    """h and beta with v(f(x) - f(c)) = beta + h * v(x - c) eventually."""
    if f.is_zero or f.degree() < 1:
        raise PreconditionError("need a polynomial of degree >= 1")
    if A.is_trivial:
        raise PreconditionError("need an immediate approximation type")
    betas = A.taylor_intercepts(f)
    if betas is None:
        raise MarkerViolation(
            "some derivative value is not fixed at this depth"
        )
    fam = AffineFamily.make(
        [(i + 1, b, i + 1) for i, b in enumerate(betas)], A.distance()
    )
    h = eventual_argmin(fam)
    beta = betas[h - 1]
    try:
        h_s, beta_s = sampled_law(A, f, above=eventual_order(fam).beta)
    except InsufficientPrecision:
        h_s, beta_s = h, beta  # cannot sample; trust the envelope alone
    if (h_s, beta_s) != (h, beta):
        raise InternalInconsistency(
            f"envelope gives (h={h}, beta={beta}) but the sampled tail law "
            f"gives (h={h_s}, beta={beta_s})"
        )
    return RelDegree(h, beta, tuple(betas), f)


def rel_degree_general(
    A: ApproxType, g: ValPoly, minpoly_f: ValPoly
) -> FixedCase | NotFixedLaw:
    """The value law of an arbitrary g via its digit expansion in the
    associated minimal polynomial."""
    if g.is_zero:
        raise PreconditionError("the zero polynomial has no value")
    rd = rel_degree(A, minpoly_f)
    digits = f_adic_expand(g, minpoly_f)
    items = []
    gammas: list[GroupValue] = []
    for i, digit in enumerate(digits):
        if digit.is_zero:
            gammas.append(INF)
        else:
            res = A.fixes_value(digit)
            if not isinstance(res, Fixed):
                raise MarkerViolation(
                    f"digit {i} value is not fixed by the type"
                )
            gammas.append(res.value)
        intercept = gammas[i] if gammas[i] is INF else gammas[i] + i * rd.beta
        items.append((i, intercept, i * rd.h))
    fam = AffineFamily.make(items, A.distance())
    m = eventual_argmin(fam)
    if m == 0:
        return FixedCase(gammas[0])
    beta = gammas[m] + m * rd.beta
    # verify the law v(g(c_n)) = beta + m*h*gamma_n on the tail
    for n in A.tail():
        gam = A.gamma(n)
        try:
            w = g(A.approximants[n]).val()
        except IndeterminateValuation:
            continue
        if w != beta + m * rd.h * gam:
            raise InternalInconsistency(
                "digit-expansion law disagrees with direct evaluation"
            )
    return NotFixedLaw(m, rd.h, beta)


def h_upper_bound_from_coeffs(f: ValPoly) -> int:
    """For a target of value 0: the power-of-p part of the index of the
    unique minimum-value coefficient bounds h from above."""
    p = f.p
    best: Optional[tuple[GroupValue, int]] = None
    strict = True
    for i in range(1, f.degree() + 1):
        c = f.coeff(i)
        if c.is_exact_zero:
            continue
        v = c.val()
        if best is None or v < best[0]:
            best = (v, i)
            strict = True
        elif v == best[0]:
            strict = False
    if best is None or not strict:
        raise PreconditionError("no strictly minimal coefficient value")
    i = best[1]
    pt = 1
    while i % p == 0:
        i //= p
        pt *= p
    return pt


def approx_coefficient(A: ApproxType, f: ValPoly) -> tuple[Series, RelDegree]:
    """A ground-field element d with vd = v(f_h(c)) and
    v(f_h(c) - d) > vd along the tail; certified before returning."""
    rd = rel_degree(A, f)
    fh = formal_derivative(f, rd.h)
    tail = A.tail()
    samples = [fh(A.approximants[n]) for n in tail]
    last = samples[-1]
    if last.val() is INF:
        raise PreconditionError("h-th derivative vanishes on the tail")
    for k in range(1, len(last.terms) + 1):
        cand = Series(last.p, last.terms[:k], INF)
        if not all(A.ground(e) for e, _ in cand.terms):
            break
        if _certify_coefficient(samples, cand):
            _verify_coefficient_law(A, f, rd, cand)
            return cand, rd
    raise InsufficientPrecision(
        "no truncation of f_h(c) certifies as an approximation coefficient"
    )


def _certify_coefficient(samples: list[Series], d: Series) -> bool:
    vd = d.val()
    for s in samples:
        if s.val() != vd:
            return False
        diff = s - d
        try:
            vdiff = diff.val()
        except IndeterminateValuation:
            vdiff = diff.precision
        if not vdiff > vd:
            return False
    return True


def _verify_coefficient_law(
    A: ApproxType, f: ValPoly, rd: RelDegree, d: Series
):
    """v(f(x) - f(c_n)) = v(d * (x - c_n)^h) on the determinate tail."""
    fx = f(A.target)
    vd = d.val()
    for n in A.tail():
        gam = A.gamma(n)
        try:
            w = (fx - f(A.approximants[n])).val()
        except IndeterminateValuation:
            continue
        if w is INF or not is_finite(gam):
            continue
        if w != vd + rd.h * gam:
            raise InternalInconsistency(
                "approximation coefficient fails the defining value identity"
            )


def coefficient_dist_law(A: ApproxType, h: int, d: Series) -> Cut:
    """dist(f(x), K) transported: vd + h * dist(x, K)."""
    return shift_cut(d.val(), scale_cut(h, A.distance()))


def h_of_element(A: ApproxType, y: ElementProxy) -> RelDegree:
    """h of an element given through a polynomial proxy; independent of the
    proxy choice by construction."""
    return rel_degree(A, y.poly)


def greedy_proxy(
    A: ApproxType, y: Series, max_degree: int
) -> Optional[ElementProxy]:
    """Best-effort search for f with v(y - f(x)) beyond every observed
    approximant value of y: greedily match leading terms with monomials in
    x.  Failure returns None; it is a search miss, not an error."""
    p = y.p
    x = A.target
    rem = y
    acc = ValPoly.zero(p)
    powers = [ValPoly(p, (Series.one(p),))]
    for _ in range(max_degree):
        powers.append(powers[-1] * ValPoly.X(p))
    for _ in range(16):
        try:
            v = rem.val()
        except IndeterminateValuation:
            break
        if v is INF:
            break
        e, c = rem.leading()
        matched = False
        for k in range(max_degree, -1, -1):
            xk = x ** k
            try:
                vk = xk.val()
            except IndeterminateValuation:
                continue
            if vk == e and A.ground(e - vk):
                lead_c = xk.leading()[1]
                coeff = Series.monomial(p, 0, (c * pow(lead_c, -1, p)) % p)
                term = powers[k].scale(coeff)
                acc = acc + term
                rem = rem - term(x)
                matched = True
                break
            if vk < e and A.ground(e - vk):
                lead_c = xk.leading()[1]
                coeff = Series.monomial(
                    p, e - vk, (c * pow(lead_c, -1, p)) % p
                )
                term = powers[k].scale(coeff)
                acc = acc + term
                rem = rem - term(x)
                matched = True
                break
        if not matched:
            return None
    try:
        floor_v = rem.val()
    except IndeterminateValuation:
        floor_v = rem.precision
    if floor_v is INF:
        return ElementProxy(acc, Cut.plus_infinity())
    return ElementProxy(acc, Cut.below_or_equal(floor_v))


def check_multiplicativity(A: ApproxType, f: ValPoly, g: ValPoly) -> bool:
    """h(x : g o f) = h(x : f) * h(f(x) : g), both sides independent."""
    rd_f = rel_degree(A, f)
    B = pushed_forward(A, f, rd_f.h, rd_f.beta)
    rd_g = rel_degree(B, g)
    composed = g.compose(f)
    h_left, _ = sampled_law(A, composed)
    return h_left == rd_f.h * rd_g.h


def combine_same_degree(
    A: ApproxType,
    proxies: list[ElementProxy],
    ks: list[Series],
    ds: list[Series],
) -> RelDegree:
    """h of sum(k_i * f_i(x)) when the coefficient combination does not
    cancel: v(sum k_i d_i) must equal min v(k_i d_i) and be finite."""
    if not (len(proxies) == len(ks) == len(ds)) or not proxies:
        raise PreconditionError("need matching nonempty proxy/k/d lists")
    hs = set()
    for prox, d in zip(proxies, ds):
        rd = rel_degree(A, prox.poly)
        hs.add(rd.h)
    if len(hs) != 1:
        raise PreconditionError("proxies must share a common h")
    h = hs.pop()
    terms = [k * d for k, d in zip(ks, ds)]
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    min_v = min(t.val() for t in terms)
    try:
        v_total = total.val()
    except IndeterminateValuation:
        v_total = None
    if v_total is None or v_total is INF or v_total != min_v:
        raise PreconditionError(
            "coefficient cancellation: v(sum k_i d_i) exceeds min v(k_i d_i)"
        )
    combo = ValPoly.zero(A.target.p)
    for k, prox in zip(ks, proxies):
        combo = combo + prox.poly.scale(k)
    rd = rel_degree(A, combo)
    if rd.h != h:
        raise InternalInconsistency(
            f"combination changed h from {h} to {rd.h}"
        )
    return rd


def reduced_factor_shape(
    A: ApproxType, f: ValPoly, c: Series, d: Series
) -> list[int]:
    """Coefficientwise residue of the rescaled difference polynomial; must
    equal (Z - r)^h where r is the residue of d*(x - c)."""
    rd = rel_degree(A, f)
    h = rd.h
    gam = (A.target - c).val()
    if d.val() != -gam:
        raise PreconditionError("scaling element must have value -v(x - c)")
    p = f.p
    tab = taylor_coefficients(f, c)
    fh_c = tab[h]
    v_fh = fh_c.val()
    # precision needed so every rescaled coefficient's residue is determinate
    slack = Fraction(1)
    for i in range(1, f.degree() + 1):
        if tab[i].is_exact_zero:
            continue
        need = 2 * v_fh - (tab[i].val() + (h - i) * d.val()) + 1
        slack = max(slack, need - v_fh)
    inv = invert(fh_c, v_fh + slack)
    x0 = d * (A.target - c)
    if x0.precision is not INF and x0.precision <= 0:
        raise InsufficientPrecision("rescaled element has no residue")
    coeffs = {0: Series.zero(p)}
    for i in range(1, f.degree() + 1):
        a_i = tab[i] * (d ** (h - i) if h >= i else invert(d ** (i - h), INF)) * inv
        try:
            v_ai = a_i.val()
        except IndeterminateValuation:
            v_ai = a_i.precision
        if v_ai < 0:
            raise PreconditionError(
                f"coefficient {i} is not integral: approximant not deep enough"
            )
        coeffs[i] = a_i
        coeffs[0] = coeffs[0] - a_i * x0 ** i
    try:
        v0 = coeffs[0].val()
    except IndeterminateValuation:
        v0 = coeffs[0].precision
    if v0 < 0:
        raise PreconditionError("constant term is not integral")
    residues = []
    for i in range(f.degree() + 1):
        s = coeffs.get(i, Series.zero(p))
        residues.append(s.residue() if not s.is_exact_zero else 0)
    r = x0.residue()
    expected = _power_of_linear(p, r, h, f.degree())
    if residues != expected:
        raise InternalInconsistency(
            f"residue polynomial {residues} is not (Z - {r})^{h}"
        )
    return residues


def _power_of_linear(p: int, r: int, h: int, degree: int) -> list[int]:
    from math import comb

    out = [0] * (degree + 1)
    for i in range(h + 1):
        out[i] = (comb(h, i) * pow(-r, h - i, p)) % p
    return out
