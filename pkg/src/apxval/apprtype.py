"""Approximation types: a target element together with a ground field and a
strictly improving approximant sequence.

The distance of the type is a cut; because the supremum of an approximant
value sequence is not determinable from finitely many terms, a constructor
hint can declare the cut, and every computation checks the observed values
against it.  Semantic markers (cofinal, transcendental) are caller
assertions; any observed counterexample raises a MarkerViolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .errors import (
    IndeterminateValuation,
    InsufficientPrecision,
    InternalInconsistency,
    MarkerViolation,
    PreconditionError,
    StabilizationError,
)
from .hahn import Series, SubfieldPredicate, in_subfield
from .ordval import INF, Cut, GroupValue, compare_value_cut, is_finite
from .valpoly import ValPoly, taylor_coefficients
from .envelope import AffineFamily, eventual_argmin


@dataclass(frozen=True)
class Fixed:
    value: GroupValue


@dataclass(frozen=True)
class NotFixed:
    h: int
    beta: GroupValue


def default_approximants(
    target: Series, ground: SubfieldPredicate
) -> tuple[Series, ...]:
    """Successive prefix truncations of the target that lie in the ground
    field.  The full prefix is excluded: its distance to the target is
    hidden behind the precision bound."""
    out = []
    prefix: list[tuple[Fraction, int]] = []
    out.append(Series(target.p, (), INF))
    for e, c in target.terms:
        if not ground(e):
            break
        prefix.append((e, c))
        out.append(Series(target.p, tuple(prefix), INF))
    if len(out) > 1 and len(prefix) == len(target.terms):
        out.pop()  # drop the full prefix
    return tuple(out)


@dataclass(frozen=True)
class ApproxType:
    target: Series
    ground: SubfieldPredicate
    approximants: tuple[Series, ...]
    cofinal: bool = True
    transcendental: bool = False
    minpoly: Optional[ValPoly] = None
    distance_hint: Optional[Cut] = None
    window: int = 4
    tail_depth: int = 6

    @staticmethod
    def from_truncations(
        target: Series,
        ground: SubfieldPredicate,
        *,
        cofinal: bool = True,
        transcendental: bool = False,
        minpoly: Optional[ValPoly] = None,
        distance_hint: Optional[Cut] = None,
        window: int = 4,
        tail_depth: int = 6,
    ) -> "ApproxType":
        return ApproxType(
            target,
            ground,
            default_approximants(target, ground),
            cofinal,
            transcendental,
            minpoly,
            distance_hint,
            window,
            tail_depth,
        )

    def __post_init__(self):
        prev = None
        for c in self.approximants:
            if not in_subfield(c, self.ground):
                raise PreconditionError(
                    "approximant leaves the ground field"
                )
            g = (self.target - c).val()
            if prev is not None and not g > prev:
                raise PreconditionError(
                    "approximant values must strictly increase"
                )
            prev = g

    def gamma(self, n: int) -> GroupValue:
        """v(target - c_n)."""
        return (self.target - self.approximants[n]).val()

    def gammas(self) -> list[GroupValue]:
        return [self.gamma(n) for n in range(len(self.approximants))]

    @property
    def is_trivial(self) -> bool:
        return any(g is INF for g in self.gammas())

    def distance(self) -> Cut:
        if not self.cofinal:
            raise PreconditionError(
                "distance needs a cofinal approximant sequence"
            )
        if self.distance_hint is not None:
            for g in self.gammas():
                if not compare_value_cut(g, self.distance_hint).lt:
                    raise MarkerViolation(
                        f"approximant value {g} contradicts the declared "
                        f"distance {self.distance_hint}"
                    )
            return self.distance_hint
        # no hint: read the cut off the series data directly
        bad = [e for e, _ in self.target.terms if not self.ground(e)]
        if bad:
            # the coefficient at the first inadmissible exponent can never
            # be cancelled by a ground element, so the distance is attained
            return Cut.below_or_equal(bad[0])
        if self.target.precision is INF:
            return Cut.plus_infinity()
        # every visible term is admissible: precision-limited
        return Cut.below_or_equal(self.target.precision)

    def precision_limited(self) -> bool:
        return (
            self.distance_hint is None
            and self.target.precision is not INF
            and all(self.ground(e) for e, _ in self.target.terms)
        )

    def tail(self) -> list[int]:
        n = len(self.approximants)
        return list(range(max(0, n - self.tail_depth), n))

    def same_type(self, other_target: Series) -> bool:
        """Equality of approximation types via the distance criterion
        v(target - x') >= dist."""
        if self.is_trivial:
            raise PreconditionError("same_type needs an immediate type")
        diff = other_target - self.target
        d = self.distance()
        try:
            v = diff.val()
        except IndeterminateValuation:
            # zero up to precision: decidable only if the precision bound
            # already clears the distance cut
            if compare_value_cut(diff.precision, d).ge:
                return True
            raise InsufficientPrecision(
                "precision too low to compare against the distance"
            )
        rel = compare_value_cut(v, d)
        if rel.ge:
            return True
        if rel.lt:
            return False
        raise InsufficientPrecision("value sits inside the distance cut")

    # -- fixed-value analysis -------------------------------------------

    def _poly_values(self, g: ValPoly, indices=None) -> list[GroupValue]:
        if indices is None:
            indices = range(len(self.approximants))
        return [g(self.approximants[n]).val() for n in indices]

    def _stabilized(self, values: list[GroupValue]) -> Optional[GroupValue]:
        w = min(self.window, len(values))
        if w == 0:
            return None
        tail = values[-w:]
        if all(v == tail[0] for v in tail):
            return tail[0]
        return None

    def fixes_value(self, g: ValPoly) -> Fixed | NotFixed:
        if g.is_zero:
            raise PreconditionError("the zero polynomial has no value")
        if g.degree() == 0:
            return Fixed(g.coeffs[0].val())
        values = []
        for n in range(len(self.approximants)):
            s = g(self.approximants[n])
            try:
                values.append(s.val())
            except IndeterminateValuation:
                raise InsufficientPrecision(
                    f"v(g(c_{n})) is swallowed by the precision bound"
                )
        stab = self._stabilized(values)
        if stab is not None:
            gx = g(self.target)
            try:
                vx = gx.val()
            except IndeterminateValuation:
                vx = None
            if vx is None or vx == stab:
                return Fixed(stab)
            # constant window but wrong limit: treat as not yet stabilized
        law = self._fit_law(values)
        self._cross_check(g, law)
        return law

    def _fit_law(self, values: list[GroupValue]) -> NotFixed:
        gammas = self.gammas()
        pts = [
            (g, w)
            for g, w in zip(gammas, values)
            if is_finite(g) and is_finite(w)
        ]
        tail_len = min(self.tail_depth, len(pts))
        pts = pts[-tail_len:]
        if len(pts) < 2:
            raise StabilizationError("too few points to fit an affine law")
        (g1, w1), (g2, w2) = pts[-2], pts[-1]
        h = Fraction(w2 - w1, g2 - g1)
        if h.denominator != 1 or h < 1:
            raise StabilizationError(f"law slope {h} is not a positive integer")
        h = int(h)
        beta = w1 - h * g1
        for g, w in pts:
            if w != beta + h * g:
                raise StabilizationError(
                    "values follow no single affine law on the tail"
                )
        return NotFixed(h, beta)

    def taylor_intercepts(self, g: ValPoly) -> Optional[list[GroupValue]]:
        """Stabilized values of the derivative evaluations g_i(c_n) on the
        tail, i = 1..deg g, or None if some of them do not stabilize."""
        deg = g.degree()
        tail = self.tail()
        tables = []
        for n in tail:
            tables.append(taylor_coefficients(g, self.approximants[n]))
        betas: list[GroupValue] = []
        for i in range(1, deg + 1):
            vals = []
            for tab in tables:
                try:
                    vals.append(tab[i].val())
                except IndeterminateValuation:
                    return None
            if any(v != vals[-1] for v in vals[-min(self.window, len(vals)):]):
                return None
            betas.append(vals[-1])
        return betas

    def _cross_check(self, g: ValPoly, law: NotFixed):
        betas = self.taylor_intercepts(g)
        if betas is None:
            return
        if all(b is INF for b in betas):
            return
        fam = AffineFamily.make(
            [(i + 1, b, i + 1) for i, b in enumerate(betas)],
            self.distance(),
        )
        h_env = eventual_argmin(fam)
        beta_env = betas[h_env - 1]
        if h_env != law.h or beta_env != law.beta:
            raise InternalInconsistency(
                f"sampled law (h={law.h}, beta={law.beta}) disagrees with "
                f"the envelope prediction (h={h_env}, beta={beta_env})"
            )

    def kaplansky_extend(self, g: ValPoly) -> GroupValue:
        """The extension of v to g(x) for a transcendental type: the
        stabilized value of v(g(c_n))."""
        if not self.transcendental:
            raise PreconditionError(
                "value extension needs the transcendental marker"
            )
        if g.is_zero:
            raise PreconditionError("the zero polynomial has no value")
        if g.degree() == 0:
            return g.coeffs[0].val()
        values = self._poly_values(g)
        stab = self._stabilized(values)
        if stab is None:
            raise MarkerViolation(
                f"value of degree-{g.degree()} polynomial not fixed at "
                f"depth {len(self.approximants)}"
            )
        return stab

    def verify_not_fixed_for_minpoly(self, g: ValPoly) -> bool:
        if self.is_trivial:
            raise PreconditionError("needs an immediate type")
        d = self.distance()
        if not d.is_infinite and d.attained:
            raise PreconditionError(
                "distance is attained: the type is not immediate"
            )
        gx = g(self.target)
        try:
            vx = gx.val()
        except IndeterminateValuation:
            vx = None
        if vx is not None and vx is not INF:
            # a truncated target cannot vanish exactly at g; root behavior
            # means v(g(target)) stays strictly above every approximant value
            approx_vals = [
                v for v in self._poly_values(g) if is_finite(v)
            ]
            if approx_vals and vx <= max(approx_vals):
                raise PreconditionError(
                    "target does not behave as a root of the claimed "
                    "minimal polynomial along the approximants"
                )
        return isinstance(self.fixes_value(g), NotFixed)


def pushed_forward(
    A: ApproxType, f: ValPoly, h: int, beta: GroupValue
) -> ApproxType:
    """The type of f(target) over the same ground, with image approximants
    f(c_n) and the distance transported along the affine law."""
    from .ordval import scale_cut, shift_cut

    target = f(A.target)
    hint = shift_cut(beta, scale_cut(h, A.distance()))
    # The affine law only holds eventually, so early image approximants may
    # repeat a distance value; keep the longest suffix along which the
    # distance strictly increases (the tail is cofinal either way).
    images = [f(c) for c in A.approximants]
    start = 0
    prev = None
    for i, c in enumerate(images):
        g = (target - c).val()
        if prev is not None and not g > prev:
            start = i
        prev = g
    return ApproxType(
        target,
        A.ground,
        tuple(images[start:]),
        cofinal=A.cofinal,
        transcendental=A.transcendental,
        distance_hint=hint,
        window=A.window,
        tail_depth=A.tail_depth,
    )
