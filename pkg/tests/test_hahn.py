import random
from fractions import Fraction

import pytest

from apxval.errors import (
    IndeterminateValuation,
    InsufficientPrecision,
    NotRepresentable,
)
from apxval.hahn import (
    Series,
    integers_predicate,
    invert,
    p_power_denominators,
    truncate_to_subfield,
)
from apxval.ordval import INF


def random_series(rng, p, max_terms=12, max_den=60, exact=True):
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        e = Fraction(rng.randint(-30, 30), rng.randint(1, max_den))
        terms.append((e, rng.randint(1, p - 1)))
    prec = INF if exact else Fraction(rng.randint(10, 40))
    return Series.make(p, terms, prec)


def test_val_basic():
    p = 5
    s = Series.make(p, [(Fraction(-1, 2), 1), (1, 1)])
    assert s.val() == Fraction(-1, 2)
    assert Series.zero(p).val() is INF
    with pytest.raises(IndeterminateValuation):
        Series.zero(p, Fraction(3)).val()


def test_add_cancellation_and_mul():
    p = 5
    a = Series.make(p, [(-1, 1), (0, 1)])
    b = Series.make(p, [(-1, p - 1)])
    assert (a + b).terms == ((Fraction(0), 1),)
    x = Series.monomial(p, Fraction(1, 2)) * Series.monomial(p, Fraction(1, 3))
    assert x.terms == ((Fraction(5, 6), 1),)


def test_ultrametric_equality_when_values_differ():
    p = 3
    a = Series.make(p, [(-1, 2)])
    b = Series.make(p, [(0, 1)])
    assert (a + b).val() == -1


def test_precision_propagation():
    p = 3
    a = Series.make(p, [(0, 1)], Fraction(2))
    b = Series.make(p, [(1, 1)], Fraction(5))
    assert (a + b).precision == 2
    prod = a * b
    # min(va + prec_b, vb + prec_a) = min(0 + 5, 1 + 2)
    assert prod.precision == 3


def test_ultrametric_randomized():
    rng = random.Random(2024)
    p = 5
    for _ in range(10_000):
        a = random_series(rng, p, max_terms=6)
        b = random_series(rng, p, max_terms=6)
        va = a.val()
        vb = b.val()
        vs = (a + b).val()
        assert vs >= min(va, vb)
        if va != vb:
            assert vs == min(va, vb)
        if va is not INF and vb is not INF:
            assert (a * b).val() == va + vb


def test_ring_laws_randomized():
    rng = random.Random(99)
    p = 3
    for _ in range(1000):
        a = random_series(rng, p, max_terms=5, max_den=12)
        b = random_series(rng, p, max_terms=5, max_den=12)
        c = random_series(rng, p, max_terms=5, max_den=12)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a


def test_invert_monomial_and_geometric():
    p = 5
    assert invert(Series.monomial(p, Fraction(1, 2)), INF).terms == (
        (Fraction(-1, 2), 1),
    )
    a = Series.make(p, [(0, 1), (1, 1)])
    inv = invert(a, Fraction(4))
    expected = Series.make(p, [(0, 1), (1, p - 1), (2, 1), (3, p - 1)])
    assert inv.truncate(Fraction(4)).terms == expected.terms
    t_shift = Series.make(p, [(1, 1), (2, 1)])
    inv2 = invert(t_shift, Fraction(4))
    rem = t_shift * inv2 - Series.one(p)
    assert (not rem.terms) or rem.terms[0][0] >= 4 - 1


def test_invert_round_trip_randomized():
    rng = random.Random(5)
    p = 5
    for _ in range(1000):
        a = random_series(rng, p, max_terms=6, max_den=10)
        if not a.terms:
            continue
        target = a.val() + rng.randint(1, 8)
        inv = invert(a, target)
        rem = a * inv - Series.one(p)
        if rem.terms:
            assert rem.terms[0][0] >= target - a.val()


def test_invert_requires_precision():
    p = 3
    a = Series.make(p, [(0, 1)], Fraction(2))
    with pytest.raises(InsufficientPrecision):
        invert(a, Fraction(5))


def test_residue():
    p = 5
    assert Series.make(p, [(0, 1), (1, 1)]).residue() == 1
    assert Series.monomial(p, Fraction(1, 2)).residue() == 0
    assert Series.make(p, [(0, 3), (2, 1)]).residue() == 3


def test_truncate_to_subfield_theta_prefix():
    p = 3
    pred = p_power_denominators(p)
    theta = Series.make(
        p, [(Fraction(-1, p**i), 1) for i in range(1, 9)], Fraction(1)
    )
    alpha = Fraction(-1, p**3)
    c = truncate_to_subfield(theta, pred, alpha)
    assert len(c.terms) == 2
    assert (theta - c).val() == alpha


def test_truncate_to_subfield_edges():
    p = 3
    pred = integers_predicate()
    x = Series.monomial(p, Fraction(1, 2))
    assert truncate_to_subfield(x, pred, x.val()).is_exact_zero
    with pytest.raises(NotRepresentable):
        truncate_to_subfield(x, pred, Fraction(1))
