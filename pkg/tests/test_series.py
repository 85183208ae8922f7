"""Truncated q-series on the (1/24)Z exponent lattice.

The cutoff contract is the load-bearing part: every operation must report
exactly how far its result is reliable, and reads beyond that must fail.
"""

import random
from fractions import Fraction

from sheafcount.series import LATTICE_DEN, PuiseuxSeries
from sheafcount.wpoly import WRational


def rand_series(rng, cutoff=3, den=24, unit=False):
    terms = {}
    lo = 0 if unit else rng.randint(-12, 6)
    for e in range(lo, cutoff * den + 1):
        if rng.random() < 0.25:
            terms[e] = Fraction(rng.randint(-9, 9))
    if unit:
        terms[0] = Fraction(rng.choice([1, -1, 2, 3]))
    return PuiseuxSeries(terms, cutoff * den, den)


def test_construction_drops_zeros_and_guards_cutoff():
    s = PuiseuxSeries({0: Fraction(1), 5: Fraction(0)}, 24)
    assert s.support() == [Fraction(0)]
    try:
        PuiseuxSeries({30: Fraction(1)}, 24)
        assert False, "terms beyond the cutoff must be rejected"
    except ValueError:
        pass


def test_coefficient_read_beyond_cutoff_raises():
    s = PuiseuxSeries({0: Fraction(2)}, 24)
    assert s.coefficient(0) == 2
    assert s.coefficient(Fraction(1, 2)) == 0
    try:
        s.coefficient(Fraction(25, 24))
        assert False
    except ValueError:
        pass


def test_add_cutoff_is_min():
    a = PuiseuxSeries({0: Fraction(1)}, 48)
    b = PuiseuxSeries({24: Fraction(2)}, 24)
    c = a + b
    assert c.cutoff == 24
    assert c.coefficient(1) == 2


def test_mul_cutoff_rule():
    # cut(s*t) = min(cut_s + minexp_t, cut_t + minexp_s)
    rng = random.Random(31)
    for _ in range(80):
        s, t = rand_series(rng), rand_series(rng)
        p = s * t
        ms = s._minexp_num()
        mt = t._minexp_num()
        assert p.cutoff == min(s.cutoff + mt, t.cutoff + ms)


def test_ring_identities_through_common_cutoff():
    rng = random.Random(32)
    for _ in range(60):
        a, b, c = rand_series(rng), rand_series(rng), rand_series(rng)
        l = (a + b) * c
        r = a * c + b * c
        cut = min(l.cutoff, r.cutoff)
        assert l.truncate(Fraction(cut, 24)) == r.truncate(Fraction(cut, 24))
        assert a * b == b * a
        assert (a - a).support() == []


def test_invert_oracle():
    rng = random.Random(33)
    for _ in range(60):
        u = rand_series(rng, unit=True)
        v = u.invert()
        assert v.cutoff == u.cutoff - 2 * u._minexp_num()
        p = u * v
        one = PuiseuxSeries.one(p.cutoff_exp)
        assert p == one
    # a series with a fractional leading exponent inverts the same way
    s = PuiseuxSeries({-4: Fraction(3), 1: Fraction(1)}, 24)
    p = s * s.invert()
    assert p.coefficient(0) == 1
    assert len(p.support()) == 1


def test_invert_rejects_zero():
    try:
        PuiseuxSeries.zero(2).invert()
        assert False
    except ValueError:
        pass


def test_pow_matches_repeated_mul():
    rng = random.Random(34)
    s = rand_series(rng, unit=True)
    p3 = s**3
    m3 = s * s * s
    cut = min(p3.cutoff, m3.cutoff)
    assert p3.truncate(Fraction(cut, 24)) == m3.truncate(Fraction(cut, 24))


def test_scale_shift_truncate():
    s = PuiseuxSeries({-4: Fraction(1), 2: Fraction(5)}, 24)
    t = s.scale_q(2)
    assert t.support() == [Fraction(-8, 24), Fraction(4, 24)]
    assert t.cutoff == 48
    u = s.shift_q(Fraction(1, 2))
    assert u.support() == [Fraction(8, 24), Fraction(14, 24)]
    assert u.cutoff == 36
    v = u.truncate(Fraction(9, 24))
    assert v.cutoff == 9
    assert v.support() == [Fraction(8, 24)]
    try:
        v.truncate(Fraction(10, 24))
        assert False, "truncate must not extend the cutoff"
    except ValueError:
        pass


def test_monomial_and_from_terms():
    m = PuiseuxSeries.monomial(Fraction(7), Fraction(1, 3), 2)
    assert m.coefficient(Fraction(1, 3)) == 7
    s = PuiseuxSeries.from_terms(
        [(Fraction(1, 2), Fraction(1)), (Fraction(1, 2), Fraction(2))], 2
    )
    assert s.coefficient(Fraction(1, 2)) == 3  # accumulates


def test_map_coeffs_and_substitute_w_power():
    w = WRational.w_pow(1)
    s = PuiseuxSeries({0: w + 1, 24: w}, 24)
    d = s.map_coeffs(lambda c: c * 2)
    assert d.coefficient(0) == 2 * (w + 1)
    t = s.substitute_w_power(3)
    assert t.coefficient(1) == WRational.w_pow(3)


def test_serialization_roundtrip():
    rng = random.Random(35)
    for _ in range(20):
        s = rand_series(rng)
        assert PuiseuxSeries.from_dict(s.to_dict()) == s
    # refined coefficients serialize too
    w = WRational.w_pow(2) - WRational.w_pow(-2)
    pole = WRational.const(1) / (WRational.w_pow(1) - WRational.w_pow(-1))
    s = PuiseuxSeries({-8: w, 0: pole, 7: WRational.const(Fraction(3, 4))}, 24)
    back = PuiseuxSeries.from_dict(s.to_dict())
    assert back == s


def test_incompatible_lattice_rejected():
    a = PuiseuxSeries({0: Fraction(1)}, 24, den=24)
    b = PuiseuxSeries({0: Fraction(1)}, 8, den=8)
    try:
        a + b
        assert False
    except ValueError:
        pass
