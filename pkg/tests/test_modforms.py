"""Modular building blocks against brute-force oracles and known values."""

from fractions import Fraction

from sheafcount.checks import hurwitz_oracle
from sheafcount.wpoly import WRational
from sheafcount.modforms import (
    blowup_factor,
    eta,
    eta_2tau_pow,
    eta_pow,
    g0,
    g1,
    hclass_series,
    hurwitz,
    hurwitz_cache_load,
    hurwitz_cache_save,
    theta1_tilde_2z,
    theta2_2z_2tau,
    theta3_2z_2tau,
)
from sheafcount.series import PuiseuxSeries


def test_eta_against_product_oracle():
    cut = Fraction(10)
    e = eta(cut)
    prod = PuiseuxSeries.monomial(Fraction(1), Fraction(1, 24), cut + 1)
    for n in range(1, 12):
        factor = PuiseuxSeries.from_terms(
            [(Fraction(0), Fraction(1)), (Fraction(n), Fraction(-1))], cut + 1
        )
        prod = prod * factor
    assert e == prod.truncate(cut)


def test_eta_pow_consistency():
    cut = Fraction(6)
    assert eta_pow(8, cut) == (eta(cut + 1) ** 8).truncate(cut)
    p = eta_pow(4, cut) * eta_pow(-4, cut + Fraction(1, 3))
    assert p == PuiseuxSeries.one(p.cutoff_exp)
    assert eta_pow(0, cut) == PuiseuxSeries.one(cut)


def test_eta_2tau_is_rescaled_eta():
    cut = Fraction(5)
    a = eta_2tau_pow(-4, cut)
    b = eta_pow(-4, Fraction(5, 2)).scale_q(2).truncate(cut)
    assert a == b


def test_theta1_tilde_leading_terms():
    # sum of (-1)^k q^((2k+1)^2/8) (w^(2k+1) - w^(-2k-1))
    th = theta1_tilde_2z(Fraction(3))
    c = th.coefficient(Fraction(1, 8))
    assert c.as_laurent().terms() == [(-1, Fraction(-1)), (1, Fraction(1))]
    c = th.coefficient(Fraction(9, 8))
    assert c.as_laurent().terms() == [(-3, Fraction(1)), (3, Fraction(-1))]
    assert th.coefficient(Fraction(1, 2)) == 0


def test_theta_2tau_blocks():
    t2 = theta2_2z_2tau(Fraction(3))
    assert t2.coefficient(Fraction(1, 4)).as_laurent().terms() == [
        (-1, Fraction(1)),
        (1, Fraction(1)),
    ]
    t3 = theta3_2z_2tau(Fraction(3))
    assert t3.coefficient(0).as_laurent().terms() == [(0, Fraction(1))]
    assert t3.coefficient(1).as_laurent().terms() == [(-2, Fraction(1)), (2, Fraction(1))]


def test_hurwitz_known_values():
    assert hurwitz(0) == Fraction(-1, 12)
    assert hurwitz(3) == Fraction(1, 3)
    assert hurwitz(4) == Fraction(1, 2)
    assert hurwitz(7) == 1
    assert hurwitz(8) == 1
    assert hurwitz(11) == 1
    assert hurwitz(12) == Fraction(4, 3)
    assert hurwitz(16) == Fraction(3, 2)
    assert hurwitz(23) == 3
    assert hurwitz(1) == 0 and hurwitz(2) == 0 and hurwitz(6) == 0


def test_hurwitz_against_unreduced_oracle():
    for n in range(1, 81):
        assert hurwitz(n) == hurwitz_oracle(n), n


def test_hurwitz_cache_roundtrip(tmp_path):
    path = tmp_path / "h.json"
    hurwitz(19)
    assert hurwitz_cache_save(str(path)) > 0
    loaded = hurwitz_cache_load(str(path))
    assert loaded > 0
    assert hurwitz_cache_load(str(tmp_path / "missing.json")) == 0


def test_hclass_series_terms():
    h0 = hclass_series(0, Fraction(3))
    assert h0.coefficient(0) == Fraction(-1, 12)
    assert h0.coefficient(1) == Fraction(1, 2)  # H(4)
    assert h0.coefficient(2) == 1  # H(8)
    h1s = hclass_series(1, Fraction(3))
    assert h1s.coefficient(Fraction(3, 4)) == Fraction(1, 3)  # H(3)
    assert h1s.coefficient(Fraction(7, 4)) == 1  # H(7)


def test_g_blocks_vanish_at_w_equal_one():
    # every q-coefficient is odd under w -> 1/w, so w = 1 kills it
    for g in (g0(Fraction(3)), g1(Fraction(3))):
        for e, c in g.terms():
            assert c.eval_one() == 0, e
    # leading terms: g1 starts at q^(3/4) with w - 1/w, g0's constant
    # term carries the lone 1/2 (times (1 - w^2)/(1 + w^2))
    a = g1(Fraction(2)).coefficient(Fraction(3, 4))
    w = WRational.w_pow(1)
    one = WRational.const(Fraction(1))
    assert a == w - w.inverse()
    b = g0(Fraction(2)).coefficient(Fraction(0))
    assert b * (one + w * w) * WRational.const(Fraction(2)) == one - w * w


def test_blowup_factor_leading_terms():
    b20 = blowup_factor(2, 0, Fraction(2))
    assert b20.min_exp() == Fraction(-1, 12)
    assert b20.coefficient(Fraction(-1, 12)) == 1
    b21 = blowup_factor(2, 1, Fraction(2))
    assert b21.min_exp() == Fraction(1, 6)
    assert b21.coefficient(Fraction(1, 6)) == -2  # the (-1)^k sign
    b30 = blowup_factor(3, 0, Fraction(2))
    assert b30.min_exp() == Fraction(-1, 8)
    assert b30.coefficient(Fraction(-1, 8)) == 1
    # refined blocks at w = 1 give the sign-free unrefined ones
    for r, k in ((2, 0), (2, 1), (3, 0), (3, 1), (3, 2)):
        br = blowup_factor(r, k, Fraction(2), refined=True)
        bu = blowup_factor(r, k, Fraction(2), refined=False)
        sign = -1 if (r, k) in ((2, 1),) else 1
        spun = br.map_coeffs(lambda c: c.eval_one())
        cut = min(spun.cutoff_exp, bu.cutoff_exp)
        assert spun.truncate(cut) == (bu * sign).truncate(cut), (r, k)
