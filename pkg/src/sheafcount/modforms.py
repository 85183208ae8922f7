"""Exact q-expansions of the modular building blocks.

Everything is a PuiseuxSeries on the (1/24)Z exponent lattice.  Unrefined
blocks (eta powers, Hurwitz class number series, rank-2/3 theta sums) have
Fraction coefficients; refined blocks carry WRational coefficients in the
fugacity variable w.

Conventions:
  eta      = q^(1/24) prod (1-q^n)
  theta1t  = "theta_1 tilde": -i * theta_1(2z,tau), which makes the
             coefficients rational: sum over r in Z+1/2 of
             (-1)^(r-1/2) q^(r^2/2) w^(2r).  Its leading term is
             q^(1/8) (w - w^-1), so no complex numbers are needed anywhere.
  H(0)     = -1/12 (Zagier's convention), H(n) = 0 for n = 1, 2 mod 4.
"""

from __future__ import annotations

import json
import math
import os
from fractions import Fraction

from .series import LATTICE_DEN, PuiseuxSeries, qexp_num
from .wpoly import WLaurent, WRational


def eta(cutoff) -> PuiseuxSeries:
    """Dedekind eta: q^(1/24) prod (1-q^n), by the pentagonal number theorem."""
    T = qexp_num(cutoff)
    terms: dict[int, Fraction] = {}
    k = 0
    while True:
        # exponents (6k-1)^2/24 for k in Z, signs (-1)^k
        hit = False
        for kk in (k, -k) if k else (0,):
            e = (6 * kk - 1) ** 2
            if e <= T:
                terms[e] = Fraction(-1 if kk % 2 else 1)
                hit = True
        if not hit and (6 * k - 1) ** 2 > T and (6 * k + 1) ** 2 > T:
            break
        k += 1
    return PuiseuxSeries(terms, T)


def eta_pow(p: int, cutoff) -> PuiseuxSeries:
    """eta(tau)^p for any integer p, exact through cutoff."""
    T = qexp_num(cutoff)
    if p == 0:
        return PuiseuxSeries({0: Fraction(1)}, T)
    n = abs(p)
    base_cut = T + (n + 1 if p < 0 else 1 - n)  # minexp(eta) = 1/24
    s = eta(Fraction(base_cut, LATTICE_DEN))
    s = s**n
    if p < 0:
        s = s.invert()
    return s.truncate(Fraction(T, LATTICE_DEN))


def eta_2tau_pow(p: int, cutoff) -> PuiseuxSeries:
    """eta(2 tau)^p."""
    T = qexp_num(cutoff)
    half = Fraction((T + 1) // 2 + 1, LATTICE_DEN)
    return eta_pow(p, half).scale_q(2).truncate(Fraction(T, LATTICE_DEN))


def theta1_tilde_2z(cutoff) -> PuiseuxSeries:
    """-i theta_1(2z, tau): sum of (-1)^k q^((2k+1)^2/8) (w^(2k+1) - w^(-2k-1))."""
    T = qexp_num(cutoff)
    terms = {}
    k = 0
    while 3 * (2 * k + 1) ** 2 <= T:
        c = WRational.from_laurent(
            WLaurent.from_terms({2 * k + 1: (-1) ** k, -2 * k - 1: -((-1) ** k)})
        )
        terms[3 * (2 * k + 1) ** 2] = c
        k += 1
    return PuiseuxSeries(terms, T)


def theta2_2z_2tau(cutoff) -> PuiseuxSeries:
    """theta_2(2z, 2tau) = sum over r in Z+1/2 of q^(r^2) w^(2r)."""
    T = qexp_num(cutoff)
    terms = {}
    k = 0
    while 6 * (2 * k + 1) ** 2 <= T:
        c = WRational.from_laurent(WLaurent.from_terms({2 * k + 1: 1, -2 * k - 1: 1}))
        terms[6 * (2 * k + 1) ** 2] = c
        k += 1
    return PuiseuxSeries(terms, T)


def theta3_2z_2tau(cutoff) -> PuiseuxSeries:
    """theta_3(2z, 2tau) = sum over n in Z of q^(n^2) w^(2n)."""
    T = qexp_num(cutoff)
    terms = {}
    if T >= 0:
        terms[0] = WRational.const(1)
    n = 1
    while 24 * n * n <= T:
        terms[24 * n * n] = WRational.from_laurent(
            WLaurent.from_terms({2 * n: 1, -2 * n: 1})
        )
        n += 1
    return PuiseuxSeries(terms, T)


# -- Hurwitz class numbers -------------------------------------------------

_hurwitz_cache: dict[int, Fraction] = {0: Fraction(-1, 12)}


def hurwitz(n: int) -> Fraction:
    """Hurwitz class number H(n) by reduced-form enumeration.

    Counts SL(2,Z)-classes of positive definite forms a x^2 + b xy + c y^2
    of discriminant b^2 - 4ac = -n via reduced representatives
    -a < b <= a <= c (b >= 0 when a = c), weighting the two classes with
    extra automorphisms by 1/2 (b = 0, a = c) and 1/3 (a = b = c).
    """
    if n < 0:
        raise ValueError("H(n) needs n >= 0")
    got = _hurwitz_cache.get(n)
    if got is not None:
        return got
    if n % 4 in (1, 2):
        val = Fraction(0)
    else:
        val = Fraction(0)
        a = 1
        while 3 * a * a <= n:
            for b in range(-a + 1, a + 1):
                if (n + b * b) % (4 * a):
                    continue
                c = (n + b * b) // (4 * a)
                if c < a:
                    continue
                if a == c and b < 0:
                    continue
                if a == b == c:
                    val += Fraction(1, 3)
                elif b == 0 and a == c:
                    val += Fraction(1, 2)
                else:
                    val += 1
            a += 1
    _hurwitz_cache[n] = val
    return val


def hurwitz_cache_load(path: str) -> int:
    """Merge a JSON table {n: "p/q"} into the in-memory cache."""
    if not os.path.exists(path):
        return 0
    with open(path) as f:
        data = json.load(f)
    for k, v in data.items():
        _hurwitz_cache[int(k)] = Fraction(v)
    return len(data)


def hurwitz_cache_save(path: str) -> int:
    with open(path, "w") as f:
        json.dump(
            {str(k): f"{v.numerator}/{v.denominator}"
             for k, v in sorted(_hurwitz_cache.items())},
            f,
        )
    return len(_hurwitz_cache)


def hclass_series(j: int, cutoff) -> PuiseuxSeries:
    """Class number series: sum over n >= 0 of H(4n+3j) q^(n + 3j/4), j in {0,1}."""
    if j not in (0, 1):
        raise ValueError("j must be 0 or 1")
    T = qexp_num(cutoff)
    terms = {}
    n = 0
    while 24 * n + 18 * j <= T:
        h = hurwitz(4 * n + 3 * j)
        if h:
            terms[24 * n + 18 * j] = h
        n += 1
    return PuiseuxSeries(terms, T)


# -- Appell-type blocks g0, g1 ----------------------------------------------


def _appell_sum(shift: int, cutoff) -> PuiseuxSeries:
    """sum over n in Z of q^(n^2 + shift*n) w^(-2n) / (1 - q^(2n-1) w^4).

    shift is 1 for the g0 block and 0 for the g1 block.  The geometric
    expansion keeps only positive q-powers: for 2n-1 > 0 the factor expands
    as sum_{k>=0} q^((2n-1)k) w^(4k); for 2n-1 < 0 it is rewritten as
    -q^(1-2n) w^-4 / (1 - q^(1-2n) w^-4), i.e. minus the k >= 1 tail with
    negative w-powers.
    """
    T = qexp_num(cutoff)
    acc: dict[int, WLaurent] = {}

    def put(qnum: int, wexp: int, sign: int):
        old = acc.get(qnum, WLaurent.zero())
        acc[qnum] = old + WLaurent.w_pow(wexp, sign)

    n = 1
    while 24 * (n * n + shift * n) <= T:
        base = n * n + shift * n
        k = 0
        while 24 * (base + (2 * n - 1) * k) <= T:
            put(24 * (base + (2 * n - 1) * k), -2 * n + 4 * k, 1)
            k += 1
        n += 1
    n = 0
    while True:
        base = n * n + shift * n
        step = 1 - 2 * n  # positive for n <= 0
        if 24 * (base + step) > T:
            break
        k = 1
        while 24 * (base + step * k) <= T:
            put(24 * (base + step * k), -2 * n - 4 * k, -1)
            k += 1
        n -= 1
    terms = {e: WRational.from_laurent(c) for e, c in acc.items() if c}
    return PuiseuxSeries(terms, T)


def g0(cutoff) -> PuiseuxSeries:
    """g_0 = 1/2 + q^(-3/4) w^5 theta_2(2z,2tau)^(-1) * Appell block."""
    T = qexp_num(cutoff)
    pad = Fraction(T + 48, LATTICE_DEN)
    a = _appell_sum(1, pad)
    th = theta2_2z_2tau(pad)
    s = (a * th.invert()).shift_q(Fraction(-3, 4)) * WRational.w_pow(5)
    half = PuiseuxSeries({0: WRational.const(Fraction(1, 2))}, s.cutoff)
    out = s + half
    if out.cutoff < T:
        raise AssertionError("internal cutoff bookkeeping error in g0")
    return out.truncate(Fraction(T, LATTICE_DEN))


def g1(cutoff) -> PuiseuxSeries:
    """g_1 = q^(-1/4) w^3 theta_3(2z,2tau)^(-1) * Appell block."""
    T = qexp_num(cutoff)
    pad = Fraction(T + 48, LATTICE_DEN)
    a = _appell_sum(0, pad)
    th = theta3_2z_2tau(pad)
    s = (a * th.invert()).shift_q(Fraction(-1, 4)) * WRational.w_pow(3)
    if s.cutoff < T:
        raise AssertionError("internal cutoff bookkeeping error in g1")
    return s.truncate(Fraction(T, LATTICE_DEN))


# -- blow-up factors ---------------------------------------------------------


def blowup_factor(r: int, k: int, cutoff, refined: bool = False) -> PuiseuxSeries:
    """Blow-up factor B_{r,k}.

    r = 2: (-1)^k (sum over n in Z+k/2 of q^(n^2)) / eta^2, and the refined
    version sum q^(n^2) w^(2n) / eta^2 without the sign factor, exactly as
    the two definitions are printed.
    r = 3: (sum over m,n in Z+k/3 of q^(m^2+n^2+mn) [w^(4m+2n)]) / eta^3.
    """
    if r == 2:
        k = k % 2
        T = qexp_num(cutoff)
        TT = T + 2  # eta^-2 minexp is -1/12
        theta: dict[int, object] = {}

        def put2(qnum, wexp, val):
            if refined:
                old = theta.get(qnum, WLaurent.zero())
                theta[qnum] = old + WLaurent.w_pow(wexp, val)
            else:
                theta[qnum] = theta.get(qnum, Fraction(0)) + val

        j = 0
        while True:
            nn = Fraction(2 * j + k, 2)  # n = j + k/2 >= 0 branch
            e = qexp_num(nn * nn)
            if e > TT:
                break
            if nn == 0:
                put2(e, 0, 1)
            else:
                put2(e, 2 * j + k, 1)
                put2(e, -2 * j - k, 1)
            j += 1
        sgn = -1 if (k and not refined) else 1
        th = PuiseuxSeries(
            {e: (v if sgn > 0 else -v) for e, v in theta.items() if v}, TT
        )
        if refined:
            th = th.map_coeffs(WRational.from_laurent)
        out = th * eta_pow(-2, Fraction(TT, LATTICE_DEN))
        return out.truncate(Fraction(T, LATTICE_DEN))
    if r == 3:
        k = k % 3
        T = qexp_num(cutoff)
        TT = T + 3  # eta^-3 minexp is -1/8
        theta = {}
        # m = u + k/3, n = v + k/3; Q = m^2 + n^2 + mn, w-power 4m + 2n
        # Q >= (3/4) n^2 and Q >= (3/4) m^2 bound the search window.
        lim = 1
        while qexp_num(Fraction(3 * lim * lim, 4)) <= TT + 24:
            lim += 1
        for u in range(-lim - 1, lim + 2):
            m = Fraction(3 * u + k, 3)
            for v in range(-lim - 1, lim + 2):
                n = Fraction(3 * v + k, 3)
                Q = m * m + n * n + m * n
                e = (Q * LATTICE_DEN)
                if e.denominator != 1:
                    raise AssertionError("off-lattice exponent in B_3")
                e = int(e)
                if e > TT or e < 0:
                    continue
                if refined:
                    wexp = 4 * m + 2 * n
                    assert wexp.denominator == 1
                    old = theta.get(e, WLaurent.zero())
                    theta[e] = old + WLaurent.w_pow(int(wexp), 1)
                else:
                    theta[e] = theta.get(e, Fraction(0)) + 1
        th = PuiseuxSeries({e: v for e, v in theta.items() if v}, TT)
        if refined:
            th = th.map_coeffs(WRational.from_laurent)
        out = th * eta_pow(-3, Fraction(TT, LATTICE_DEN))
        return out.truncate(Fraction(T, LATTICE_DEN))
    raise ValueError("blow-up factors are implemented for r = 2, 3")
