"""Laurent polynomials and rational functions in one variable w over Q.

These are the coefficient rings for the refined series: a refined invariant
is a rational function of w (poles only at roots of short products of theta
prefactor divisors such as w - w^-1 or 1 + w^2), while every unrefined
quantity lives in plain Q.

WLaurent stores w^off * (integer polynomial) / den with den a positive
integer, so all heavy arithmetic is integer convolution.  WRational is a
reduced fraction num/den of a WLaurent numerator by a primitive integer
polynomial denominator normalized to minimal w-exponent 0 and positive
leading coefficient; equal values always have equal representations, so
equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from ._kernels import content, conv, divexact, poly_gcd


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class WLaurent:
    """Laurent polynomial in w with rational coefficients."""

    __slots__ = ("off", "num", "den")

    def __init__(self, off: int, num, den: int = 1, _normalized: bool = False):
        if _normalized:
            self.off = off
            self.num = tuple(num)
            self.den = den
            return
        num = list(num)
        while num and not num[-1]:
            num.pop()
        k = 0
        while k < len(num) and not num[k]:
            k += 1
        num = num[k:]
        off += k
        if not num:
            self.off = 0
            self.num = ()
            self.den = 1
            return
        if den < 0:
            den = -den
            num = [-x for x in num]
        g = gcd(content(num), den)
        if g > 1:
            num = [x // g for x in num]
            den //= g
        self.off = off
        self.num = tuple(num)
        self.den = den

    @staticmethod
    def zero() -> "WLaurent":
        return WLaurent(0, (), 1, _normalized=True)

    @staticmethod
    def const(c) -> "WLaurent":
        c = _as_fraction(c)
        if not c:
            return WLaurent.zero()
        return WLaurent(0, (c.numerator,), c.denominator, _normalized=True)

    @staticmethod
    def w_pow(k: int, coeff=1) -> "WLaurent":
        c = _as_fraction(coeff)
        if not c:
            return WLaurent.zero()
        return WLaurent(k, (c.numerator,), c.denominator, _normalized=True)

    @staticmethod
    def from_terms(terms) -> "WLaurent":
        """Build from an iterable (or mapping) of (w-exponent, coefficient)."""
        if hasattr(terms, "items"):
            terms = terms.items()
        acc: dict[int, Fraction] = {}
        for e, c in terms:
            c = _as_fraction(c)
            if c:
                acc[e] = acc.get(e, Fraction(0)) + c
        acc = {e: c for e, c in acc.items() if c}
        if not acc:
            return WLaurent.zero()
        lo = min(acc)
        hi = max(acc)
        den = lcm(*(c.denominator for c in acc.values()))
        num = [0] * (hi - lo + 1)
        for e, c in acc.items():
            num[e - lo] = c.numerator * (den // c.denominator)
        return WLaurent(lo, num, den)

    def __bool__(self) -> bool:
        return bool(self.num)

    def terms(self) -> list[tuple[int, Fraction]]:
        return [
            (self.off + i, Fraction(c, self.den))
            for i, c in enumerate(self.num)
            if c
        ]

    def coeff(self, e: int) -> Fraction:
        i = e - self.off
        if 0 <= i < len(self.num):
            return Fraction(self.num[i], self.den)
        return Fraction(0)

    def eval_one(self) -> Fraction:
        return Fraction(sum(self.num), self.den)

    def mirror(self) -> "WLaurent":
        """Substitution w -> 1/w."""
        if not self.num:
            return self
        return WLaurent(
            -(self.off + len(self.num) - 1), tuple(reversed(self.num)), self.den
        )

    def subs_w_power(self, m: int) -> "WLaurent":
        """Substitution w -> w^m for a nonzero integer m."""
        if m == 0:
            raise ValueError("w -> w^0 is not a ring substitution")
        s = self if m > 0 else self.mirror()
        m = abs(m)
        if m == 1 or not s.num:
            return s
        num = [0] * ((len(s.num) - 1) * m + 1)
        for i, c in enumerate(s.num):
            num[i * m] = c
        return WLaurent(s.off * m, num, s.den, _normalized=True)

    def __neg__(self) -> "WLaurent":
        return WLaurent(self.off, tuple(-x for x in self.num), self.den, _normalized=True)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WLaurent.const(other)
        if not isinstance(other, WLaurent):
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        lo = min(self.off, other.off)
        hi = max(self.off + len(self.num), other.off + len(other.num))
        den = lcm(self.den, other.den)
        num = [0] * (hi - lo)
        fa = den // self.den
        for i, c in enumerate(self.num):
            num[self.off - lo + i] = c * fa
        fb = den // other.den
        for i, c in enumerate(other.num):
            num[other.off - lo + i] += c * fb
        return WLaurent(lo, num, den)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WLaurent.const(other)
        if not isinstance(other, WLaurent):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c or not self.num:
                return WLaurent.zero()
            return WLaurent(
                self.off,
                [x * c.numerator for x in self.num],
                self.den * c.denominator,
            )
        if not isinstance(other, WLaurent):
            return NotImplemented
        if not self.num or not other.num:
            return WLaurent.zero()
        return WLaurent(
            self.off + other.off,
            conv(list(self.num), list(other.num)),
            self.den * other.den,
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = WLaurent.const(other)
        if not isinstance(other, WLaurent):
            return NotImplemented
        return self.off == other.off and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.off, self.num, self.den))

    def __repr__(self) -> str:
        if not self.num:
            return "WLaurent(0)"
        parts = []
        for e, c in self.terms():
            parts.append(f"{c}*w^{e}" if e else f"{c}")
        return "WLaurent(" + " + ".join(parts) + ")"


def _den_one() -> tuple[int, ...]:
    return (1,)


class WRational:
    """Reduced fraction of a WLaurent by a primitive integer polynomial."""

    __slots__ = ("nu", "de")

    def __init__(self, nu: WLaurent, de: tuple[int, ...], _normalized: bool = False):
        if _normalized:
            self.nu = nu
            self.de = de
            return
        norm = _reduce(nu, de)
        self.nu = norm.nu
        self.de = norm.de

    @staticmethod
    def from_laurent(wl: WLaurent) -> "WRational":
        return WRational(wl, _den_one(), _normalized=True)

    @staticmethod
    def const(c) -> "WRational":
        return WRational.from_laurent(WLaurent.const(c))

    @staticmethod
    def w_pow(k: int, coeff=1) -> "WRational":
        return WRational.from_laurent(WLaurent.w_pow(k, coeff))

    @staticmethod
    def zero() -> "WRational":
        return WRational.from_laurent(WLaurent.zero())

    def __bool__(self) -> bool:
        return bool(self.nu)

    @property
    def is_laurent(self) -> bool:
        return self.de == (1,)

    def as_laurent(self) -> WLaurent:
        if self.de != (1,):
            raise ValueError("nontrivial denominator: not a Laurent polynomial")
        return self.nu

    def eval_one(self) -> Fraction:
        d = sum(self.de)
        if d == 0:
            raise ValueError("denominator vanishes at w = 1")
        return self.nu.eval_one() / d

    def subs_w_power(self, m: int) -> "WRational":
        de_l = WLaurent(0, self.de, 1, _normalized=True).subs_w_power(m)
        return _div_laurent(self.nu.subs_w_power(m), de_l)

    def to_pairs(self):
        num_pairs = self.nu.terms()
        den_pairs = [(i, Fraction(c)) for i, c in enumerate(self.de) if c]
        return num_pairs, den_pairs

    def __neg__(self) -> "WRational":
        return WRational(-self.nu, self.de, _normalized=True)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.nu:
            return other
        if not other.nu:
            return self
        if self.de == other.de:
            s = self.nu + other.nu
            if self.de == (1,):
                return WRational.from_laurent(s)
            return _reduce(s, self.de)
        d1 = WLaurent(0, self.de, 1, _normalized=True)
        d2 = WLaurent(0, other.de, 1, _normalized=True)
        num = self.nu * d2 + other.nu * d1
        return _reduce(num, conv(list(self.de), list(other.de)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.nu or not other.nu:
            return WRational.zero()
        if self.de == (1,) and other.de == (1,):
            return WRational.from_laurent(self.nu * other.nu)
        return _reduce(self.nu * other.nu, conv(list(self.de), list(other.de)))

    __rmul__ = __mul__

    def inverse(self) -> "WRational":
        if not self.nu:
            raise ZeroDivisionError("inverse of zero")
        # (w^off p / c) / d  ->  (c d w^-off) / p
        p = self.nu
        de_l = WLaurent(0, self.de, 1, _normalized=True)
        new_nu = de_l * WLaurent.w_pow(-p.off, Fraction(p.den))
        return _div_laurent(new_nu, WLaurent(0, p.num, 1, _normalized=True))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = WRational.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.nu == other.nu and self.de == other.de

    def __hash__(self):
        return hash((self.nu, self.de))

    def __repr__(self) -> str:
        if self.de == (1,):
            return f"WRational({self.nu!r})"
        return f"WRational({self.nu!r} / {list(self.de)})"


def _coerce(x):
    if isinstance(x, WRational):
        return x
    if isinstance(x, WLaurent):
        return WRational.from_laurent(x)
    if isinstance(x, (int, Fraction)):
        return WRational.const(x)
    return NotImplemented


def _reduce(nu: WLaurent, de) -> WRational:
    """Normalize nu / de with de given as an integer coefficient list."""
    de = list(de)
    while de and not de[-1]:
        de.pop()
    if not de:
        raise ZeroDivisionError("zero denominator")
    if not nu:
        return WRational(WLaurent.zero(), _den_one(), _normalized=True)
    k = 0
    while not de[k]:
        k += 1
    if k:
        de = de[k:]
        nu = WLaurent(nu.off - k, nu.num, nu.den, _normalized=True)
    if de[-1] < 0:
        de = [-x for x in de]
        nu = -nu
    c = content(de)
    if c > 1:
        de = [x // c for x in de]
        nu = nu * Fraction(1, c)
    if len(de) > 1:
        g = poly_gcd(list(nu.num), de)
        if len(g) > 1:
            de = divexact(de, g)
            cn = content(list(nu.num))
            prim = [x // cn for x in nu.num]
            nu = WLaurent(nu.off, divexact(prim, g), nu.den, _normalized=False) * cn
    if de == [1]:
        return WRational(nu, _den_one(), _normalized=True)
    return WRational(nu, tuple(de), _normalized=True)


def _div_laurent(nu: WLaurent, de: WLaurent) -> WRational:
    """Normalize nu / de with a WLaurent denominator (units moved to nu)."""
    if not de:
        raise ZeroDivisionError("zero denominator")
    nu = nu * WLaurent.w_pow(-de.off, Fraction(de.den))
    return _reduce(nu, list(de.num))
