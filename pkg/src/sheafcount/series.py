"""Truncated Puiseux series in q on a fixed fractional exponent lattice.

Every series in this package has exponents on (1/24)Z, the lattice generated
by the eta quotient and theta prefactor normalizations that appear in the
generating functions.  Exponents are stored as integer numerators over a
construct-time lattice denominator (default 24), so exponent arithmetic is
pure integer arithmetic.

A series carries a cutoff and is exact through it: every coefficient with
exponent <= cutoff is stored exactly (absent means zero), and nothing is
claimed beyond.  Cutoffs propagate through arithmetic:

    add:      min(s.cutoff, t.cutoff)
    mul:      min(s.cutoff + minexp(t), t.cutoff + minexp(s))
    invert:   s.cutoff - 2*minexp(s)
    scale_q:  k * s.cutoff

where minexp of a series with no stored terms is taken to be its cutoff
(the first unknown exponent is just beyond it).

Coefficients are exact rationals (fractions.Fraction) for the unrefined
series and WRational (rational functions of w) for the refined ones; any
coefficient object supporting +, *, unary -, bool and equality works.
"""

from __future__ import annotations

from fractions import Fraction

from .wpoly import WLaurent, WRational

LATTICE_DEN = 24


def qexp_num(e, den: int = LATTICE_DEN) -> int:
    """Exponent as an integer numerator over den; rejects off-lattice input."""
    if isinstance(e, int):
        return e * den
    e = Fraction(e)
    n = e * den
    if n.denominator != 1:
        raise ValueError(f"exponent {e} is not on the (1/{den})Z lattice")
    return int(n)


def _recip(c):
    if isinstance(c, WRational):
        return c.inverse()
    if isinstance(c, WLaurent):
        return WRational.from_laurent(c).inverse()
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


class PuiseuxSeries:
    """Sparse exact q-series with fractional exponents and a hard cutoff."""

    __slots__ = ("den", "cutoff", "_c")

    def __init__(self, coeffs: dict, cutoff: int, den: int = LATTICE_DEN):
        """Low-level constructor: coeffs keyed by integer exponent numerators."""
        if den < 1:
            raise ValueError("lattice denominator must be positive")
        self.den = den
        self.cutoff = cutoff
        c = {}
        for e, v in coeffs.items():
            if e > cutoff:
                raise ValueError(
                    f"term at exponent {Fraction(e, den)} lies beyond cutoff "
                    f"{Fraction(cutoff, den)}"
                )
            if v:
                c[e] = v
        self._c = c

    @classmethod
    def from_terms(cls, terms, cutoff, den: int = LATTICE_DEN) -> "PuiseuxSeries":
        """Build from (exponent, coefficient) pairs with Fraction exponents."""
        if hasattr(terms, "items"):
            terms = terms.items()
        acc: dict = {}
        for e, v in terms:
            n = qexp_num(e, den)
            acc[n] = acc.get(n, 0) + v
        return cls(acc, qexp_num(cutoff, den), den)

    @classmethod
    def zero(cls, cutoff, den: int = LATTICE_DEN) -> "PuiseuxSeries":
        return cls({}, qexp_num(cutoff, den), den)

    @classmethod
    def one(cls, cutoff, den: int = LATTICE_DEN) -> "PuiseuxSeries":
        return cls({0: Fraction(1)}, qexp_num(cutoff, den), den)

    @classmethod
    def monomial(cls, coeff, e, cutoff, den: int = LATTICE_DEN) -> "PuiseuxSeries":
        return cls({qexp_num(e, den): coeff}, qexp_num(cutoff, den), den)

    # -- inspection -------------------------------------------------------

    def terms(self) -> list:
        return [(Fraction(e, self.den), v) for e, v in sorted(self._c.items())]

    def support(self) -> list:
        return [Fraction(e, self.den) for e in sorted(self._c)]

    @property
    def cutoff_exp(self) -> Fraction:
        return Fraction(self.cutoff, self.den)

    def min_exp(self):
        """Smallest stored exponent, or None for a series zero through cutoff."""
        if not self._c:
            return None
        return Fraction(min(self._c), self.den)

    def _minexp_num(self) -> int:
        return min(self._c) if self._c else self.cutoff

    def coefficient(self, e):
        """Exact coefficient at exponent e; e must not exceed the cutoff."""
        n = qexp_num(e, self.den)
        if n > self.cutoff:
            raise ValueError(
                f"exponent {Fraction(n, self.den)} is beyond the cutoff "
                f"{self.cutoff_exp}: coefficient unknown"
            )
        return self._c.get(n, 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (
            self.den == other.den
            and self.cutoff == other.cutoff
            and self._c == other._c
        )

    __hash__ = None  # mutable-dict backed

    # -- ring operations --------------------------------------------------

    def _check_compat(self, other: "PuiseuxSeries"):
        if self.den != other.den:
            raise ValueError("mixed exponent lattices")

    def __add__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        self._check_compat(other)
        cutoff = min(self.cutoff, other.cutoff)
        out = {}
        for e, v in self._c.items():
            if e <= cutoff:
                out[e] = v
        for e, v in other._c.items():
            if e <= cutoff:
                s = out.get(e, 0) + v
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return PuiseuxSeries(out, cutoff, self.den)

    def __neg__(self):
        return PuiseuxSeries({e: -v for e, v in self._c.items()}, self.cutoff, self.den)

    def __sub__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PuiseuxSeries):
            self._check_compat(other)
            cutoff = min(
                self.cutoff + other._minexp_num(),
                other.cutoff + self._minexp_num(),
            )
            out: dict = {}
            bitems = sorted(other._c.items())
            for ea, va in self._c.items():
                for eb, vb in bitems:
                    e = ea + eb
                    if e > cutoff:
                        break
                    p = va * vb
                    s = out.get(e, 0) + p
                    if s:
                        out[e] = s
                    else:
                        out.pop(e, None)
            return PuiseuxSeries(out, cutoff, self.den)
        # scalar
        if not other:
            return PuiseuxSeries({}, self.cutoff, self.den)
        return PuiseuxSeries(
            {e: v * other for e, v in self._c.items()}, self.cutoff, self.den
        )

    def __rmul__(self, other):
        return self.__mul__(other)

    def invert(self) -> "PuiseuxSeries":
        """Multiplicative inverse, exact through cutoff - 2*minexp."""
        if not self._c:
            raise ValueError("series with no terms through its cutoff is not invertible")
        m = min(self._c)
        cutoff = self.cutoff - 2 * m
        span = self.cutoff - m  # known offsets above the leading term
        r0 = _recip(self._c[m])
        # tail t with t_d = a_{m+d} / a_m, d >= 1; u = 1/(1+t) by recurrence
        t = {}
        for e, v in self._c.items():
            if e != m:
                t[e - m] = v * r0
        tsupp = sorted(t)
        u = {0: 1}
        for k in range(1, span + 1):
            acc = 0
            for d in tsupp:
                if d > k:
                    break
                uk = u.get(k - d)
                if uk is not None:
                    acc = acc - t[d] * uk
            if acc:
                u[k] = acc
        out = {}
        for k, v in u.items():
            c = r0 * v if k else r0
            if c:
                out[k - m] = c
        return PuiseuxSeries(out, cutoff, self.den)

    def __truediv__(self, other):
        if isinstance(other, PuiseuxSeries):
            return self * other.invert()
        return self * _recip(other)

    def __pow__(self, n: int) -> "PuiseuxSeries":
        if not isinstance(n, int):
            raise TypeError("powers must be integers")
        if n < 0:
            return self.invert() ** (-n)
        if n == 0:
            return PuiseuxSeries.one(self.cutoff_exp, self.den)
        out = None
        base = self
        while n:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- reparametrizations ------------------------------------------------

    def scale_q(self, k: int) -> "PuiseuxSeries":
        """Substitution q -> q^k for a positive integer k."""
        if not isinstance(k, int) or k < 1:
            raise ValueError("q -> q^k needs a positive integer k")
        return PuiseuxSeries(
            {e * k: v for e, v in self._c.items()}, self.cutoff * k, self.den
        )

    def shift_q(self, e) -> "PuiseuxSeries":
        """Multiplication by the monomial q^e."""
        n = qexp_num(e, self.den)
        return PuiseuxSeries(
            {k + n: v for k, v in self._c.items()}, self.cutoff + n, self.den
        )

    def truncate(self, cutoff) -> "PuiseuxSeries":
        n = qexp_num(cutoff, self.den)
        if n > self.cutoff:
            raise ValueError(
                f"cannot extend cutoff {self.cutoff_exp} to {Fraction(n, self.den)}"
            )
        return PuiseuxSeries(
            {e: v for e, v in self._c.items() if e <= n}, n, self.den
        )

    def map_coeffs(self, fn) -> "PuiseuxSeries":
        return PuiseuxSeries(
            {e: fn(v) for e, v in self._c.items()}, self.cutoff, self.den
        )

    def substitute_w_power(self, m: int) -> "PuiseuxSeries":
        """Apply w -> w^m to every (w-valued) coefficient."""
        return self.map_coeffs(lambda c: c.subs_w_power(m))

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "lattice_den": self.den,
            "cutoff": self.cutoff,
            "terms": [
                {"q_num": e, "coeff": _encode_coeff(v)}
                for e, v in sorted(self._c.items())
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PuiseuxSeries":
        den = d["lattice_den"]
        coeffs = {t["q_num"]: _decode_coeff(t["coeff"]) for t in d["terms"]}
        return cls(coeffs, d["cutoff"], den)

    def __repr__(self) -> str:
        parts = [f"{v}*q^({e})" for e, v in self.terms()[:6]]
        if len(self._c) > 6:
            parts.append("...")
        body = " + ".join(parts) if parts else "0"
        return f"PuiseuxSeries({body}; cutoff={self.cutoff_exp})"


def _encode_fraction(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _encode_coeff(v):
    if isinstance(v, int):
        v = Fraction(v)
    if isinstance(v, Fraction):
        return _encode_fraction(v)
    if isinstance(v, WLaurent):
        v = WRational.from_laurent(v)
    if isinstance(v, WRational):
        num_pairs, den_pairs = v.to_pairs()
        return {
            "num": [[e, _encode_fraction(c)] for e, c in num_pairs],
            "den": [[e, _encode_fraction(c)] for e, c in den_pairs],
        }
    raise TypeError(f"cannot serialize coefficient of type {type(v).__name__}")


def _decode_coeff(d):
    if isinstance(d, str):
        return Fraction(d)
    num = WLaurent.from_terms([(e, Fraction(c)) for e, c in d["num"]])
    den = WLaurent.from_terms([(e, Fraction(c)) for e, c in d["den"]])
    return WRational.from_laurent(num) / WRational.from_laurent(den)
