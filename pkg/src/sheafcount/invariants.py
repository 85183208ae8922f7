"""From generating functions to integer invariants and Betti numbers.

The h-series coefficients are rational invariants Obar.  For a class whose
divisibility is understood they convert to integer invariants Omega by a
Mobius sum over subdivisors, and in the refined case the Laurent polynomial

    p(w) = (w - 1/w) * w^dim * Omega(Gamma, w)

collects the Betti numbers of the moduli space: p = sum of b_i w^i with
b_i >= 0, b_i = 0 for odd i, b_i = b_{2 dim - i}, and p(1) is the Euler
number.  Each failure mode of that extraction gets its own diagnostic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .geometry import P2, DivisorClass, chern_from_c2, moduli_dim
from .series import PuiseuxSeries
from .wallcross import InvariantSeries
from .wpoly import WLaurent, WRational


class ExtractionError(ValueError):
    """A refined invariant that does not encode a valid Poincare polynomial."""


@dataclass(frozen=True)
class PoincarePolynomial:
    """Betti numbers b_0 .. b_{2 dim} of a smooth projective moduli space."""

    dim: int
    betti: tuple

    def __post_init__(self):
        if len(self.betti) != 2 * self.dim + 1:
            raise ExtractionError(
                f"expected {2 * self.dim + 1} Betti numbers, got {len(self.betti)}"
            )
        for i, b in enumerate(self.betti):
            if b != int(b) or b < 0:
                raise ExtractionError(f"b_{i} = {b} is not a nonnegative integer")
            if i % 2 and b:
                raise ExtractionError(f"odd Betti number b_{i} = {b} is nonzero")
        if tuple(reversed(self.betti)) != self.betti:
            raise ExtractionError("Betti numbers are not palindromic")

    def chi(self) -> int:
        return sum(self.betti)

    def half_row(self) -> tuple:
        """b_0, b_2, ..., b_dim; the rest is determined by Poincare duality."""
        if self.dim % 2:
            raise ValueError("half row needs an even-dimensional space")
        return self.betti[0 : self.dim + 1 : 2]


def poincare_extract(omega_w, dim: int) -> PoincarePolynomial:
    """Read Betti numbers off a refined invariant of a dim-dimensional space."""
    if dim < 0:
        raise ExtractionError(f"negative dimension {dim}")
    p = (WRational.w_pow(1) - WRational.w_pow(-1)) * WRational.w_pow(dim) * omega_w
    if not p.is_laurent:
        raise ExtractionError(
            "(w - 1/w) w^dim Omega keeps a nontrivial denominator: "
            "not a Laurent polynomial"
        )
    pl = p.as_laurent()
    betti = [0] * (2 * dim + 1)
    for e, c in pl.terms():
        if e < 0 or e > 2 * dim:
            raise ExtractionError(
                f"w-exponent {e} falls outside [0, {2 * dim}]"
            )
        if c.denominator != 1:
            raise ExtractionError(f"coefficient {c} of w^{e} is not an integer")
        if c < 0:
            raise ExtractionError(f"coefficient {c} of w^{e} is negative")
        betti[e] = int(c)
    return PoincarePolynomial(dim, tuple(betti))


def euler_from_refined(p: PoincarePolynomial) -> int:
    """Euler number: the Poincare polynomial at w = 1."""
    return p.chi()


def euler_sign(value, dim: int):
    """Apply (-1)^dim; converts between an Euler number and its signed count."""
    return value if dim % 2 == 0 else -value


# -- Mobius layer ----------------------------------------------------------

_MOBIUS = {1: 1, 2: -1, 3: -1}


def _c2_of_exponent(r: int, c1: DivisorClass, e: Fraction):
    """Invert e = r*Delta - r*chi(S)/24 for c2, or None off the integer grid."""
    r_delta = e + Fraction(r * c1.surface.euler_char, 24)
    c2 = r_delta + Fraction(r - 1, 2 * r) * c1.square()
    if c2.denominator != 1:
        return None
    return int(c2)


def _c2_grid(h: InvariantSeries):
    r, c1 = h.gamma_class
    cut = h.series.cutoff_exp
    # Delta >= 0 for a nonempty moduli space, so start at the smallest
    # integer c2 with that property.
    lo = Fraction(r - 1, 2 * r) * c1.square()
    c2 = lo.numerator // lo.denominator
    if Fraction(c2) < lo:
        c2 += 1
    out = []
    while True:
        # e = r*Delta - r*chi(S)/24 with r*Delta = c2 - lo
        e = Fraction(c2) - lo - Fraction(r * c1.surface.euler_char, 24)
        if e > cut:
            break
        out.append((c2, e))
        c2 += 1
    return out


def _corrected_series(h: InvariantSeries, lower_by_m, refined: bool) -> PuiseuxSeries:
    r = h.gamma_class[0]
    out = h.series
    for m in sorted(lower_by_m or {}):
        if m == 1:
            continue
        if m not in _MOBIUS:
            raise ValueError(f"divisibility {m} is beyond what rank <= 3 needs")
        child = lower_by_m[m]
        if r % m or child.gamma_class[0] != r // m:
            raise ValueError(f"lower series for m = {m} has the wrong rank")
        if child.refined != refined:
            raise ValueError("lower series refinement flag does not match")
        cs = child.series
        if refined:
            cs = cs.substitute_w_power(m)
            scale = Fraction(_MOBIUS[m] * (-1) ** (m + 1), m)
        else:
            scale = Fraction(_MOBIUS[m], m * m)
        out = out + cs.scale_q(m) * scale
    return out


def omega_from_bar_unrefined(h: InvariantSeries, lower_by_m=None) -> dict:
    """Integer invariants per c2 via Omega = sum of mu(m) Obar(Gamma/m) / m^2.

    lower_by_m maps each m > 1 dividing the class family to the h-series of
    the quotient family Gamma/m; an empty map treats every class as
    primitive.
    """
    if h.refined:
        raise ValueError("refined series passed to the unrefined conversion")
    corrected = _corrected_series(h, lower_by_m, refined=False)
    out = {}
    for c2, e in _c2_grid(h):
        if e > corrected.cutoff_exp:
            break
        out[c2] = Fraction(corrected.coefficient(e))
    return out


def omega_from_bar_refined(h: InvariantSeries, lower_by_m=None) -> dict:
    """Refined integer invariants per c2.

    Omega(Gamma, w) = sum over m dividing Gamma of
    mu(m) (-1)^(m+1) Obar(Gamma/m, w^m) / m; two levels of divisibility
    cover every rank <= 3 family.
    """
    if not h.refined:
        raise ValueError("unrefined series passed to the refined conversion")
    corrected = _corrected_series(h, lower_by_m, refined=True)
    out = {}
    for c2, e in _c2_grid(h):
        if e > corrected.cutoff_exp:
            break
        c = corrected.coefficient(e)
        out[c2] = c if isinstance(c, WRational) else WRational.const(c)
    return out


# -- Betti tables ----------------------------------------------------------


@dataclass(frozen=True)
class BettiRow:
    c2: int
    dim: int
    half: tuple
    chi: int


@dataclass(frozen=True)
class BettiTable:
    """Half rows b_0, b_2, ..., b_dim per c2, with the Euler number last."""

    rows: tuple

    def to_csv(self) -> str:
        width = max((len(r.half) for r in self.rows), default=0)
        header = ["c2"] + [f"b{2 * i}" for i in range(width)] + ["chi"]
        lines = [",".join(header)]
        for r in self.rows:
            cells = [str(r.c2)]
            cells += [str(b) for b in r.half]
            cells += [""] * (width - len(r.half))
            cells.append(str(r.chi))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "rows": [
                {"c2": r.c2, "dim": r.dim, "betti_half": list(r.half), "chi": r.chi}
                for r in self.rows
            ]
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def betti_table(h_p2_refined: InvariantSeries, c2_values) -> BettiTable:
    """Betti numbers of the plane rank-3 c1 = -H moduli spaces.

    The class is primitive (gcd(3, 1) = 1), so the series coefficient at
    c2 - 17/24 is already the integer refined invariant.
    """
    r, c1 = h_p2_refined.gamma_class
    if r != 3 or c1.surface is not P2 or c1.comps != (-1,):
        raise ValueError("Betti tables are built from the rank-3 c1 = -H series")
    if not h_p2_refined.refined:
        raise ValueError("Betti numbers need the refined series")
    omega = omega_from_bar_refined(h_p2_refined)
    rows = []
    for c2 in sorted(c2_values):
        if c2 not in omega:
            raise ValueError(
                f"series cutoff {h_p2_refined.series.cutoff_exp} does not "
                f"reach c2 = {c2}"
            )
        dim = moduli_dim(chern_from_c2(3, c1, c2))
        p = poincare_extract(omega[c2], dim)
        if p.betti[0] != 1:
            raise ExtractionError(
                f"b_0 = {p.betti[0]} at c2 = {c2}: expected a connected space"
            )
        rows.append(BettiRow(c2, dim, p.half_row(), p.chi()))
    return BettiTable(tuple(rows))
