"""Wall-crossing assembly of the rank 1, 2, 3 generating functions.

Rational invariants jump across a wall of marginal stability.  For a
splitting Gamma = Gamma_1 + Gamma_2 into primitive pieces, moving the
polarization from J to J' changes Omegabar(Gamma) by

    (1/2)(sgn I' - sgn I) (-1)^<12> <12> Omegabar_1 Omegabar_2   (unrefined)
   -(1/2)(sgn I' - sgn I) (w^<12> - w^-<12>) Omegabar_1 Omegabar_2  (refined)

where <12> is the canonical-class pairing, I the J-degree, and sgn(0) = 0,
so a polarization sitting exactly on a wall yields the mean of the two
adjacent chambers.  Summing the jumps over all splittings weighted by the
rank-1 series gives the rank-2 generating functions; rank-2 + rank-1
splittings then give rank 3.

Series returned here collect Omegabar(Gamma; J) q^(r*Delta - r*chi(S)/24);
with c_1 fixed, the exponent determines c_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .geometry import (
    J01,
    J10,
    RULED,
    ChernData,
    DivisorClass,
    P2,
    Polarization,
    SurfaceModel,
    degree_J,
    divisor,
    pairing_K,
    reduce_c1,
)
from .modforms import blowup_factor, eta, eta_pow, g0, g1, hclass_series, theta1_tilde_2z
from .series import LATTICE_DEN, PuiseuxSeries, qexp_num
from .wpoly import WRational


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class InvariantSeries:
    """A generating function together with the class data it counts."""

    gamma_class: tuple  # (rank, reduced c1)
    polarization: Polarization | None
    refined: bool
    series: PuiseuxSeries


@dataclass(frozen=True)
class WallTerm:
    """One splitting term of a rank-2 or rank-3 chamber sum."""

    a: int
    b: int
    sgn_weight: Fraction  # (sgn I_to - sgn I_from)/2, values in {-1,..,1}
    K_pairing: int
    q_shift: Fraction


# ---------------------------------------------------------------------------
# cached building blocks

_CACHE: dict = {}


def _cached(key, cut24, builder):
    out = _CACHE.get((key, cut24))
    if out is None:
        out = builder()
        _CACHE[(key, cut24)] = out
    return out


def _inv_eta(p: int, cutoff) -> PuiseuxSeries:
    c24 = qexp_num(cutoff)
    return _cached(("eta", p), c24, lambda: eta_pow(p, Fraction(c24, LATTICE_DEN)))


def _inv_theta_sq(cutoff) -> PuiseuxSeries:
    """1/theta1tilde(2z,tau)^2, exact through cutoff."""

    def build():
        th = theta1_tilde_2z(Fraction(c24 + LATTICE_DEN, LATTICE_DEN))
        return (th * th).invert().truncate(Fraction(c24, LATTICE_DEN))

    c24 = qexp_num(cutoff)
    return _cached("th2inv", c24, build)


def _refined_pref2(cutoff) -> PuiseuxSeries:
    """1/(theta1tilde(2z,tau)^2 eta^2), the square of the refined rank-1 series."""

    def build():
        pad = Fraction(c24 + LATTICE_DEN, LATTICE_DEN)
        th = theta1_tilde_2z(pad)
        return (th * th * eta(pad) * eta(pad)).invert().truncate(
            Fraction(c24, LATTICE_DEN)
        )

    c24 = qexp_num(cutoff)
    return _cached("pref2", c24, build)


def _refined_pref3(cutoff) -> PuiseuxSeries:
    """1/(theta1tilde(2z,tau) eta), the refined rank-1 series."""

    def build():
        pad = Fraction(c24 + LATTICE_DEN, LATTICE_DEN)
        return (theta1_tilde_2z(pad) * eta(pad)).invert().truncate(
            Fraction(c24, LATTICE_DEN)
        )

    c24 = qexp_num(cutoff)
    return _cached("pref1", c24, build)


# ---------------------------------------------------------------------------
# rank 2

# A rank-1 + rank-1 splitting of c1 = -beta C - alpha f is indexed by the
# degree differences X (along C, parity beta) and Y (along f, parity alpha):
# J-degree I = X n - Y m, pairing <12> = -X + 2Y, q-shift X^2/4 + X Y/2.
# Folding (X,Y) <-> (-X,-Y) leaves the summand invariant and cancels the
# global 1/2 for unordered splittings, so X runs over positive values only.
# Terms with Y < 0 have I > 0 throughout the closed cone and never
# contribute; the X = 0 stratum (even beta) sits entirely on the fiber ray
# and is excluded, so fiber-ray targets are meaningful only for odd beta.
# Search bounds: shift numerator 6X^2 + 12XY <= cutoff numerator + 8.


def _rank2_terms(beta: int, alpha: int, bound24: int):
    out = []
    X = 1 if beta % 2 else 2
    while 6 * X * X <= bound24:
        Y = alpha % 2
        while (s24 := 6 * X * X + 12 * X * Y) <= bound24:
            out.append((X, Y, s24))
            Y += 2
        X += 2
    return out


def _rank2_sum(
    beta: int, alpha: int, j_src: Polarization, j_tgt: Polarization, refined: bool, cutoff
) -> PuiseuxSeries:
    """Accumulated primitive jumps from j_src to j_tgt times the rank-1 square."""
    c24 = qexp_num(cutoff)
    bound24 = c24 + 8
    acc: dict = {}
    for X, Y, s24 in _rank2_terms(beta, alpha, bound24):
        d = _sgn(X * j_tgt.n - Y * j_tgt.m) - _sgn(X * j_src.n - Y * j_src.m)
        if not d:
            continue
        k = -X + 2 * Y
        if refined:
            val = Fraction(-d, 2) * (WRational.w_pow(k) - WRational.w_pow(-k))
        else:
            val = Fraction(d * (-k if k % 2 else k), 2)
        if s24 in acc:
            acc[s24] = acc[s24] + val
        else:
            acc[s24] = val
    jumps = PuiseuxSeries(acc, bound24)
    pref = _refined_pref2(cutoff) if refined else _inv_eta(-8, cutoff)
    return (pref * jumps).truncate(cutoff)


def h2_from_boundary(alpha: int, J: Polarization, refined: bool = False, cutoff=Fraction(4)):
    """h_2 for c1 = -C - alpha*f at J, summed up from the fiber boundary.

    The fiber ray carries no semistable sheaves of this class, so the series
    is the bare accumulation of jumps from J_{0,1} to J.
    """
    if alpha not in (0, 1):
        raise ValueError("alpha must be 0 or 1")
    s = _rank2_sum(1, alpha, J01, J, refined, cutoff)
    return InvariantSeries((2, divisor(RULED, -1, -alpha)), J, refined, s)


def delta_h2(beta: int, alpha: int, j_target: Polarization, refined: bool = False, cutoff=Fraction(4)):
    """Wall-crossing delta of h_2 from J_{1,0} to j_target for c1 = -beta C - alpha f."""
    if beta not in (0, 1) or alpha not in (0, 1):
        raise ValueError("beta and alpha must be 0 or 1")
    s = _rank2_sum(beta, alpha, J10, j_target, refined, cutoff)
    return InvariantSeries((2, divisor(RULED, -beta, -alpha)), j_target, refined, s)


# The printed unrefined blow-up block carries a sign (-1)^k that its refined
# counterpart lacks.  The seed products below need the sign-free block: the
# refined seeds, the w -> 1 limit, and the rank-3 Euler numbers all agree on
# that convention, so it is fixed here once.
_B2_RESIGN = (1, -1)


def _b2_block(k: int, refined: bool, cutoff) -> PuiseuxSeries:
    b = blowup_factor(2, k, cutoff, refined)
    return b if refined else b * _B2_RESIGN[k % 2]


def _seed_series(beta: int, alpha: int, refined: bool, cutoff) -> PuiseuxSeries:
    if beta == 1:
        return _rank2_sum(1, alpha, J01, J10, refined, cutoff)
    pad = cutoff + 1
    k = alpha  # block characteristic matches alpha when beta is even
    if refined:
        gser = g1(pad) if alpha else g0(pad)
        out = _b2_block(k, True, pad) * gser * _inv_theta_sq(pad)
    else:
        hser = hclass_series(alpha, pad)
        out = -3 * _b2_block(k, False, pad) * hser * _inv_eta(-6, pad)
    return out.truncate(cutoff)


_SEED_KEYS = {(-1, -1): (1, 1), (-1, 0): (1, 0), (0, -1): (0, 1), (0, 0): (0, 0)}


def h2_seed_J10(c1_class: DivisorClass, refined: bool = False, cutoff=Fraction(4)):
    """h_2 at the boundary ray J_{1,0} for reduced c1 in {-C-f, -C, -f, 0}.

    Odd C-degree classes come from the fiber-boundary sum; even ones use the
    closed forms built from the blow-up block, class-number series (unrefined)
    and the Appell-type series g_0, g_1 (refined).  J_{1,0} lies on walls of
    the even-alpha classes, so those series carry chamber-average values.
    """
    key = _SEED_KEYS.get(tuple(c1_class.comps))
    if key is None or c1_class.surface is not RULED:
        raise ValueError("seed classes are the four reduced c1 values on the ruled surface")
    beta, alpha = key
    s = _seed_series(beta, alpha, refined, cutoff)
    return InvariantSeries((2, c1_class), J10, refined, s)


def _h2_series_at(beta: int, alpha: int, J: Polarization, refined: bool, cutoff) -> PuiseuxSeries:
    g = gcd(J.m, J.n)
    mm, nn = J.m // g, J.n // g
    s = _seed_series(beta, alpha, refined, cutoff)
    if (mm, nn) != (1, 0):
        s = s + _rank2_sum(beta, alpha, J10, Polarization(mm, nn), refined, cutoff)
    return s


def h2_at(c1: DivisorClass, J: Polarization, refined: bool = False, cutoff=Fraction(4)):
    """h_2 for arbitrary integral c1 at J (wall points allowed): seed + delta.

    Twisting by line bundles leaves the series invariant, so c1 is first
    reduced componentwise mod 2 into (-2, 0].
    """
    red, _ = reduce_c1(ChernData(2, c1))
    beta, alpha = -red.c1.comps[0], -red.c1.comps[1]
    s = _h2_series_at(beta, alpha, J, refined, cutoff)
    return InvariantSeries((2, red.c1), J, refined, s)


# ---------------------------------------------------------------------------
# rank 3

# Splittings of c1 = -C-f into rank 2 (c1 = bC - af) + rank 1 are indexed by
# X = 3b + 2 and Y = 3a - 2; I = -(X n - Y m), <12> = X - 2Y, and the weight
# below uses the opposite orientation (sgn difference against sgn(X) at the
# fiber ray).  Nonzero weight forces XY > 0, where the q-shift
# X^2/12 + XY/6 (numerator 2X^2 + 4XY) is positive; the rank-2 factor enters
# at the wall ray |X| : |Y| and its series starts no lower than -1/3, so
# shifts run to the cutoff numerator + 8.


def _rank3_terms(bound24: int):
    out = []
    X = 2
    while 2 * X * X + 4 * X <= bound24:
        Y = 1
        while (s24 := 2 * X * X + 4 * X * Y) <= bound24:
            out.append((X, Y, s24))
            Y += 3
        X += 3
    X = -1
    while 2 * X * X - 8 * X <= bound24:
        Y = -2
        while (s24 := 2 * X * X + 4 * X * Y) <= bound24:
            out.append((X, Y, s24))
            Y -= 3
        X -= 3
    return out


def h3(J: Polarization, refined: bool = False, cutoff=Fraction(4)):
    """h_3 for c1 = -C-f at J: rank-2 x rank-1 jumps against the rank-1 series.

    Each contributing splitting multiplies the full rank-2 series evaluated
    exactly at the wall ray (chamber average there), so no further multi-cover
    bookkeeping is needed at rank 3.
    """
    c24 = qexp_num(cutoff)
    e24 = c24 + 4  # the rank-1 prefactor starts at -1/6
    bound24 = e24 + 8
    contrib = []
    need: dict = {}
    for X, Y, s24 in _rank3_terms(bound24):
        d = _sgn(X * J.n - Y * J.m) - _sgn(X)
        if not d:
            continue
        b, a = (X - 2) // 3, (Y + 2) // 3
        g = gcd(abs(X), abs(Y))
        key = (abs(X) // g, abs(Y) // g, b % 2, a % 2)
        h2cut = e24 - s24
        if key not in need or need[key] < h2cut:
            need[key] = h2cut
        k = -X + 2 * Y
        if refined:
            w = Fraction(-d, 2) * (WRational.w_pow(k) - WRational.w_pow(-k))
        else:
            w = Fraction(d * (-k if k % 2 else k), 2)
        contrib.append((key, s24, w))
    if not contrib:
        return InvariantSeries(
            (3, divisor(RULED, -1, -1)), J, refined, PuiseuxSeries({}, c24)
        )
    blocks = {
        key: _h2_series_at(
            key[2], key[3], Polarization(key[0], key[1]), refined, Fraction(n24, LATTICE_DEN)
        )
        for key, n24 in need.items()
    }
    total = None
    for key, s24, w in contrib:
        term = (blocks[key].shift_q(Fraction(s24, LATTICE_DEN))) * w
        total = term if total is None else total + term
    pref = _refined_pref3(Fraction(e24, LATTICE_DEN)) if refined else _inv_eta(
        -4, Fraction(e24, LATTICE_DEN)
    )
    total = pref * total
    return InvariantSeries(
        (3, divisor(RULED, -1, -1)), J, refined, total.truncate(cutoff)
    )


# ---------------------------------------------------------------------------
# rank 1 and the pointwise jump formulas


def h1(S: SurfaceModel, refined: bool = False, cutoff=Fraction(4)):
    """Rank-1 series: 1/eta^chi(S); refined 1/(theta1tilde(2z,tau) eta) on the
    ruled surface only."""
    if refined:
        if S is not RULED:
            raise ValueError(f"no refined rank-1 series available for {S.name}")
        s = _refined_pref3(cutoff)
    else:
        s = _inv_eta(-S.euler_char, cutoff)
    c1 = DivisorClass(S, (0,) * S.b2)
    return InvariantSeries((1, c1), None, refined, s)


def delta_omega_primitive(
    g1: ChernData,
    g2: ChernData,
    j_from: Polarization,
    j_to: Polarization,
    refined: bool = False,
    omega1=1,
    omega2=1,
):
    """Jump of Omegabar(g1 + g2) moving the polarization j_from -> j_to,
    for primitive constituents with rational invariants omega1, omega2."""
    d = _sgn(degree_J(g1, g2, j_to)) - _sgn(degree_J(g1, g2, j_from))
    k = pairing_K(g1, g2)
    if refined:
        return Fraction(-d, 2) * (WRational.w_pow(k) - WRational.w_pow(-k)) * omega1 * omega2
    return Fraction(d * (-k if k % 2 else k), 2) * omega1 * omega2


def delta_omega_semiprimitive(
    g1: ChernData,
    g2: ChernData,
    j_from: Polarization,
    j_to: Polarization,
    *,
    omega1,
    omega2,
    omega_2g1_near,
    omega_sum_near,
):
    """Jump of Omega(2*g1 + g2) across the wall, in two equivalent forms.

    Inputs are integer invariants evaluated just on the j_from side of the
    wall (omega_2g1_near for 2*g1, omega_sum_near for g1+g2; g1, g2 and
    2*g1 do not jump there).  Returns (raw, simplified): the raw three-term
    expression in those near-wall values, and the rational-invariant form
    built from wall averages.  The two agree when the crossing goes from
    negative to positive J-degree, the direction in which the raw form is
    stated; crossing backwards they differ by the direction-dependent
    average shift of omega_sum.
    """
    s_from = _sgn(degree_J(g1, g2, j_from))
    s_to = _sgn(degree_J(g1, g2, j_to))
    half = Fraction(s_to - s_from, 2)
    k = pairing_K(g1, g2)
    ksign = -1 if k % 2 else 1
    raw = half * (
        -2 * k * omega_2g1_near * omega2
        + ksign * k * omega1 * omega_sum_near
        + Fraction(k, 2) * omega2 * omega1 * (k * omega1 - 1)
    )
    # wall averages, from the near-wall side values
    omega_sum_wall = omega_sum_near + Fraction(-s_from, 2) * ksign * k * omega1 * omega2
    omegabar_2g1_wall = omega_2g1_near + Fraction(1, 4) * omega1
    simplified = (
        half
        * k
        * (-2 * omegabar_2g1_wall * omega2 + ksign * omega1 * omega_sum_wall)
    )
    return raw, simplified


# ---------------------------------------------------------------------------
# wall-term inspection


def wall_terms(
    rank: int,
    c1: DivisorClass,
    j_from: Polarization,
    j_to: Polarization,
    cutoff=Fraction(4),
) -> list[WallTerm]:
    """The splitting terms a chamber sum would use between j_from and j_to,
    including zero-weight ones inside the search bounds."""
    c24 = qexp_num(cutoff)
    out = []
    if rank == 2:
        red, _ = reduce_c1(ChernData(2, c1))
        beta, alpha = -red.c1.comps[0], -red.c1.comps[1]
        for X, Y, s24 in _rank2_terms(beta, alpha, c24 + 8):
            d = _sgn(X * j_to.n - Y * j_to.m) - _sgn(X * j_from.n - Y * j_from.m)
            out.append(
                WallTerm(
                    (Y + alpha) // 2,
                    (X - beta) // 2,
                    Fraction(d, 2),
                    -X + 2 * Y,
                    Fraction(s24, LATTICE_DEN),
                )
            )
    elif rank == 3:
        if tuple(c1.comps) != (-1, -1):
            raise ValueError("rank-3 terms are implemented for c1 = -C-f")
        for X, Y, s24 in _rank3_terms(c24 + 8):
            d = _sgn(X * j_to.n - Y * j_to.m) - _sgn(X * j_from.n - Y * j_from.m)
            out.append(
                WallTerm(
                    (Y + 2) // 3,
                    (X - 2) // 3,
                    Fraction(d, 2),
                    -X + 2 * Y,
                    Fraction(s24, LATTICE_DEN),
                )
            )
    else:
        raise ValueError("wall terms exist for rank 2 and 3 only")
    out.sort(key=lambda t: (t.q_shift, t.b, t.a))
    return out
