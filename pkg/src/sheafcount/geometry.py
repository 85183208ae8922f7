"""Intersection theory and Chern data on the blown-up plane and on P2.

The ruled surface here is the blow-up of the projective plane: a P1-bundle
over P1 with invariants (g, e) = (0, 1).  Its second homology is spanned by
the section class C (the exceptional divisor of the blow-down) and the fiber
class f, with C^2 = -1, C.f = 1, f^2 = 0, canonical class K = -2C - 3f,
topological Euler number 4 and chi(O) = 1.  On P2 the hyperplane class H has
H^2 = 1, K = -3H, Euler number 3.

Polarizations on the ruled surface are J_{m,n} = m(C+f) + nf with m, n >= 0
(ample for m, n >= 1; J_{1,0} and J_{0,1} are boundary rays; J_{1,0} is the
pullback of H).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    basis: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]
    euler_char: int  # chi(S), topological
    holo_euler: int  # chi(O_S)

    @property
    def b2(self) -> int:
        return len(self.basis)


RULED = SurfaceModel(
    name="ruled_P2tilde",
    basis=("C", "f"),
    gram=((-1, 1), (1, 0)),
    canonical=(-2, -3),
    euler_char=4,
    holo_euler=1,
)

P2 = SurfaceModel(
    name="P2",
    basis=("H",),
    gram=((1,),),
    canonical=(-3,),
    euler_char=3,
    holo_euler=1,
)


@dataclass(frozen=True)
class DivisorClass:
    surface: SurfaceModel
    comps: tuple

    def __post_init__(self):
        if len(self.comps) != self.surface.b2:
            raise ValueError("component count does not match the surface rank")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(
            self.surface, tuple(a + b for a, b in zip(self.comps, other.comps))
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(
            self.surface, tuple(a - b for a, b in zip(self.comps, other.comps))
        )

    def __mul__(self, k):
        return DivisorClass(self.surface, tuple(k * a for a in self.comps))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def _check(self, other: "DivisorClass"):
        if self.surface is not other.surface:
            raise ValueError("mixed surfaces")

    def dot(self, other: "DivisorClass"):
        self._check(other)
        g = self.surface.gram
        return sum(
            a * g[i][j] * b
            for i, a in enumerate(self.comps)
            for j, b in enumerate(other.comps)
        )

    def square(self):
        return self.dot(self)


def divisor(surface: SurfaceModel, *comps) -> DivisorClass:
    return DivisorClass(surface, tuple(comps))


def canonical_class(surface: SurfaceModel) -> DivisorClass:
    return DivisorClass(surface, surface.canonical)


def intersect(d1: DivisorClass, d2: DivisorClass):
    return d1.dot(d2)


@dataclass(frozen=True)
class Polarization:
    """J_{m,n} = m(C+f) + nf on the ruled surface."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or (self.m == 0 and self.n == 0):
            raise ValueError("polarization needs m, n >= 0 and (m,n) != (0,0)")

    def divisor(self) -> DivisorClass:
        return DivisorClass(RULED, (self.m, self.m + self.n))

    @property
    def is_ample(self) -> bool:
        return self.m >= 1 and self.n >= 1


J10 = Polarization(1, 0)
J01 = Polarization(0, 1)


@dataclass(frozen=True)
class ChernData:
    """Topological type (r, c1, ch2); ch2 = None marks a ch2-family."""

    r: int
    c1: DivisorClass
    ch2: Fraction | None = None

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("rank must be positive")

    @property
    def surface(self) -> SurfaceModel:
        return self.c1.surface

    def c2(self) -> Fraction:
        if self.ch2 is None:
            raise ValueError("ch2-family has no fixed c2")
        return Fraction(self.c1.square(), 2) - self.ch2

    def __add__(self, other: "ChernData") -> "ChernData":
        if self.ch2 is None or other.ch2 is None:
            raise ValueError("cannot add ch2-families")
        return ChernData(self.r + other.r, self.c1 + other.c1, self.ch2 + other.ch2)


def chern_from_c2(r: int, c1: DivisorClass, c2) -> ChernData:
    return ChernData(r, c1, Fraction(c1.square(), 2) - Fraction(c2))


def discriminant(g: ChernData) -> Fraction:
    """Delta = (1/r)(c2 - ((r-1)/2r) c1^2)."""
    return (g.c2() - Fraction(g.r - 1, 2 * g.r) * g.c1.square()) / g.r


def pairing_K(g1: ChernData, g2: ChernData) -> int:
    """<Gamma_1, Gamma_2> = r1 r2 (mu_2 - mu_1) . K."""
    d = g1.r * g2.c1 - g2.r * g1.c1
    return d.dot(canonical_class(g1.surface))


def degree_J(g1: ChernData, g2: ChernData, J: Polarization) -> int:
    """I(Gamma_1, Gamma_2; J) = r1 r2 (mu_2 - mu_1) . J."""
    d = g1.r * g2.c1 - g2.r * g1.c1
    return d.dot(J.divisor())


def moduli_dim(g: ChernData) -> int:
    """Expected dimension 2 r^2 Delta - r^2 chi(O) + 1 of the moduli space."""
    d = 2 * g.r**2 * discriminant(g) - g.r**2 * g.surface.holo_euler + 1
    if d.denominator != 1:
        raise ValueError(f"non-integral dimension {d}")
    d = int(d)
    if d < 0:
        raise ValueError("empty moduli space expected (negative dimension)")
    return d


def filtration_discriminant(quotients: list[ChernData]) -> Fraction:
    """Discriminant of a sheaf from the quotients of a filtration.

    Delta(F) = sum (r_i/r) Delta_i
               - (1/2r) sum_{i>=2} r(F_{i-1}) r(F_i) / r(E_i) * (mu_{i-1} - mu_i)^2
    with F_i the partial sums of the quotients E_1..E_i.
    """
    if not quotients:
        raise ValueError("empty filtration")
    surface = quotients[0].surface
    r_total = sum(g.r for g in quotients)
    out = sum((Fraction(g.r, r_total) * discriminant(g) for g in quotients), Fraction(0))
    prev_r = quotients[0].r
    prev_c1 = quotients[0].c1
    for g in quotients[1:]:
        cur_r = prev_r + g.r
        cur_c1 = prev_c1 + g.c1
        # mu(F_{i-1}) - mu(F_i) as an exact rational divisor square
        diff = cur_r * prev_c1 - prev_r * cur_c1
        sq = Fraction(diff.dot(diff), (prev_r * cur_r) ** 2)
        out -= Fraction(prev_r * cur_r, g.r) * sq / (2 * r_total)
        prev_r, prev_c1 = cur_r, cur_c1
    if surface is None:  # pragma: no cover
        raise AssertionError
    return out


@dataclass(frozen=True)
class Wall:
    """One (a,b)-indexed wall datum with its locus ratio m:n."""

    a: int
    b: int
    m: int
    n: int
    gamma1: ChernData
    gamma2: ChernData

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.m, self.n) if self.n else Fraction(self.m)


def walls_for(gamma: ChernData, delta_max) -> list[Wall]:
    """Walls with positive-quadrant locus and q-shift <= the exponent bound.

    For rank 2 with c1 = beta C - alpha f the wall of the split with
    c1(E_2) = bC - af sits at m/n = X/Y with X = 2b - beta, Y = 2a - alpha
    and contributes at q-shift X^2/4 + XY/2; for rank 3 (c1 = -C-f),
    X = 3b + 2, Y = 3a - 2 with shift X^2/12 + XY/6.  Only X, Y > 0
    representatives are listed ((X,Y) and (-X,-Y) describe the same wall).
    """
    bound = Fraction(delta_max)
    if bound < 0:
        raise ValueError("negative exponent bound")
    surf = gamma.surface
    if surf is not RULED:
        raise ValueError("walls are enumerated on the ruled surface")
    beta = -gamma.c1.comps[0]
    alpha = -gamma.c1.comps[1]
    out = []
    if gamma.r == 2:
        X = 1 if beta % 2 else 2
        while Fraction(X * X, 4) <= bound:
            Y = 2 - (alpha % 2)
            while Fraction(X * X, 4) + Fraction(X * Y, 2) <= bound:
                b = (X - beta) // 2  # X = 2b + beta
                a = (Y + alpha) // 2  # Y = 2a - alpha
                g2 = ChernData(1, divisor(RULED, b, -a))
                g1 = ChernData(1, gamma.c1 - g2.c1)
                g = gcd(X, Y)
                out.append(Wall(a, b, X // g, Y // g, g1, g2))
                Y += 2
            X += 2
    elif gamma.r == 3:
        if (beta, alpha) != (1, 1):
            raise ValueError("rank-3 walls are implemented for c1 = -C-f")
        X = 2
        while Fraction(X * X, 12) <= bound:
            if X % 3 == 2:
                Y = 1
                while Fraction(X * X, 12) + Fraction(X * Y, 6) <= bound:
                    if Y % 3 == 1:
                        b = (X - 2) // 3  # X = 3b + 2
                        a = (Y + 2) // 3  # Y = 3a - 2
                        g1 = ChernData(2, divisor(RULED, b, -a))
                        g2 = ChernData(1, gamma.c1 - g1.c1)
                        g = gcd(X, Y)
                        out.append(Wall(a, b, X // g, Y // g, g1, g2))
                    Y += 1
            X += 1
    else:
        raise ValueError("wall enumeration is implemented for r = 2, 3")
    out.sort(key=lambda w: (w.ratio, w.b))
    return out


def reduce_c1(g: ChernData) -> tuple[ChernData, tuple[int, ...]]:
    """Reduce c1 componentwise mod r into (-r, 0]; returns (reduced, shift).

    Twisting by a line bundle shifts c1 by r times an integral class and
    leaves the generating function unchanged, so each component can be
    normalized into the fixed window.  shift records the applied twist k
    with c1_reduced = c1 - r*k.
    """
    r = g.r
    red = []
    shift = []
    for c in g.c1.comps:
        m = c % r  # in [0, r)
        red.append(m - r if m else 0)
        shift.append((c - (m - r if m else 0)) // r)
    ch2 = g.ch2
    if ch2 is not None and any(shift):
        # twist by O(-D): ch2 -> ch2 - c1.D + r D^2/2
        d = DivisorClass(g.c1.surface, tuple(shift))
        ch2 = ch2 - g.c1.dot(d) + Fraction(r * d.square(), 2)
    reduced = ChernData(r, DivisorClass(g.c1.surface, tuple(red)), ch2)
    return reduced, tuple(shift)


# -- textual syntax ----------------------------------------------------------

_TERM_RE = re.compile(r"([+-]?)(\d*)([A-Za-z])")


def parse_divisor(surface: SurfaceModel, text: str) -> DivisorClass:
    """Parse strings like 'bC+af', '-C-f', '2C-3f', '-H', '0'."""
    s = text.replace(" ", "")
    if s in ("0", "+0", "-0"):
        return DivisorClass(surface, (0,) * surface.b2)
    comps = {name: 0 for name in surface.basis}
    pos = 0
    for m in _TERM_RE.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse divisor {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        name = m.group(3)
        if name not in comps:
            raise ValueError(
                f"unknown basis class {name!r} on {surface.name} "
                f"(expected one of {', '.join(surface.basis)})"
            )
        comps[name] += sign * coeff
    if pos != len(s):
        raise ValueError(f"cannot parse divisor {text!r}")
    return DivisorClass(surface, tuple(comps[name] for name in surface.basis))


def format_divisor(d: DivisorClass) -> str:
    parts = []
    for coeff, name in zip(d.comps, d.surface.basis):
        if not coeff:
            continue
        sign = "-" if coeff < 0 else ("+" if parts else "")
        mag = abs(coeff)
        parts.append(f"{sign}{'' if mag == 1 else mag}{name}")
    return "".join(parts) if parts else "0"


def parse_polarization(text: str) -> Polarization:
    try:
        m, n = (int(x) for x in text.split(","))
    except Exception as exc:
        raise ValueError(f"cannot parse polarization {text!r} (expected 'm,n')") from exc
    return Polarization(m, n)
