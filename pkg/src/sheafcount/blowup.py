"""Transfer of generating functions between the ruled surface and the plane.

Blowing up a point on the plane multiplies the generating function by a
universal theta-quotient block: h on the ruled surface with c1 = phi*c1 - kC
equals B_{r,k} times h on the plane.  Dividing by the block goes the other
way.  The correspondence on divisors is phi*H = C + f.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import gcd

from .geometry import P2, RULED, DivisorClass, J10
from .modforms import blowup_factor
from .series import PuiseuxSeries
from .wallcross import InvariantSeries


@dataclass(frozen=True)
class BlowupMap:
    r: int
    k: int
    direction: str  # "to_P2" or "to_ruled"


def _p2_class(c1_ruled: DivisorClass, r: int, k: int) -> DivisorClass:
    # aC + bf = phi*(mH) - kC requires m = b and k = b - a (mod r for twists)
    a, b = c1_ruled.comps
    if (b - a - k) % r:
        raise ValueError(
            f"class {c1_ruled.comps} is not phi*c1 - {k}C up to twist for rank {r}"
        )
    return DivisorClass(P2, (b,))


def _check_coprime(r: int, c1_p2: DivisorClass):
    deg = c1_p2.comps[0]
    if gcd(r, deg) != 1:
        warnings.warn(
            f"gcd(r, c1.J) = {gcd(r, deg)} != 1 for rank {r}, c1 = {deg}H; the "
            "block transfer is only documented to extend to such classes case "
            "by case",
            stacklevel=3,
        )


def to_p2(h_tilde: InvariantSeries, r: int, k: int, refined: bool = False) -> InvariantSeries:
    """Divide a J_{1,0}-side ruled-surface series by the block B_{r,k}."""
    if h_tilde.refined != refined:
        raise ValueError("refined flag does not match the input series")
    if h_tilde.gamma_class[0] != r:
        raise ValueError("rank does not match the input series")
    c1_p2 = _p2_class(h_tilde.gamma_class[1], r, k)
    _check_coprime(r, c1_p2)
    s = h_tilde.series
    b = blowup_factor(r, k, s.cutoff_exp + 1, refined)
    out = s * b.invert()
    return InvariantSeries((r, c1_p2), None, refined, out)


def to_ruled(h_p2: InvariantSeries, r: int, k: int, refined: bool = False) -> InvariantSeries:
    """Multiply a plane series by B_{r,k}; the result sits at J_{1,0}."""
    if h_p2.refined != refined:
        raise ValueError("refined flag does not match the input series")
    if h_p2.gamma_class[0] != r:
        raise ValueError("rank does not match the input series")
    m = h_p2.gamma_class[1].comps[0]
    # label by the twist representative in the window (-r, 0]
    comps = tuple(x % r - (r if x % r else 0) for x in (m - k, m))
    c1_ruled = DivisorClass(RULED, comps)
    s = h_p2.series
    b = blowup_factor(r, k, s.cutoff_exp + 1, refined)
    return InvariantSeries((r, c1_ruled), J10, refined, s * b)
