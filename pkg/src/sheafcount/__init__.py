"""Exact generating functions for sheaf-counting invariants on rational surfaces."""

from .geometry import (
    P2,
    RULED,
    ChernData,
    DivisorClass,
    J01,
    J10,
    Polarization,
    SurfaceModel,
    Wall,
    chern_from_c2,
    discriminant,
    divisor,
    degree_J,
    filtration_discriminant,
    format_divisor,
    intersect,
    moduli_dim,
    pairing_K,
    parse_divisor,
    parse_polarization,
    reduce_c1,
    walls_for,
)
from .series import LATTICE_DEN, PuiseuxSeries
from .wpoly import WLaurent, WRational
from .wallcross import (
    InvariantSeries,
    delta_omega_primitive,
    delta_omega_semiprimitive,
    h1,
    h2_at,
    h2_from_boundary,
    h2_seed_J10,
    h3,
    wall_terms,
)
from .blowup import BlowupMap, to_p2, to_ruled
from .invariants import (
    BettiRow,
    BettiTable,
    ExtractionError,
    PoincarePolynomial,
    betti_table,
    euler_from_refined,
    euler_sign,
    omega_from_bar_refined,
    omega_from_bar_unrefined,
    poincare_extract,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "betti_table",
    "BettiRow",
    "BettiTable",
    "BlowupMap",
    "chern_from_c2",
    "ChernData",
    "degree_J",
    "delta_omega_primitive",
    "delta_omega_semiprimitive",
    "discriminant",
    "divisor",
    "DivisorClass",
    "euler_from_refined",
    "euler_sign",
    "ExtractionError",
    "filtration_discriminant",
    "format_divisor",
    "h1",
    "h2_at",
    "h2_from_boundary",
    "h2_seed_J10",
    "h3",
    "intersect",
    "InvariantSeries",
    "J01",
    "J10",
    "LATTICE_DEN",
    "moduli_dim",
    "omega_from_bar_refined",
    "omega_from_bar_unrefined",
    "P2",
    "pairing_K",
    "parse_divisor",
    "parse_polarization",
    "poincare_extract",
    "PoincarePolynomial",
    "Polarization",
    "PuiseuxSeries",
    "reduce_c1",
    "RULED",
    "SurfaceModel",
    "to_p2",
    "to_ruled",
    "Wall",
    "wall_terms",
    "walls_for",
    "WLaurent",
    "WRational",
]
