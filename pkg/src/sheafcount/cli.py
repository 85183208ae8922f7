"""Command line entry points.

Four subcommands: series (print a generating function), betti (Betti-number
table of the plane rank-3 spaces), walls (wall data as JSON) and check (the
built-in acceptance checks).  All output is deterministic: exact arithmetic,
sorted serialization, and a provenance header carrying the config, the
cutoff and the package version.

Exit codes: 0 on success, 2 on a configuration error, 3 when a check fails.
Set SHEAFCOUNT_CACHE_DIR to persist Hurwitz class numbers between runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__, checks
from .blowup import to_p2
from .geometry import (
    P2,
    RULED,
    ChernData,
    DivisorClass,
    J10,
    Polarization,
    divisor,
    format_divisor,
    parse_divisor,
    parse_polarization,
    reduce_c1,
    walls_for,
)
from .invariants import betti_table
from .modforms import hurwitz_cache_load, hurwitz_cache_save
from .wallcross import InvariantSeries, h1, h2_at, h3
from .wpoly import WRational

_SURFACES = {"ruled": RULED, "p2": P2}
_PUBLISHED_C2_MAX = 6  # Betti rows beyond this are computed, not published


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    rank: int = 3
    c1_spec: str = "0"
    surface: str = "ruled"
    polarization: str = "1,0"
    q_order: int = 8
    refined: bool = False
    format: str = "text"
    output: str | None = None
    c2_spec: str | None = None
    bound: str | None = None
    only: tuple | None = None


# -- formatting helpers -------------------------------------------------------


def _poly_text(pairs) -> str:
    parts = []
    for e, c in pairs:
        if e == 0:
            parts.append(str(c))
        elif c == 1:
            parts.append(f"w^{e}")
        elif c == -1:
            parts.append(f"-w^{e}")
        else:
            parts.append(f"{c}*w^{e}")
    out = " + ".join(parts) if parts else "0"
    return out.replace("+ -", "- ")


def _coeff_text(v) -> str:
    if isinstance(v, WRational):
        num, den = v.to_pairs()
        if den == [(0, Fraction(1))]:
            return _poly_text(num)
        return f"({_poly_text(num)})/({_poly_text(den)})"
    return str(Fraction(v))


def _provenance_lines(cfg: RunConfig, cutoff=None) -> list:
    pairs = [("command", cfg.command)]
    if cfg.command in ("series", "walls"):
        pairs += [("rank", cfg.rank), ("c1", cfg.c1_spec), ("surface", cfg.surface)]
    if cfg.command == "series":
        pairs += [
            ("polarization", cfg.polarization),
            ("refined", "yes" if cfg.refined else "no"),
            ("order", cfg.q_order),
        ]
    if cfg.command == "betti":
        pairs += [("c2", cfg.c2_spec), ("refined", "yes"), ("order", cfg.q_order)]
    if cfg.command == "walls":
        pairs.append(("bound", cfg.bound))
    if cfg.command == "check":
        pairs.append(("only", ",".join(cfg.only) if cfg.only else "all"))
        pairs.append(("order", cfg.q_order if cfg.q_order else "default"))
    pairs.append(("format", cfg.format))
    line = " ".join(f"{k}={v}" for k, v in pairs)
    out = [f"# sheafcount {__version__}", f"# config: {line}"]
    if cutoff is not None:
        out.append(f"# cutoff: q^({cutoff})")
    return out


def _provenance_json(cfg: RunConfig, cutoff=None) -> dict:
    out = {"version": __version__, "command": cfg.command}
    if cfg.command in ("series", "walls"):
        out.update(rank=cfg.rank, c1=cfg.c1_spec, surface=cfg.surface)
    if cfg.command == "series":
        out.update(
            polarization=cfg.polarization, refined=cfg.refined, order=cfg.q_order
        )
    if cfg.command == "betti":
        out.update(c2=cfg.c2_spec, refined=True, order=cfg.q_order)
    if cfg.command == "walls":
        out["bound"] = cfg.bound
    if cfg.command == "check":
        out["only"] = list(cfg.only) if cfg.only else "all"
        out["order"] = cfg.q_order
    if cutoff is not None:
        out["cutoff"] = str(cutoff)
    return out


# -- series -------------------------------------------------------------------


def _series_base(rank: int, c1: DivisorClass):
    """Exponent of the c2 = 0 slot and the smallest c2 with Delta >= 0."""
    s = c1.surface
    lo = Fraction(rank - 1, 2 * rank) * c1.square()
    base = -lo - Fraction(rank * s.euler_char, 24)
    c2_min = lo.numerator // lo.denominator
    if Fraction(c2_min) < lo:
        c2_min += 1
    return base, c2_min


def _build_series(cfg: RunConfig) -> InvariantSeries:
    surface = _SURFACES[cfg.surface]
    c1 = parse_divisor(surface, cfg.c1_spec)
    red, _ = reduce_c1(ChernData(cfg.rank, c1))
    base, c2_min = _series_base(cfg.rank, red.c1)
    cutoff = base + c2_min + cfg.q_order
    j = parse_polarization(cfg.polarization)
    if surface is RULED:
        if cfg.rank == 1:
            return h1(RULED, refined=cfg.refined, cutoff=cutoff)
        if cfg.rank == 2:
            return h2_at(c1, j, refined=cfg.refined, cutoff=cutoff)
        if red.c1.comps != (-1, -1):
            raise ConfigError(
                f"rank-3 series on the ruled surface cover c1 = -C-f up to "
                f"twist; got {format_divisor(red.c1)}"
            )
        return h3(j, refined=cfg.refined, cutoff=cutoff)
    # the plane: rank 1 directly, rank 3 with c1 = -H through the blow-down
    if cfg.rank == 1:
        if cfg.refined:
            raise ConfigError("no refined rank-1 series on p2")
        return h1(P2, refined=False, cutoff=cutoff)
    if cfg.rank == 3 and red.c1.comps == (-1,):
        down = h3(J10, refined=cfg.refined, cutoff=cutoff - Fraction(1, 8))
        return to_p2(down, 3, 0, refined=cfg.refined)
    raise ConfigError(
        f"unsupported combination on p2: rank {cfg.rank}, "
        f"c1 = {format_divisor(red.c1)} (rank 1, or rank 3 with c1 = -H)"
    )


def cmd_series(cfg: RunConfig) -> tuple:
    hs = _build_series(cfg)
    s = hs.series
    r, red_c1 = hs.gamma_class
    base, _ = _series_base(r, red_c1)
    rows = []
    for e, v in s.terms():
        k = e - base
        if k.denominator != 1:
            raise AssertionError(f"exponent {e} off the family grid")
        label = f"q^({base})" if k == 0 else f"q^({base}+{k})"
        rows.append((label, str(e), v))
    if cfg.format == "json":
        payload = {
            "provenance": _provenance_json(cfg, s.cutoff_exp),
            "gamma": {
                "rank": r,
                "c1": format_divisor(red_c1),
                "surface": red_c1.surface.name,
            },
            "polarization": cfg.polarization if red_c1.surface is RULED else None,
            "refined": cfg.refined,
            "terms": [
                {"exponent": str(e), "coefficient": _coeff_text(v)}
                for e, v in s.terms()
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n", 0
    lines = _provenance_lines(cfg, s.cutoff_exp)
    if cfg.format == "csv":
        lines.append("exponent,coefficient")
        lines += [f"{e},{_coeff_text(v)}" for _, e, v in rows]
    else:
        lines += [f"{label}: {_coeff_text(v)}" for label, _, v in rows]
        if not rows:
            lines.append(f"(no terms through q^({s.cutoff_exp}))")
    return "\n".join(lines) + "\n", 0


# -- betti --------------------------------------------------------------------


def _parse_c2_spec(spec: str) -> list:
    s = spec.strip()
    if ".." in s:
        lo_s, hi_s = s.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(s)
    if lo > hi:
        raise ConfigError(f"empty c2 range {spec!r}")
    if lo < 2:
        raise ConfigError(
            f"c2 = {lo}: the rank-3 c1 = -H moduli space is empty below c2 = 2"
        )
    return list(range(lo, hi + 1))


def cmd_betti(cfg: RunConfig) -> tuple:
    if cfg.rank != 3 or cfg.surface != "p2" or cfg.c1_spec != "-H":
        raise ConfigError(
            "Betti tables cover rank 3, c1 = -H on p2; other classes are out "
            "of scope"
        )
    c2s = _parse_c2_spec(cfg.c2_spec)
    base, c2_min = _series_base(3, divisor(P2, -1))
    cutoff = max(base + c2_min + cfg.q_order, base + max(c2s))
    down = h3(J10, refined=True, cutoff=cutoff - Fraction(1, 8))
    table = betti_table(to_p2(down, 3, 0, refined=True), c2s)
    extrapolated = [c2 for c2 in c2s if c2 > _PUBLISHED_C2_MAX]
    if cfg.format == "json":
        payload = {
            "provenance": _provenance_json(cfg, cutoff),
            "rows": [
                {
                    "c2": row.c2,
                    "dim": row.dim,
                    "betti_half": list(row.half),
                    "chi": row.chi,
                    "extrapolated": row.c2 in extrapolated,
                }
                for row in table.rows
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n", 0
    lines = _provenance_lines(cfg, cutoff)
    if extrapolated:
        lines.append(
            "# note: extrapolated beyond the published table at c2 = "
            + ",".join(str(c) for c in extrapolated)
        )
    if cfg.format == "csv":
        return "\n".join(lines) + "\n" + table.to_csv(), 0
    for row in table.rows:
        mark = " (extrapolated)" if row.c2 in extrapolated else ""
        bs = " ".join(str(b) for b in row.half)
        lines.append(f"c2={row.c2} dim={row.dim} b: {bs} chi: {row.chi}{mark}")
    return "\n".join(lines) + "\n", 0


# -- walls --------------------------------------------------------------------


def cmd_walls(cfg: RunConfig) -> tuple:
    surface = _SURFACES[cfg.surface]
    if surface is not RULED:
        raise ConfigError("walls are enumerated in the ample cone of the ruled surface")
    c1 = parse_divisor(surface, cfg.c1_spec)
    red, _ = reduce_c1(ChernData(cfg.rank, c1))
    bound = Fraction(cfg.bound)
    if bound < 0:
        raise ConfigError("bound must be nonnegative")
    walls = walls_for(ChernData(cfg.rank, red.c1), bound)
    payload = {
        "provenance": _provenance_json(cfg),
        "walls": [
            {"a": w.a, "b": w.b, "m": w.m, "n": w.n, "ratio": f"{w.m}:{w.n}"}
            for w in walls
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n", 0


# -- check --------------------------------------------------------------------


def cmd_check(cfg: RunConfig) -> tuple:
    results = checks.run(only=cfg.only, order=cfg.q_order)
    failed = [r for r in results if not r.passed]
    if cfg.format == "json":
        payload = {
            "provenance": _provenance_json(cfg),
            "results": [
                {
                    "id": r.check_id,
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                }
                for r in results
            ],
            "passed": not failed,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n", 3 if failed else 0
    lines = _provenance_lines(cfg)
    if cfg.q_order:
        lines.append(f"# note: depth overridden to {cfg.q_order}; coverage differs "
                     "from the stated criteria")
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.check_id} {status} [{r.name}] {r.detail}")
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return "\n".join(lines) + "\n", 3 if failed else 0


# -- plumbing -----------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sheafcount",
        description="Generating functions of sheaf-counting invariants on a "
        "ruled surface and the plane.",
    )
    p.add_argument("--version", action="version", version=f"sheafcount {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("series", help="print one generating function")
    ps.add_argument("--rank", type=int, required=True, choices=(1, 2, 3))
    ps.add_argument("--c1", default="0", help="e.g. '-C-f', '0', '-H'")
    ps.add_argument("--surface", default="ruled", choices=("ruled", "p2"))
    ps.add_argument("--polarization", default="1,0", metavar="m,n")
    ps.add_argument("--order", type=int, default=8,
                    help="q-steps beyond the leading exponent (default 8)")
    ps.add_argument("--refined", action="store_true")
    ps.add_argument("--format", default="text", choices=("text", "json", "csv"))
    ps.add_argument("--output", default=None)

    pb = sub.add_parser("betti", help="Betti table of the plane rank-3 spaces")
    pb.add_argument("--c2", required=True, metavar="N or N..M")
    pb.add_argument("--order", type=int, default=8)
    pb.add_argument("--format", default="csv", choices=("text", "json", "csv"))
    pb.add_argument("--output", default=None)

    pw = sub.add_parser("walls", help="wall data below an exponent bound, as JSON")
    pw.add_argument("--rank", type=int, required=True, choices=(2, 3))
    pw.add_argument("--c1", default=None, help="default -C-f")
    pw.add_argument("--bound", default="4", help="q-shift bound, e.g. 9/4")
    pw.add_argument("--output", default=None)

    pc = sub.add_parser("check", help="run the built-in acceptance checks")
    pc.add_argument("--only", default=None,
                    help="comma-separated ids or name fragments, e.g. A3 or closed-forms")
    pc.add_argument("--order", type=int, default=None,
                    help="override the stated depth of the depth-dependent checks")
    pc.add_argument("--format", default="text", choices=("text", "json"))
    pc.add_argument("--output", default=None)
    return p


def _config_from_args(args) -> RunConfig:
    if args.command == "series":
        if args.order < 1:
            raise ConfigError("order must be at least 1")
        return RunConfig(
            command="series",
            rank=args.rank,
            c1_spec=args.c1,
            surface=args.surface,
            polarization=args.polarization,
            q_order=args.order,
            refined=args.refined,
            format=args.format,
            output=args.output,
        )
    if args.command == "betti":
        if args.order < 1:
            raise ConfigError("order must be at least 1")
        return RunConfig(
            command="betti",
            rank=3,
            c1_spec="-H",
            surface="p2",
            refined=True,
            q_order=args.order,
            format=args.format,
            output=args.output,
            c2_spec=args.c2,
        )
    if args.command == "walls":
        c1 = args.c1 if args.c1 is not None else "-C-f"
        return RunConfig(
            command="walls",
            rank=args.rank,
            c1_spec=c1,
            surface="ruled",
            format="json",
            output=args.output,
            bound=args.bound,
        )
    only = None
    if args.only:
        only = tuple(t for t in args.only.split(",") if t.strip())
    return RunConfig(
        command="check",
        q_order=args.order,
        format=args.format,
        output=args.output,
        only=only,
    )


_DISPATCH = {
    "series": cmd_series,
    "betti": cmd_betti,
    "walls": cmd_walls,
    "check": cmd_check,
}


def _fold_dash_values(argv):
    # let `--c1 -C-f` parse even though the value starts with a dash
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--c1" and i + 1 < len(argv):
            out.append(f"--c1={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    argv = _fold_dash_values(sys.argv[1:] if argv is None else list(argv))
    args = _parser().parse_args(argv)
    cache_path = None
    cache_dir = os.environ.get("SHEAFCOUNT_CACHE_DIR")
    if cache_dir:
        cache_path = os.path.join(cache_dir, "hurwitz.json")
        hurwitz_cache_load(cache_path)
    try:
        cfg = _config_from_args(args)
        text, code = _DISPATCH[cfg.command](cfg)
    except (ConfigError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if cache_path:
            os.makedirs(cache_dir, exist_ok=True)
            hurwitz_cache_save(cache_path)
    if cfg.output:
        with open(cfg.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
