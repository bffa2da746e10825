"""dynctl command line: experiment orchestration and report emission.

The parsed argparse namespace is the run configuration: subcommand, S primes,
height bounds, truncation caps, worker count, output format and path, and the
seed for sampled checks. A fixed seed and config give byte-identical reports
at any worker count.
"""

from __future__ import annotations

import argparse
import inspect
import sys

from . import canonical as canonical_mod
from . import families as families_mod
from . import funcfield as funcfield_mod
from . import maps as maps_mod
from .canonical import canonical_height, is_preperiodic
from .errors import DynctlError
from .families import BasepointSpec, avg_experiment, three_param_avg
from .funcfield import ff_orbit_avg, parse_ffpoly, validate_s_set
from .orbits import (OrbitPolicy, count_s_integral, density_of_integral_preimages,
                     empirical_max_iterate, scan_orbit)
from .parallel import default_workers
from .parsing import parse_map, resolve_map_text
from .points import SIntSpec, format_point, parse_point
from .reports import emit_csv, emit_json, error_json

# Every module's identity checks, by name; `verify` runs exactly this set and
# the registry-completeness test keeps it in sync with the modules.
VERIFY_REGISTRY: tuple[str, ...] = (
    "cofactor_certificates",
    "transition_constants_sweep",
    "phi_t_identities",
    "cube_sum_bound",
    "phi_t_preimage_height_bound",
    "pell_solutions",
    "three_param_slice_bounds",
    "ff_family_checks",
)

_CHECK_MODULES = (maps_mod, canonical_mod, families_mod, funcfield_mod)


def registered_checks() -> dict[str, object]:
    out: dict[str, object] = {}
    for mod in _CHECK_MODULES:
        out.update(mod.VERIFICATION_CHECKS)
    return out


def _parse_s(text: str) -> SIntSpec:
    if not text.strip():
        return SIntSpec()
    return SIntSpec(int(p) for p in text.split(","))


def _parse_b_values(text: str) -> tuple[int, ...]:
    return tuple(int(b) for b in text.split(","))


def _policy(args) -> OrbitPolicy:
    return OrbitPolicy(n_cap=args.ncap, height_budget_bits=args.height_budget_bits)


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _map_from_args(args) -> "maps_mod.RationalMapQ":
    return parse_map(resolve_map_text(args.map)).to_rational_map()


def cmd_orbit(args) -> int:
    m = _map_from_args(args)
    point = parse_point(args.point)
    s = _parse_s(args.s)
    rec = scan_orbit(m, point, s, n_cap=args.ncap, height_budget_bits=args.height_budget_bits)
    count, exact = count_s_integral(rec)
    if args.format == "csv":
        rows = [(n, format_point(p), int(n in rec.integral_indices))
                for n, p in enumerate(rec.points)]
        _write(args, emit_csv("orbit", rows))
    else:
        _write(args, emit_json({
            "map": args.map,
            "point": format_point(point),
            "s": [p for p in s],
            "points": [format_point(p) for p in rec.points],
            "integral_indices": list(rec.integral_indices),
            "cycle_entry": list(rec.cycle_entry) if rec.cycle_entry else None,
            "truncation": rec.truncation.value,
            "count": count,
            "exact": exact,
        }))
    return 0


def cmd_canheight(args) -> int:
    m = _map_from_args(args)
    point = parse_point(args.point)
    est = canonical_height(m, point, args.tol)
    _write(args, emit_json({
        "map": args.map,
        "point": format_point(point),
        "value": est.value,
        "radius": est.radius,
        "iterations": est.iterations_used,
    }))
    return 0


def cmd_preper(args) -> int:
    m = _map_from_args(args)
    point = parse_point(args.point)
    _write(args, emit_json({
        "map": args.map,
        "point": format_point(point),
        "preperiodic": is_preperiodic(m, point),
    }))
    return 0


def cmd_nmax(args) -> int:
    m = _map_from_args(args)
    s = _parse_s(args.s)
    n_emp, witness = empirical_max_iterate(m, s, args.b, n_cap=args.ncap,
                                           height_budget_bits=args.height_budget_bits,
                                           workers=args.workers)
    _write(args, emit_json({
        "map": args.map,
        "s": [p for p in s],
        "b": args.b,
        "n_emp": n_emp,
        "witness": format_point(witness) if witness else None,
    }))
    return 0


def cmd_density(args) -> int:
    m = _map_from_args(args)
    s = _parse_s(args.s)
    report = density_of_integral_preimages(m, s, _parse_b_values(args.b),
                                           workers=args.workers)
    if args.format == "csv":
        rows = list(zip(report.b_values, report.hits, report.totals, report.ratios))
        _write(args, emit_csv("density", rows))
    else:
        _write(args, emit_json({
            "map": args.map,
            "s": [p for p in s],
            "b_values": list(report.b_values),
            "hits": list(report.hits),
            "totals": list(report.totals),
            "ratios": list(report.ratios),
            "trap_checked": report.trap_checked,
            "trap_violations": report.trap_violations,
            "trap_hits": list(report.trap_hits) if report.trap_hits else None,
            "loglog_slope": report.loglog_slope(),
        }))
    return 0


def cmd_avg(args) -> int:
    expr = parse_map(resolve_map_text(args.map))
    beta_expr = parse_map(args.beta)
    if beta_expr.x_degree > 0:
        raise DynctlError("beta must be a function of the parameter only")
    var = ("t",)
    beta = BasepointSpec(beta_expr.num.restrict_vars(var), beta_expr.den.restrict_vars(var))
    target = expr.to_rational_map() if expr.is_constant_map() else expr.to_family()
    s = _parse_s(args.s)
    report = avg_experiment(target, beta, s, _parse_b_values(args.b),
                            policy=_policy(args), workers=args.workers)
    if args.format == "csv":
        rows = [(b, report.population[i], report.totals[i], report.averages[i],
                 report.truncated_fractions[i]) for i, b in enumerate(report.b_values)]
        _write(args, emit_csv("avg", rows))
    else:
        _write(args, emit_json({
            "map": args.map,
            "beta": args.beta,
            "s": [p for p in s],
            "b_values": list(report.b_values),
            "population": list(report.population),
            "excluded": list(report.excluded),
            "totals": list(report.totals),
            "averages": list(report.averages),
            "truncated_fractions": list(report.truncated_fractions),
        }))
    return 0


def cmd_avg3(args) -> int:
    report = three_param_avg(args.n1, args.n2, args.n3, _parse_b_values(args.b),
                             policy=_policy(args), workers=args.workers)
    if args.format == "csv":
        rows = [(b, report.population[i], report.totals[i], report.averages[i],
                 report.open_cell_max(i)) for i, b in enumerate(report.b_values)]
        _write(args, emit_csv("avg3", rows))
    else:
        _write(args, emit_json({
            "exponents": list(report.exponents),
            "b_values": list(report.b_values),
            "population": list(report.population),
            "totals": list(report.totals),
            "averages": list(report.averages),
            "truncated_fractions": list(report.truncated_fractions),
            "cells": [
                {name: {"population": tally.population, "total": tally.total,
                        "max_count": tally.max_count}
                 for name, tally in cell.items()}
                for cell in report.cells
            ],
        }))
    return 0


def cmd_ffavg(args) -> int:
    s_polys = []
    if args.s.strip():
        s_polys = [parse_ffpoly(args.p, chunk) for chunk in args.s.split(",")]
        validate_s_set(s_polys)
    beta = [int(c) for c in args.beta_coeffs.split(",")]
    report = ff_orbit_avg(args.p, args.d, beta, s_polys, _parse_b_values(args.b),
                          n_cap=args.ncap)
    if args.format == "csv":
        rows = [(b, report.population[i], report.totals[i], report.averages[i])
                for i, b in enumerate(report.b_values)]
        _write(args, emit_csv("ffavg", rows))
    else:
        _write(args, emit_json({
            "p": args.p,
            "d": args.d,
            "beta_coeffs": beta,
            "b_values": list(report.b_values),
            "population": list(report.population),
            "totals": list(report.totals),
            "averages": list(report.averages),
            "truncated_fractions": list(report.truncated_fractions),
        }))
    return 0


def cmd_verify(args) -> int:
    checks = registered_checks()
    lines = []
    all_ok = True
    payload = []
    for name in VERIFY_REGISTRY:
        fn = checks[name]
        kwargs = {}
        if "seed" in inspect.signature(fn).parameters:
            kwargs["seed"] = args.seed
        report = fn(**kwargs)
        all_ok = all_ok and report.ok
        lines.extend(report.lines())
        payload.extend(
            {"name": c.name, "ok": c.ok, "detail": c.detail} for c in report.checks
        )
    if args.format == "json":
        _write(args, emit_json({"ok": all_ok, "checks": payload}))
    else:
        _write(args, "\n".join(lines) + "\n")
    return 0 if all_ok else 1


def build_parser() -> tuple[argparse.ArgumentParser, list[argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="dynctl",
        description="Exact-arithmetic experiments on S-integral points in orbits of rational self-maps of P^1.",
    )
    parser.add_argument("--config", help="key=value file supplying flag defaults")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    subparsers: list[argparse.ArgumentParser] = []

    def common(p, with_policy=True):
        subparsers.append(p)
        p.add_argument("--config", help="key=value file supplying flag defaults")
        p.add_argument("--format", choices=("csv", "json"), default="json")
        p.add_argument("--out", default="", help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=default_workers())
        if with_policy:
            p.add_argument("--ncap", type=int, default=16)
            p.add_argument("--height-budget-bits", type=int, default=10**6,
                           dest="height_budget_bits")

    p = sub.add_parser("orbit", help="scan one orbit and count S-integral points")
    p.add_argument("--map", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--s", default="")
    common(p)
    p.set_defaults(fn=cmd_orbit)

    p = sub.add_parser("canheight", help="certified canonical height of a point")
    p.add_argument("--map", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    common(p, with_policy=False)
    p.set_defaults(fn=cmd_canheight)

    p = sub.add_parser("preper", help="certified preperiodicity decision")
    p.add_argument("--map", required=True)
    p.add_argument("--point", required=True)
    common(p, with_policy=False)
    p.set_defaults(fn=cmd_preper)

    p = sub.add_parser("nmax", help="empirical largest iterate producing an S-integral point")
    p.add_argument("--map", required=True)
    p.add_argument("--s", default="")
    p.add_argument("--b", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_nmax)

    p = sub.add_parser("density", help="density of S-integral preimages by height")
    p.add_argument("--map", required=True)
    p.add_argument("--s", default="")
    p.add_argument("--b", required=True, help="comma-separated height bounds")
    common(p, with_policy=False)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("avg", help="average integral orbit count over a parameter sweep")
    p.add_argument("--map", required=True)
    p.add_argument("--beta", required=True, help="basepoint family, a rational function of t")
    p.add_argument("--s", default="")
    p.add_argument("--b", required=True)
    common(p)
    p.set_defaults(fn=cmd_avg)

    p = sub.add_parser("avg3", help="boxed average for the three-parameter family")
    p.add_argument("--n1", type=int, default=6)
    p.add_argument("--n2", type=int, default=6)
    p.add_argument("--n3", type=int, default=6)
    p.add_argument("--b", required=True)
    common(p)
    p.set_defaults(fn=cmd_avg3)

    p = sub.add_parser("ffavg", help="function-field average over non-constant f")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--beta-coeffs", required=True, dest="beta_coeffs",
                   help="coefficients of beta as a polynomial in f, ascending")
    p.add_argument("--s", default="", help="comma-separated monic irreducible polynomials in t")
    p.add_argument("--b", required=True)
    common(p)
    p.set_defaults(fn=cmd_ffavg)

    p = sub.add_parser("verify", help="run every registered identity check")
    common(p, with_policy=False)
    p.set_defaults(fn=cmd_verify)

    return parser, subparsers


_INT_KEYS = ("seed", "workers", "ncap", "height_budget_bits", "n1", "n2", "n3", "p", "d")


def _load_config_defaults(argv: list[str],
                          parsers: list[argparse.ArgumentParser]) -> None:
    """Apply key=value file entries as defaults; explicit flags still win.

    Subparsers parse into a fresh namespace, so the defaults go onto every
    parser, not just the top-level one.
    """
    if "--config" not in argv:
        return
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        return
    defaults = {}
    with open(argv[idx + 1], encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, _, value = line.partition("=")
            defaults[key.strip().replace("-", "_")] = value.strip()
    for key in _INT_KEYS:
        if key in defaults:
            defaults[key] = int(defaults[key])
    if "tol" in defaults:
        defaults["tol"] = float(defaults["tol"])
    for p in parsers:
        p.set_defaults(**defaults)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = build_parser()
    try:
        _load_config_defaults(argv, [parser] + subparsers)
    except OSError as exc:
        sys.stderr.write(error_json(exc))
        return 1
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DynctlError as exc:
        sys.stderr.write(error_json(exc))
        return 1
    except ValueError as exc:
        sys.stderr.write(error_json(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
