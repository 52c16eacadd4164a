"""Command-line surface: transmit, sweep, ratio, from-table, physical, validate.

Exit codes: 0 success; 2 usage; 3 convergence failure (partial result on
stderr); 4 unwritable output path; 5 malformed density-table CSV; 6
relativistic regime; validate returns 1 when any check fails.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import acceptance, physical
from .errors import (
    AcceptanceDataError,
    ConvergenceError,
    DomainError,
    RangeError,
    RegimeError,
    TableFormatError,
)
from .packet import read_density_table
from .specfun import LogMagnitude
from .transmission import (
    BarrierQuery,
    evaluate,
    ln_T_from_table,
    planewave_validity,
)

SWEEP_HEADER = "A,B,gamma,method,ln_T,log10_T,quad_error_ln,planewave_ok"
RATIO_HEADER = "A,B,gamma,ln_T_quad,ln_T_star,R"

# user-facing method names -> internal enums
METHOD_FLAGS = {
    "quad": "quadrature",
    "saddle": "steepest_descent",
    "bessel": "bessel_gamma1",
    "auto": "auto",
}


def _fmt(x) -> str:
    """Serialize one value: 12 significant digits, scientific notation."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    return f"{x:.11e}"


def _json_token(x) -> str:
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return f'"{x}"'
    return f"{x:.11e}"


def _render_json(pairs) -> str:
    """Deterministic one-object JSON with numbers as scientific tokens."""
    body = ", ".join(f'"{k}": {_json_token(v)}' for k, v in pairs)
    return "{" + body + "}"


def _result_pairs(res):
    """The fixed single-result schema, plus diagnostics when present."""
    pairs = [
        ("ln_T", res.ln_T),
        ("log10_T", res.log10_T),
        ("G", res.G),
        ("y_star_numeric", res.y_star_numeric),
        ("y_star_approx", res.y_star_approx),
        ("quad_error_ln", res.quad_error_ln),
        ("planewave_ok", res.planewave_ok),
        ("method_used", res.method_used),
    ]
    if res.low_confidence is not None:
        pairs.append(("low_confidence", res.low_confidence))
    if res.ln_T_asymptotic is not None:
        pairs.append(("ln_T_asymptotic", res.ln_T_asymptotic))
    return pairs


@dataclass(frozen=True)
class SweepConfig:
    """Validated sweep request: Cartesian grid plus output destination."""

    A_values: tuple
    B_grid: tuple  # (min, max, count, spacing)
    gamma_values: tuple
    methods: tuple
    output_path: str
    format: str

    def __post_init__(self):
        b_min, b_max, count, spacing = self.B_grid
        if not self.A_values or not self.gamma_values or not self.methods:
            raise DomainError("A, gamma, and method lists must be non-empty")
        if not (0.0 < b_min < b_max) or count < 2:
            raise DomainError("B grid requires 0 < min < max and count >= 2")
        if spacing not in ("log", "linear"):
            raise DomainError(f"unknown spacing {spacing!r}")
        if self.format not in ("csv", "json"):
            raise DomainError(f"unknown format {self.format!r}")

    def b_values(self) -> np.ndarray:
        b_min, b_max, count, spacing = self.B_grid
        if spacing == "log":
            return np.logspace(math.log10(b_min), math.log10(b_max), count)
        return np.linspace(b_min, b_max, count)


def _evaluate_grid(queries, threads):
    """Evaluate queries preserving input order; pure evaluators make the
    parallel result identical to the serial one."""
    def one(q):
        try:
            return evaluate(q)
        except ConvergenceError as exc:
            return exc

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, queries))
    return [one(q) for q in queries]


def _write_rows(path, header, rows):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(header + "\n")
            for row in rows:
                fh.write(",".join(row) + "\n")
    except OSError as exc:
        print(f"cannot write {path}: {exc}", file=sys.stderr)
        return 4
    return 0


def _row_json(pairs) -> str:
    """One sweep row as JSON; CSV string cells map to typed JSON values."""
    parts = []
    for k, v in pairs:
        if k in ("method", "note"):
            parts.append(f'"{k}": "{v}"')
        elif v == "":
            parts.append(f'"{k}": null')
        else:
            parts.append(f'"{k}": {v}')  # already a numeric/boolean token
    return "{" + ", ".join(parts) + "}"


def cmd_transmit(args) -> int:
    try:
        query = BarrierQuery(args.A, args.B, args.gamma,
                             METHOD_FLAGS[args.method])
    except (DomainError, RangeError) as exc:
        print(f"invalid query: {exc}", file=sys.stderr)
        return 2
    try:
        res = evaluate(query)
    except ConvergenceError as exc:
        partial = [("ln_T", exc.ln_T), ("quad_error_ln", exc.quad_error_ln)]
        print(_render_json(partial), file=sys.stderr)
        print(f"quadrature did not converge: {exc}", file=sys.stderr)
        return 3
    print(_render_json(_result_pairs(res)))
    return 0


def cmd_sweep(args) -> int:
    try:
        config = SweepConfig(
            A_values=tuple(args.A),
            B_grid=(args.B_min, args.B_max, args.B_count, args.B_spacing),
            gamma_values=tuple(args.gammas),
            methods=tuple(METHOD_FLAGS[m] for m in args.method),
            output_path=args.out,
            format=args.format,
        )
        b_vals = config.b_values()
        queries = [BarrierQuery(A, float(B), g, m)
                   for A in config.A_values
                   for g in config.gamma_values
                   for B in b_vals
                   for m in config.methods]
    except (DomainError, RangeError) as exc:
        print(f"invalid sweep: {exc}", file=sys.stderr)
        return 2

    results = _evaluate_grid(queries, args.threads)
    rows = []
    for q, res in zip(queries, results):
        prefix = [_fmt(q.A), _fmt(q.B), _fmt(q.gamma)]
        if isinstance(res, ConvergenceError):
            ok = planewave_validity(q.A, q.B)[1]
            rows.append(prefix + [q.method, "", "", "", _fmt(ok),
                                  f"no convergence; best ln_T={res.ln_T}"])
        else:
            rows.append(prefix + [res.method_used, _fmt(res.ln_T),
                                  _fmt(res.log10_T), _fmt(res.quad_error_ln),
                                  _fmt(res.planewave_ok)])
    if config.format == "csv":
        return _write_rows(config.output_path, SWEEP_HEADER, rows)

    keys = SWEEP_HEADER.split(",") + ["note"]
    try:
        with open(config.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("[\n")
            for i, row in enumerate(rows):
                sep = "," if i + 1 < len(rows) else ""
                fh.write("  " + _row_json(zip(keys, row)) + sep + "\n")
            fh.write("]\n")
    except OSError as exc:
        print(f"cannot write {config.output_path}: {exc}", file=sys.stderr)
        return 4
    return 0


def cmd_ratio(args) -> int:
    try:
        if not args.gammas:
            raise DomainError("gamma list must be non-empty")
        if not (0.0 < args.B_min < args.B_max) or args.B_count < 2:
            raise DomainError("B grid requires 0 < min < max and count >= 2")
        b_vals = np.logspace(math.log10(args.B_min), math.log10(args.B_max),
                             args.B_count)
        quad_queries = [BarrierQuery(args.A, float(B), g, "quadrature")
                        for g in args.gammas for B in b_vals]
        star_queries = [BarrierQuery(args.A, float(B), g, "steepest_descent")
                        for g in args.gammas for B in b_vals]
    except (DomainError, RangeError) as exc:
        print(f"invalid ratio study: {exc}", file=sys.stderr)
        return 2

    quad_results = _evaluate_grid(quad_queries, args.threads)
    star_results = _evaluate_grid(star_queries, args.threads)
    rows = []
    for q, rq, rs in zip(quad_queries, quad_results, star_results):
        prefix = [_fmt(args.A), _fmt(q.B), _fmt(q.gamma)]
        if isinstance(rq, ConvergenceError) or isinstance(rs, ConvergenceError):
            rows.append(prefix + ["", "", "", "no convergence"])
            continue
        ln_R = rs.ln_T - rq.ln_T
        # R can under/overflow a float; render via its log instead.
        # 11 decimals = 12 significant digits, same as _fmt.
        rows.append(prefix + [_fmt(rq.ln_T), _fmt(rs.ln_T),
                              LogMagnitude(ln_R).scientific(11)])
    return _write_rows(args.out, RATIO_HEADER, rows)


def cmd_from_table(args) -> int:
    try:
        table = read_density_table(args.file)
    except FileNotFoundError:
        print(f"no such file: {args.file}", file=sys.stderr)
        return 5
    except TableFormatError as exc:
        print(f"malformed density table: {exc}", file=sys.stderr)
        return 5
    if args.A <= 0 or not math.isfinite(args.A):
        print(f"invalid A: {args.A!r}", file=sys.stderr)
        return 2
    res = ln_T_from_table(table, args.A)
    print(_render_json(_result_pairs(res)))
    return 0


def cmd_physical(args) -> int:
    try:
        spec = physical.ParticleSpec(Z=args.Z, mass_amu=args.mass_amu,
                                     kinetic_energy_ev=args.energy_eV)
        v0c = physical.v0_over_c(spec, reduced_mass=args.reduced_mass)
        A = physical.big_A(spec, reduced_mass=args.reduced_mass)
    except DomainError as exc:
        print(f"invalid particle spec: {exc}", file=sys.stderr)
        return 2
    except RegimeError as exc:
        print(f"relativistic regime: {exc}", file=sys.stderr)
        return 6
    scale = physical.little_a(spec)
    print(_render_json([
        ("A", A),
        ("a_over_mc", scale.a_over_mc),
        ("v0_over_c", v0c),
        ("relativistic_flag", v0c > physical.RELATIVISTIC_THRESHOLD),
    ]))
    return 0


def cmd_validate(args) -> int:
    try:
        results = acceptance.run_all(targets_path=args.targets)
    except AcceptanceDataError as exc:
        print(f"validation could not run: {exc}", file=sys.stderr)
        return 1
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed")
    return 0 if passed == len(results) else 1


def _add_threads(p):
    p.add_argument("--threads", type=int, default=1,
                   help="max worker threads (default 1, serial)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coulombpacket",
        description=("Tunneling probability of momentum wave packets "
                     "through a high 1-D Coulomb barrier"),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transmit", help="evaluate one (A, B, gamma) query")
    p.add_argument("--A", type=float, required=True)
    p.add_argument("--B", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--method", choices=sorted(METHOD_FLAGS), default="auto")
    p.set_defaults(func=cmd_transmit)

    p = sub.add_parser("sweep", help="write a CSV/JSON grid of ln_T values")
    p.add_argument("--A", type=float, nargs="+", required=True)
    p.add_argument("--gammas", type=float, nargs="+", required=True)
    p.add_argument("--B-min", type=float, required=True)
    p.add_argument("--B-max", type=float, required=True)
    p.add_argument("--B-count", type=int, default=50)
    p.add_argument("--B-spacing", choices=("log", "linear"), default="log")
    p.add_argument("--method", choices=sorted(METHOD_FLAGS), nargs="+",
                   default=["auto"])
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", required=True)
    _add_threads(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("ratio", help="steepest-descent vs quadrature study")
    p.add_argument("--A", type=float, default=700.0)
    p.add_argument("--gammas", type=float, nargs="+",
                   default=[1.0, 1.5, 2.0, 3.0])
    p.add_argument("--B-min", type=float, default=1e-5)
    p.add_argument("--B-max", type=float, default=10.0)
    p.add_argument("--B-count", type=int, default=25)
    p.add_argument("--out", required=True)
    _add_threads(p)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("from-table", help="average exp(-A/y) over a CSV density")
    p.add_argument("--file", required=True)
    p.add_argument("--A", type=float, required=True)
    p.set_defaults(func=cmd_from_table)

    p = sub.add_parser("physical", help="map (Z, mass, energy) to barrier A")
    p.add_argument("--Z", type=float, required=True)
    p.add_argument("--mass-amu", type=float, required=True)
    p.add_argument("--energy-eV", type=float, required=True)
    p.add_argument("--reduced-mass", action="store_true",
                   help="use m/2 (identical collision partners)")
    p.set_defaults(func=cmd_physical)

    p = sub.add_parser("validate", help="run the acceptance checks")
    p.add_argument("--targets", default=None,
                   help="override path to the frozen oracle targets")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; normalize and re-raise as code
        return int(exc.code or 0)
    return args.func(args)


def entrypoint() -> None:
    raise SystemExit(main())
