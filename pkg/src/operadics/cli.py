"""Command-line entry point.

Four subcommands: `verify` runs the randomized identity suites, `cohomology`
prints an exact Betti table for an algebra file, `lax` integrates a Lax
system from a JSON description and streams CSV, and `oscillator` runs the
harmonic-oscillator demo.  Identical flags and seed always produce
byte-identical output.

Exit codes are a stable contract:

    0  success            3  mu not associative     5  non-finite values
    1  a verify suite     4  unparsable input       6  missing initial
       failed                file                      operation (deg >= 2)
    2  bad configuration
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .cohomology import betti_table, default_n_max, load_algebra
from .dynamics import (
    integrate,
    load_initial_op,
    load_lax_system,
    monitor_associator,
    monitor_trace_power,
)
from .errors import (
    ConfigError,
    NonFiniteError,
    NotAssociativeError,
    OperadError,
    ParseError,
)
from .oscillator import (
    OscillatorParams,
    hamiltonian,
    monodromy_report,
    oscillator_system,
)
from .scalars import format_float
from .verify import SuiteConfig, run_all

EXIT_OK = 0
EXIT_SUITE_FAILED = 1
EXIT_CONFIG = 2
EXIT_NOT_ASSOCIATIVE = 3
EXIT_PARSE = 4
EXIT_NON_FINITE = 5
EXIT_MISSING_INIT = 6


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="operadics",
        description="identity suites, cohomology tables, and Lax flows "
        "for graded multilinear operations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        p.add_argument("--out", default=None, help="write output to this file")
        p.add_argument(
            "--format",
            choices=("text", "machine"),
            default="text",
            help="report format (machine = JSON)",
        )

    pv = sub.add_parser("verify", help="run every identity suite")
    common(pv)
    pv.add_argument("--dim", type=int, default=2, help="module dimension")
    pv.add_argument("--max-degree", type=int, default=3, help="largest degree drawn")
    pv.add_argument("--cases", type=int, default=200, help="cases per suite")
    pv.add_argument("--tol", type=float, default=1e-9, help="float-backend tolerance")
    pv.add_argument("--backend", choices=("exact", "float"), default="exact")
    pv.add_argument("--corrupt-sign", action="store_true", help=argparse.SUPPRESS)

    pc = sub.add_parser("cohomology", help="exact Betti table of an algebra file")
    common(pc)
    pc.add_argument("--algebra", required=True, help="JSON structure-constant file")
    pc.add_argument(
        "--max-degree",
        type=int,
        default=None,
        help="largest cochain degree (default sized to the dimension)",
    )
    pc.add_argument("--backend", choices=("exact", "float"), default="exact")

    pl = sub.add_parser("lax", help="integrate a Lax system file, stream CSV")
    common(pl)
    pl.add_argument("--system", required=True, help="JSON system file")
    pl.add_argument("--dt", type=float, default=None, help="override the file's dt")
    pl.add_argument(
        "--t-end", type=float, default=None, help="override the file's t_end"
    )

    po = sub.add_parser("oscillator", help="harmonic-oscillator demo, stream CSV")
    common(po)
    po.add_argument("--omega", type=float, default=1.0, help="angular frequency > 0")
    po.add_argument("--q0", type=float, default=1.0)
    po.add_argument("--p0", type=float, default=0.0)
    po.add_argument("--degree", type=int, default=1, help="degree of the variable")
    po.add_argument("--t-end", type=float, default=10.0)
    po.add_argument("--dt", type=float, default=1e-3)
    po.add_argument(
        "--l-init",
        default=None,
        help="JSON file with the initial operation (required for degree >= 2)",
    )
    return parser


def _machine(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _csv(columns, rows, footer_lines=()) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(format_float(v) for v in row))
    lines.extend(footer_lines)
    return "\n".join(lines) + "\n"


def _cmd_verify(args) -> tuple[int, str]:
    cfg = SuiteConfig(
        seed=args.seed,
        dim=args.dim,
        max_degree=args.max_degree,
        cases=args.cases,
        tol=args.tol,
        backend=args.backend,
        corrupt_sign=args.corrupt_sign,
    )
    results = run_all(cfg)
    ok = all(r.passed for r in results)
    if args.format == "machine":
        doc = {
            "command": "verify",
            "config": {
                "seed": cfg.seed,
                "dim": cfg.dim,
                "max_degree": cfg.max_degree,
                "cases": cfg.cases,
                "tol": cfg.tol,
                "backend": cfg.backend,
            },
            "suites": [
                {
                    "name": r.name,
                    "cases": r.cases,
                    "passed": r.passed,
                    "failures": r.failures,
                    "counterexample": r.counterexample,
                    "note": r.note,
                }
                for r in results
            ],
            "ok": ok,
        }
        return (EXIT_OK if ok else EXIT_SUITE_FAILED, _machine(doc))
    lines = [
        f"verify: backend={cfg.backend} dim={cfg.dim} max-degree={cfg.max_degree} "
        f"cases={cfg.cases} tol={cfg.tol:g} seed={cfg.seed}"
    ]
    if cfg.cases == 0:
        lines.append("warning: 0 cases requested; every suite passes vacuously")
    for r in results:
        status = "pass" if r.passed else f"FAIL ({r.failures} failures)"
        if r.note:
            status += f" ({r.note})"
        lines.append(f"  {r.name:<34} {r.cases:>5} cases  {status}")
        if r.counterexample:
            lines.append(f"    counterexample: {r.counterexample}")
    passed = sum(1 for r in results if r.passed)
    lines.append(f"result: {passed}/{len(results)} suites passed")
    return (EXIT_OK if ok else EXIT_SUITE_FAILED, "\n".join(lines) + "\n")


def _cmd_cohomology(args) -> tuple[int, str]:
    if args.backend != "exact":
        raise ConfigError("cohomology requires the exact backend")
    spec = load_algebra(args.algebra)
    n_max = args.max_degree
    if n_max is None:
        n_max = default_n_max(spec.dim)
    table = betti_table(spec, n_max)
    if args.format == "machine":
        doc = {
            "command": "cohomology",
            "name": table.name,
            "dim": table.dim,
            "n_max": table.n_max,
            "table": [
                {
                    "n": n,
                    "dim": table.dims[n],
                    "rank": table.ranks[n],
                    "kernel": table.kernels[n],
                    "h": table.betti[n],
                }
                for n in range(table.n_max + 1)
            ],
        }
        return (EXIT_OK, _machine(doc))
    lines = [f"algebra: {table.name} (dim {table.dim}), degrees 0..{table.n_max}"]
    lines.append("  n  dim C^n  rank  kernel  H^n")
    for n in range(table.n_max + 1):
        lines.append(
            f"  {n}  {table.dims[n]:>7}  {table.ranks[n]:>4}  "
            f"{table.kernels[n]:>6}  {table.betti[n]:>3}"
        )
    return (EXIT_OK, "\n".join(lines) + "\n")


def _cmd_lax(args) -> tuple[int, str]:
    system = load_lax_system(args.system)
    if args.dt is not None or args.t_end is not None:
        system = replace(
            system,
            dt=args.dt if args.dt is not None else system.dt,
            t_end=args.t_end if args.t_end is not None else system.t_end,
        )
    samples = integrate(system)
    size = system.l0.coeffs.size
    columns = ["t", *system.observe, *(f"L{k}" for k in range(size))]
    rows = [
        [s.t, *(s.invariants[name] for name in system.observe), *map(float, s.l.coeffs)]
        for s in samples
    ]
    if args.format == "machine":
        doc = {"command": "lax", "columns": columns, "rows": rows}
        return (EXIT_OK, _machine(doc))
    return (EXIT_OK, _csv(columns, rows))


def _cmd_oscillator(args) -> tuple[int, str]:
    if args.degree >= 2 and args.l_init is None:
        print(
            "error: --degree >= 2 needs --l-init FILE (no canonical initial "
            "operation exists)",
            file=sys.stderr,
        )
        return (EXIT_MISSING_INIT, "")
    l_init = None
    if args.l_init is not None:
        l_init = load_initial_op(args.l_init, 2)
    params = OscillatorParams(
        omega=args.omega,
        q0=args.q0,
        p0=args.p0,
        degree=args.degree,
        l_init=l_init,
    )
    samples = integrate(oscillator_system(params, args.dt, args.t_end))
    columns = ["t", "q", "p", "H"]
    if params.degree == 1:
        columns.append("trace2")
    elif params.degree == 2:
        columns.append("assoc_defect")
    size = 2 ** (params.degree + 1)
    columns.extend(f"L{k}" for k in range(size))
    rows = []
    for s in samples:
        q, p = s.state
        row = [s.t, q, p, hamiltonian(q, p, params.omega)]
        if params.degree == 1:
            row.append(monitor_trace_power(s.l, 2))
        elif params.degree == 2:
            row.append(monitor_associator(s.l))
        row.extend(map(float, s.l.coeffs))
        rows.append(row)
    report = monodromy_report(params)
    if args.format == "machine":
        doc = {
            "command": "oscillator",
            "columns": columns,
            "rows": rows,
            "monodromy": {
                "degree": report.degree,
                "period": report.period,
                "defect": report.defect,
                "periodic": report.periodic,
            },
        }
        return (EXIT_OK, _machine(doc))
    footer = (
        f"# monodromy degree={report.degree} period={format_float(report.period)} "
        f"defect={format_float(report.defect)} "
        f"periodic={'true' if report.periodic else 'false'}",
    )
    return (EXIT_OK, _csv(columns, rows, footer))


_HANDLERS = {
    "verify": _cmd_verify,
    "cohomology": _cmd_cohomology,
    "lax": _cmd_lax,
    "oscillator": _cmd_oscillator,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        code, text = _HANDLERS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotAssociativeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_ASSOCIATIVE
    except NonFiniteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NON_FINITE
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OperadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if text:
        if args.out is not None:
            with open(args.out, "w", newline="") as handle:
                handle.write(text)
        else:
            sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
