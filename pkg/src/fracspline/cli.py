"""Command-line front end.

Every command writes a CSV whose leading ``# key=value`` lines record the
run parameters.  Numbers use six significant digits.  Exit codes: 0 success,
1 usage error, 2 numerical failure, 3 check failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (
    convergence_order,
    error_norms,
    growth_factor,
    heat_flux_at_left,
    pairwise_orders,
    perturbation_decay_check,
)
from .problems import PUBLISHED_TABLES, benchmark
from .solver import Discretization, solve
from .trisolve import SingularSystemError

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_CHECK = 0, 1, 2, 3
G_SLACK = 1e-12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(v) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    if isinstance(v, (int, np.integer)) or isinstance(v, str):
        return str(v)
    return f"{float(v):.5e}"


def write_csv(path, meta: dict, header: list[str], rows) -> str:
    buf = io.StringIO()
    for key, val in meta.items():
        buf.write(f"# {key}={val}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    text = buf.getvalue()
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
    return text


def _meta(spec, disc, command: str, **extra) -> dict:
    meta = {"command": command, "version": __version__}
    if spec is not None:
        meta.update(alpha=spec.alpha, kappa=fmt(spec.kappa), T=spec.T)
    if disc is not None:
        meta.update(
            M=disc.M, N=disc.N, p=disc.p, tau=fmt(disc.tau), h=fmt(disc.h),
            cubic_limit=disc.cubic_limit,
        )
    meta.update(extra)
    return meta


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse number list {text!r}") from exc


def _case_setup(args, example: int):
    case = benchmark(example, getattr(args, "alpha", None))
    spec = case.spec
    if getattr(args, "T", None) is not None:
        spec = dataclasses.replace(spec, T=args.T)
    d = case.default_disc
    M = args.M if getattr(args, "M", None) is not None else d.M
    N = args.N if getattr(args, "N", None) is not None else d.N
    p = args.p if getattr(args, "p", None) is not None else d.p
    disc = Discretization.build(spec, M, N, p, cubic_limit=getattr(args, "cubic_limit", False))
    return spec, disc


def _level_at(disc: Discretization, t: float) -> int:
    n = round(t / disc.T * disc.N)
    if not 0 <= n <= disc.N or abs(disc.time(n) - t) > 1e-9 * max(1.0, disc.T):
        raise UsageError(f"t={t} is not a time level of this grid")
    return n


# -- run ---------------------------------------------------------------------

def cmd_run(args) -> int:
    spec, disc = _case_setup(args, args.example)
    times = _floats(args.at) if args.at else [disc.T]
    levels = [_level_at(disc, t) for t in times]
    history = solve(spec, disc)
    x = disc.nodes()
    header = ["x"]
    cols = []
    extra = {"phi_prime": history.metadata["phi_prime"]}
    for t, n in zip(times, levels):
        u = history.nodal_values(n)
        header.append(f"u_t{t:g}")
        cols.append(u)
        if spec.exact is not None:
            ex = np.asarray(spec.exact(x, disc.time(n)), float) * np.ones_like(x)
            header += [f"exact_t{t:g}", f"abserr_t{t:g}"]
            cols += [ex, np.abs(u - ex)]
            rep = error_norms(history, spec, n)
            extra[f"l2_t{t:g}"] = fmt(rep.l2)
            extra[f"linf_t{t:g}"] = fmt(rep.linf)
    rows = zip(x, *cols)
    write_csv(args.out, _meta(spec, disc, "run", example=args.example, **extra), header, rows)
    return EXIT_OK


# -- table -------------------------------------------------------------------

def table_node(disc: Discretization, x: float) -> int:
    """Index of the node reported for table row ``x``: floor((x - a) / h).

    Table rows name nodal points; on grids where ``x`` is not a node (x = 0.1
    with M = 25) the published values belong to the node just left of it.
    """
    return int(math.floor((x - disc.a) / disc.h + 1e-9))


def _point_errors(spec, disc, xs):
    history = solve(spec, disc)
    t = disc.time(disc.N)
    nodes = disc.nodes()
    u = history.nodal_values(disc.N)
    idx = [table_node(disc, xv) for xv in xs]
    return np.array([abs(u[j] - float(spec.exact(nodes[j], t))) for j in idx])


def table_columns(table_id: int, rows_subset=None):
    """Compute one table; returns (row labels, {column key: values})."""
    table = PUBLISHED_TABLES[table_id]
    out = {}
    if table_id in (1, 2):
        example = table_id
        p = 1.18 if table_id == 1 else 1.52
        for M, N, alpha in table["columns"]:
            spec = benchmark(example, alpha).spec
            disc = Discretization.build(spec, M, N, p)
            out[(M, N, alpha)] = _point_errors(spec, disc, table["rows"])
        return list(table["rows"]), out
    if table_id == 4:
        spec = benchmark(4, 0.6).spec
        for M, N, method in table["columns"]:
            disc = Discretization.build(spec, M, N, 2.53, cubic_limit=(method == "cbscm"))
            out[(M, N, method)] = _point_errors(spec, disc, table["rows"])
        return list(table["rows"]), out
    # table 3: N counts steps per unit time, runs continue to t = 3
    spec = benchmark(3).spec
    rows = list(table["rows"])
    if rows_subset is not None:
        rows = [rows[i] for i in rows_subset]
    for key in table["columns"]:
        out[key] = np.full(len(rows), math.nan)
    for i, (M, N) in enumerate(rows):
        disc = Discretization.build(spec, M, 3 * N, 0.01)
        history = solve(spec, disc)
        for (norm, t) in table["columns"]:
            rep = error_norms(history, spec, int(round(t * N)))
            out[(norm, t)][i] = getattr(rep, norm)
    return rows, out


def _col_name(table_id, key) -> str:
    if table_id in (1, 2):
        return f"M{key[0]}_N{key[1]}_alpha{key[2]:g}"
    if table_id == 4:
        return f"{key[2]}_M{key[0]}_N{key[1]}"
    return f"{key[0]}_t{key[1]:g}"


def cmd_table(args) -> int:
    if args.id not in PUBLISHED_TABLES:
        raise UsageError(f"table id must be 1..4, got {args.id}")
    subset = [int(v) for v in _floats(args.rows)] if args.rows else None
    rows, cols = table_columns(args.id, subset)
    published = PUBLISHED_TABLES[args.id]
    all_rows = list(published["rows"])
    row_idx = [all_rows.index(r) for r in rows]

    header = ["M", "N"] if args.id == 3 else ["x"]
    for key in cols:
        name = _col_name(args.id, key)
        header += [name, f"published_{name}"]
    out_rows = []
    mismatches = []
    for i, (label, pi) in enumerate(zip(rows, row_idx)):
        line = list(label) if args.id == 3 else [label]
        for key, vals in cols.items():
            ours, ref = vals[i], published["columns"][key][pi]
            line += [ours, ref]
            checked = not (args.id == 4 and key[2] == "cbscm")
            if checked and not abs(ours - ref) <= args.rtol * ref:
                mismatches.append((label, _col_name(args.id, key), ours, ref))
        out_rows.append(line)
    meta = {"command": "table", "version": __version__, "table": args.id}
    if args.id != 3:
        meta["row_node"] = "floor((x-a)/h)"
    if args.id == 3:
        meta.update(alpha=0.5, kappa=1.0, p=0.01, T=3.0, note="N is steps per unit time")
    write_csv(args.out, meta, header, out_rows)
    if args.check:
        for label, name, ours, ref in mismatches:
            print(f"MISMATCH {label} {name}: {ours:.5e} vs published {ref:.5e}", file=sys.stderr)
        if mismatches:
            return EXIT_CHECK
    return EXIT_OK


# -- sweep -------------------------------------------------------------------

def cmd_sweep(args) -> int:
    values = [int(v) for v in _floats(args.values)]
    if not values:
        raise UsageError("--values needs at least one entry")
    results = []
    for v in values:
        if args.vary == "M":
            args.M = v
        else:
            args.N = v
        spec, disc = _case_setup(args, args.example)
        if spec.exact is None:
            raise UsageError(f"example {args.example} has no exact solution")
        history = solve(spec, disc)
        rep = error_norms(history, spec, disc.N)
        step = disc.h if args.vary == "M" else disc.tau
        results.append((v, step, rep))
    err_of = lambda r: getattr(r, args.norm)  # noqa: E731
    pairs = [(step, err_of(r)) for _, step, r in results]
    order = convergence_order(pairs) if len(pairs) >= 2 else None
    local = [None] + pairwise_orders(pairs) if len(pairs) >= 2 else [None]
    header = [args.vary, "step", "l2", "linf", "log_step", "log_error", "pairwise_order", "order"]
    rows = []
    for (v, step, rep), po in zip(results, local):
        rows.append([v, step, rep.l2, rep.linf, math.log(step), math.log(err_of(rep)), po, order])
    meta = _meta(spec, None, "sweep", example=args.example, vary=args.vary, norm=args.norm,
                 p=disc.p, cubic_limit=disc.cubic_limit)
    if args.vary == "M":
        meta["N"] = disc.N
    else:
        meta["M"] = disc.M
    meta["order"] = fmt(order)
    write_csv(args.out, meta, header, rows)
    return EXIT_OK


# -- stability ---------------------------------------------------------------

DEFAULT_GRID = {
    "alpha": (0.1, 0.3, 0.5, 0.7, 0.9),
    "tau": (1.0, 1e-3),
    "h": (0.1, 1e-3),
    "p": (0.01, 1.18, 2.53),
    "modes": 65,
    "decay_alpha": (0.1, 0.5, 0.9),
    "decay_tau": (0.1, 0.01),
    "decay_M": (16, 64),
    "decay_steps": 50,
    "decay_trials": 20,
}


def stability_rows(seed: int = 0, grid: dict = DEFAULT_GRID):
    rows = []
    worst_g = -math.inf
    base = benchmark(1).spec
    thetas = np.linspace(0.0, math.pi, grid["modes"])
    for alpha in grid["alpha"]:
        for tau in grid["tau"]:
            for h in grid["h"]:
                for p in grid["p"]:
                    spec = dataclasses.replace(base, alpha=alpha, T=tau, a=0.0, b=h * 2)
                    disc = Discretization.build(spec, 2, 1, p)
                    for th in thetas:
                        g = growth_factor(th / disc.h, disc, spec)
                        worst_g = max(worst_g, g)
                        rows.append(["G", alpha, tau, h, p, th, "", g])
    worst_decay = 0.0
    for alpha in grid["decay_alpha"]:
        for tau in grid["decay_tau"]:
            for M in grid["decay_M"]:
                steps = grid["decay_steps"]
                spec = dataclasses.replace(base, alpha=alpha, T=tau * steps)
                disc = Discretization.build(spec, M, steps, 1.18)
                rep = perturbation_decay_check(spec, disc, grid["decay_trials"], seed)
                worst_decay = max(worst_decay, rep.max_ratio)
                rows.append(["decay", alpha, tau, disc.h, disc.p, "", M, rep.max_ratio])
    return rows, worst_g, worst_decay


def cmd_stability(args) -> int:
    if args.grid != "default":
        raise UsageError(f"unknown grid {args.grid!r}")
    rows, worst_g, worst_decay = stability_rows(args.seed)
    header = ["kind", "alpha", "tau", "h", "p", "upsilon_h", "M", "value"]
    meta = {"command": "stability", "version": __version__, "grid": args.grid, "seed": args.seed,
            "kappa": 1.0, "max_G": fmt(worst_g), "max_decay_ratio": fmt(worst_decay)}
    write_csv(args.out, meta, header, rows)
    return EXIT_OK if worst_g <= 1.0 + G_SLACK else EXIT_CHECK


# -- flux --------------------------------------------------------------------

def cmd_flux(args) -> int:
    alphas = _floats(args.alpha) if args.alpha else [0.1, 0.5, 0.9]
    cols = []
    disc = spec = None
    for alpha in alphas:
        args_alpha = argparse.Namespace(**{**vars(args), "alpha": alpha})
        spec, disc = _case_setup(args_alpha, args.example)
        history = solve(spec, disc)
        cols.append(heat_flux_at_left(history, spec, args.sign))
    header = ["t"] + [f"q_alpha{a:g}" for a in alphas]
    rows = [[cols[0][n, 0]] + [c[n, 1] for c in cols] for n in range(len(cols[0]))]
    meta = _meta(None, disc, "flux", example=args.example, kappa=fmt(spec.kappa),
                 T=spec.T, alphas=",".join(f"{a:g}" for a in alphas), sign=args.sign)
    write_csv(args.out, meta, header, rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fracspline", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def grid_opts(p, alpha_type=float):
        p.add_argument("--alpha", type=alpha_type)
        p.add_argument("--M", type=int)
        p.add_argument("--N", type=int)
        p.add_argument("--p", type=float)
        p.add_argument("--T", type=float)
        p.add_argument("--cubic-limit", action="store_true")
        p.add_argument("--out", default="-")

    run = sub.add_parser("run", help="solve one benchmark and dump nodal values")
    run.add_argument("--example", type=int, required=True, choices=range(1, 6))
    run.add_argument("--at", help="comma-separated output times (default T)")
    grid_opts(run)
    run.set_defaults(func=cmd_run)

    table = sub.add_parser("table", help="reproduce a published error table")
    table.add_argument("--id", type=int, required=True)
    table.add_argument("--rows", help="table 3 only: comma-separated row indices")
    table.add_argument("--check", action="store_true", help="exit 3 if off by more than --rtol")
    table.add_argument("--rtol", type=float, default=0.15)
    table.add_argument("--out", default="-")
    table.set_defaults(func=cmd_table)

    sweep = sub.add_parser("sweep", help="error norms and observed order over M or N")
    sweep.add_argument("--example", type=int, required=True, choices=range(1, 6))
    sweep.add_argument("--vary", choices=("M", "N"), required=True)
    sweep.add_argument("--values", required=True)
    sweep.add_argument("--norm", choices=("linf", "l2"), default="linf")
    grid_opts(sweep)
    sweep.set_defaults(func=cmd_sweep)

    stab = sub.add_parser("stability", help="growth factors and perturbation decay")
    stab.add_argument("--grid", default="default")
    stab.add_argument("--seed", type=int, default=0)
    stab.add_argument("--out", default="-")
    stab.set_defaults(func=cmd_stability)

    flux = sub.add_parser("flux", help="boundary heat flux history")
    flux.add_argument("--example", type=int, default=5, choices=range(1, 6))
    flux.add_argument("--sign", choices=("fick", "plain"), default="fick")
    grid_opts(flux, alpha_type=str)
    flux.set_defaults(func=cmd_flux)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fracspline: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SingularSystemError, ArithmeticError, FloatingPointError) as exc:
        print(f"fracspline: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"fracspline: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
