"""Command line driver.

    sweepflow solve --case shock-reflection --scheme hybrid-us --flux llf \
        --iterator fs --cfl 0.8 [--grid 120x30] [--tol 1e-12] \
        [--max-iters K] [--out DIR] [--dump-every K]
    sweepflow table --case smooth --grids 20,30,40,50,60,70,80 ...

Outputs are plain delimited text with '#'-prefixed header metadata:
residue history (iter, resA, dt, t), final field dump (x, y, rho, u, v, p
plus a troubled flag column on hybrid runs), a troubled-cell mask file for
hybrid runs, and a key/value summary.  The default output directory comes
from $SWEEPFLOW_OUTDIR (falling back to ./sweepflow-out).

Exit codes: 0 converged, 3 stalled, 4 diverged, 5 budget exhausted,
2 usage/configuration error.
"""

import argparse
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigurationError
from .euler import to_primitive
from .interpolation import InterpKind
from .iterators import IteratorKind, Outcome, SolveConfig, solve
from .problems import CASES, get_case
from .riemann import FluxKind

_EXIT_CODES = {
    Outcome.CONVERGED: 0,
    Outcome.STALLED: 3,
    Outcome.DIVERGED: 4,
    Outcome.BUDGET_EXCEEDED: 5,
}


@dataclass
class RunConfig:
    case: str
    scheme: InterpKind = InterpKind.HYBRID_US
    flux: FluxKind = FluxKind.LLF
    iterator: IteratorKind = IteratorKind.FAST_SWEEP
    cfl: float = 0.8
    tol: float = 1e-12
    max_iters: int = None
    grid: tuple = None
    out: Path = None
    dump_every: int = 0

    def solve_config(self):
        return SolveConfig(
            cfl=self.cfl, tol=self.tol, max_iters=self.max_iters,
            scheme=self.scheme, flux=self.flux, iterator=self.iterator,
        )


def default_outdir():
    return Path(os.environ.get("SWEEPFLOW_OUTDIR", "sweepflow-out"))


def _fmt(x):
    return f"{x:.17e}"


def write_history(path, history, meta):
    with open(path, "w") as fh:
        for k, v in meta.items():
            fh.write(f"# {k} = {v}\n")
        fh.write("# columns: iter resA dt t\n")
        for rec in history:
            fh.write(f"{rec.n}\t{_fmt(rec.resA)}\t{_fmt(rec.dt)}\t{_fmt(rec.t)}\n")


def emit_field(path, field, gas, meta, troubled=None):
    """Interior points only, j outer / i inner, one row per active point."""
    grid = field.grid
    W = to_primitive(np.where(field.mask[..., None], field.interior, 1.0), gas)
    xs, ys = grid.x_centers(), grid.y_centers()
    cols = "x y rho u v p" + (" troubled" if troubled is not None else "")
    with open(path, "w") as fh:
        for k, v in meta.items():
            fh.write(f"# {k} = {v}\n")
        fh.write(f"# columns: {cols}\n")
        for j in range(grid.ny):
            for i in range(grid.nx):
                if not field.mask[i, j]:
                    continue
                row = (
                    f"{_fmt(xs[i])}\t{_fmt(ys[j])}\t{_fmt(W[i, j, 0])}\t"
                    f"{_fmt(W[i, j, 1])}\t{_fmt(W[i, j, 2])}\t{_fmt(W[i, j, 3])}"
                )
                if troubled is not None:
                    row += f"\t{int(troubled[i, j])}"
                fh.write(row + "\n")


def write_troubled(path, field, troubled, meta):
    grid = field.grid
    xs, ys = grid.x_centers(), grid.y_centers()
    with open(path, "w") as fh:
        for k, v in meta.items():
            fh.write(f"# {k} = {v}\n")
        fh.write("# columns: x y troubled\n")
        for j in range(grid.ny):
            for i in range(grid.nx):
                if not field.mask[i, j]:
                    continue
                fh.write(f"{_fmt(xs[i])}\t{_fmt(ys[j])}\t{int(troubled[i, j])}\n")


def write_summary(path, meta):
    with open(path, "w") as fh:
        for k, v in meta.items():
            fh.write(f"{k}\t{v}\n")


def run(config: RunConfig):
    """Execute one solve and write the output bundle; returns (result, dir)."""
    case = get_case(config.case)
    grid = case.make_grid(*(config.grid or (None, None)))
    field, disc = case.build(grid)
    outdir = config.out or default_outdir()
    outdir = Path(outdir) / f"{config.case}-{config.scheme.value}-" \
        f"{config.flux.value}-{config.iterator.value}-cfl{config.cfl:g}-" \
        f"{grid.nx}x{grid.ny}"
    outdir.mkdir(parents=True, exist_ok=True)

    scfg = config.solve_config()
    meta = {
        "case": config.case,
        "grid": f"{grid.nx}x{grid.ny}",
        "scheme": config.scheme.value,
        "flux": config.flux.value,
        "iterator": config.iterator.value,
        "cfl": config.cfl,
        "tol": config.tol,
    }

    if config.dump_every > 0:
        result = _run_with_dumps(case, field, disc, scfg, config, outdir, meta)
    else:
        result = solve((field, disc), scfg)

    meta_run = dict(meta)
    meta_run["iterations"] = result.iterations
    meta_run["final_resA"] = _fmt(result.final_resA)
    meta_run["final_time"] = _fmt(result.final_time)
    meta_run["outcome"] = result.outcome.value

    write_history(outdir / "history.tsv", result.history, meta)
    troubled = None
    if config.scheme is InterpKind.HYBRID_US:
        troubled = disc.troubled_mask(result.field)
        write_troubled(outdir / "troubled.tsv", result.field, troubled, meta_run)
    emit_field(outdir / "field.tsv", result.field, scfg.gas, meta_run,
               troubled=troubled)
    summary = dict(meta_run)
    summary["wall_clock_seconds"] = f"{result.wall_time:.3f}"
    if result.detail:
        summary["detail"] = result.detail
    if case.exact is not None and result.outcome is Outcome.CONVERGED:
        l1, linf = density_errors(result.field, case, scfg.gas)
        summary["l1_density_error"] = _fmt(l1)
        summary["linf_density_error"] = _fmt(linf)
    write_summary(outdir / "summary.tsv", summary)
    return result, outdir


def _run_with_dumps(case, field, disc, scfg, config, outdir, meta):
    """Budgeted chunks of the solve with periodic field checkpoints."""
    from .iterators import SolveResult

    every = config.dump_every
    budget = scfg.budget(disc.grid)
    history = []
    done = 0
    result = None
    while done < budget:
        chunk = min(every, budget - done)
        sub = SolveConfig(
            cfl=scfg.cfl, tol=scfg.tol, max_iters=chunk, scheme=scfg.scheme,
            flux=scfg.flux, iterator=scfg.iterator, params=scfg.params,
            gas=scfg.gas,
        )
        result = solve((field, disc), sub)
        for rec in result.history:
            history.append(type(rec)(rec.n + done, rec.resA, rec.dt,
                                      rec.t + (history[-1].t if history else 0.0),
                                      rec.cfl))
        done += result.iterations
        emit_field(outdir / f"field-{done:07d}.tsv", result.field, scfg.gas,
                   dict(meta, iterations=done))
        if result.outcome is not Outcome.BUDGET_EXCEEDED:
            break
    return SolveResult(result.field, history, result.outcome, result.detail,
                       result.wall_time)


def density_errors(field, case, gas):
    """Interior L1 (mean absolute) and Linf density errors vs the exact
    steady solution."""
    grid = field.grid
    X, Y = np.meshgrid(grid.x_centers(), grid.y_centers(), indexing="ij")
    rho_exact = case.exact(X, Y)[0]
    diff = np.abs(field.interior[..., 0] - rho_exact)[field.mask]
    return float(np.mean(diff)), float(np.max(diff))


def accuracy_table(case_name, grids, scheme, flux, iterator, cfl,
                   tol=1e-12, max_iters=None, stream=sys.stdout):
    """Per-grid L1/Linf density errors vs the exact solution, successive
    orders log(e_k/e_{k+1}) / log(N_{k+1}/N_k), and wall-clock seconds."""
    case = get_case(case_name)
    if case.exact is None:
        raise ConfigurationError(f"case {case_name!r} has no exact solution")
    rows = []
    for n in grids:
        cfg = SolveConfig(cfl=cfl, tol=tol, max_iters=max_iters,
                          scheme=scheme, flux=flux, iterator=iterator)
        t0 = time.perf_counter()
        result = solve(case, cfg, grid=case.make_grid(n, n))
        seconds = time.perf_counter() - t0
        if result.outcome is not Outcome.CONVERGED:
            raise ConfigurationError(
                f"{case_name} {n}x{n} did not converge: {result.outcome.value}"
            )
        l1, linf = density_errors(result.field, case, cfg.gas)
        rows.append({"n": n, "l1": l1, "linf": linf,
                     "iterations": result.iterations, "seconds": seconds})
    for k, row in enumerate(rows):
        if k == 0:
            row["l1_order"] = row["linf_order"] = ""
        else:
            prev = rows[k - 1]
            ratio = np.log(row["n"] / prev["n"])
            row["l1_order"] = f"{np.log(prev['l1'] / row['l1']) / ratio:.2f}"
            row["linf_order"] = f"{np.log(prev['linf'] / row['linf']) / ratio:.2f}"
    stream.write("# grid\tl1_error\tl1_order\tlinf_error\tlinf_order"
                 "\titerations\tseconds\n")
    for row in rows:
        stream.write(
            f"{row['n']}x{row['n']}\t{row['l1']:.6e}\t{row['l1_order']}\t"
            f"{row['linf']:.6e}\t{row['linf_order']}\t{row['iterations']}\t"
            f"{row['seconds']:.2f}\n"
        )
    return rows


def _parse_grid(text):
    try:
        nx, ny = text.lower().split("x")
        return int(nx), int(ny)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NXxNY, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(prog="sweepflow",
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one case to steady state")
    p.add_argument("--case", required=True, choices=sorted(CASES))
    p.add_argument("--scheme", default="hybrid-us",
                   choices=[k.value for k in InterpKind])
    p.add_argument("--flux", default="llf", choices=[k.value for k in FluxKind])
    p.add_argument("--iterator", default="fs",
                   choices=[k.value for k in IteratorKind])
    p.add_argument("--cfl", type=float, default=0.8)
    p.add_argument("--grid", type=_parse_grid, default=None, metavar="NXxNY")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--dump-every", type=int, default=0)

    t = sub.add_parser("table", help="accuracy table over a grid sequence")
    t.add_argument("--case", default="smooth", choices=sorted(CASES))
    t.add_argument("--grids", default="20,30,40,50,60,70,80",
                   help="comma-separated square grid sizes")
    t.add_argument("--scheme", default="hybrid-us",
                   choices=[k.value for k in InterpKind])
    t.add_argument("--flux", default="llf", choices=[k.value for k in FluxKind])
    t.add_argument("--iterator", default="fs",
                   choices=[k.value for k in IteratorKind])
    t.add_argument("--cfl", type=float, default=1.0)
    t.add_argument("--tol", type=float, default=1e-12)
    t.add_argument("--max-iters", type=int, default=None)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "solve":
            config = RunConfig(
                case=args.case, scheme=InterpKind(args.scheme),
                flux=FluxKind(args.flux), iterator=IteratorKind(args.iterator),
                cfl=args.cfl, tol=args.tol, max_iters=args.max_iters,
                grid=args.grid, out=args.out, dump_every=args.dump_every,
            )
            result, outdir = run(config)
            print(f"{args.case}: {result.outcome.value} after "
                  f"{result.iterations} iterations "
                  f"(resA={result.final_resA:.3e}, t={result.final_time:.3f}); "
                  f"outputs in {outdir}")
            return _EXIT_CODES[result.outcome]
        else:
            grids = [int(s) for s in args.grids.split(",") if s]
            accuracy_table(
                args.case, grids, InterpKind(args.scheme), FluxKind(args.flux),
                IteratorKind(args.iterator), args.cfl, tol=args.tol,
                max_iters=args.max_iters,
            )
            return 0
    except ConfigurationError as err:
        parser.exit(2, f"error: {err}\n")


if __name__ == "__main__":
    sys.exit(main())
