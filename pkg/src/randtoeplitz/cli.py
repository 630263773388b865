"""Command-line experiment harness.

Examples::

    randtoeplitz fig1 --n 65 --trials 100 --out fig1.csv --svg fig1.svg
    randtoeplitz fig2 --m-min 10 --m-max 120 --trials 50 --out fig2.csv
    randtoeplitz spectrum --n 65 --trials 6 --out eigs.csv --svg eigs.svg
    randtoeplitz equidist --n-values 33,65,129,257 --symbol zero-phase
    randtoeplitz solve --n 65 --trial 3 --precond none
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import experiments as ex
from .errors import InvalidInputError, RandToeplitzError
from .plotting import emit_svg


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=ex.DEFAULT_SEED, help="master 64-bit seed")
    common.add_argument("--tol", type=float, default=1e-10, help="residual ratio stopping threshold")
    common.add_argument("--even-rule", choices=["average", "zero"], default="average")
    common.add_argument("--rhs", choices=["ones", "seeded-random"], default="ones")
    common.add_argument("--symbol", choices=ex.SYMBOLS, default="random-phase")
    common.add_argument("--out", help="CSV output path (default: stdout)")
    common.add_argument("--svg", help="optional SVG plot path")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for trial sweeps")
    common.add_argument("-q", "--quiet", action="store_true", help="suppress per-trial warnings")

    p = argparse.ArgumentParser(prog="randtoeplitz", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    f1 = sub.add_parser("fig1", parents=[common], help="CG vs PCG iterations per trial")
    f1.add_argument("--n", type=int, default=65)
    f1.add_argument("--trials", type=int, default=100)
    f1.add_argument("--pd-check", choices=["auto", "eig", "guard"], default="auto")

    f2 = sub.add_parser("fig2", parents=[common], help="average iterations against n = 2m+1")
    f2.add_argument("--m-min", type=int, default=10)
    f2.add_argument("--m-max", type=int, default=120)
    f2.add_argument("--m-step", type=int, default=1)
    f2.add_argument("--m-values", type=_int_list, help="explicit m list, overrides the range")
    f2.add_argument("--trials", type=int, default=50)
    f2.add_argument("--pd-check", choices=["auto", "eig", "guard"], default="auto")

    sp = sub.add_parser("spectrum", parents=[common], help="eigenvalues of S^-1 T per trial")
    sp.add_argument("--n", type=int, default=65)
    sp.add_argument("--trials", type=int, default=6)
    sp.add_argument("--epsilon", type=float, default=0.05)

    eq = sub.add_parser("equidist", parents=[common], help="equidistribution discrepancies over an n ladder")
    eq.add_argument("--n-values", type=_int_list, default=[33, 65, 129, 257])
    eq.add_argument("--trial", type=int, default=1)

    so = sub.add_parser("solve", parents=[common], help="one solve with its residual history")
    so.add_argument("--n", type=int, default=65)
    so.add_argument("--trial", type=int, default=1)
    so.add_argument("--precond", choices=["strang", "none"], default="strang")
    return p


def config_from_args(args) -> ex.ExperimentConfig:
    cfg = ex.ExperimentConfig(args.command, seed=args.seed, tol=args.tol, even_rule=args.even_rule,
                              rhs=args.rhs, symbol=args.symbol, jobs=args.jobs)
    for name in ("n", "trials", "trial", "epsilon", "precond", "n_values"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "pd_check"):
        cfg.pd_check = args.pd_check
    if args.command == "fig2":
        if args.m_values:
            cfg.m_values = args.m_values
        else:
            if args.m_step < 1 or args.m_max < args.m_min:
                raise InvalidInputError("need m-min <= m-max and m-step >= 1")
            cfg.m_values = list(range(args.m_min, args.m_max + 1, args.m_step))
    return cfg.validate()


RUNNERS = {
    "fig1": ex.run_fig1,
    "fig2": ex.run_fig2,
    "spectrum": ex.run_spectrum,
    "equidist": ex.run_equidist,
    "solve": ex.run_solve,
}


def render_svg(command: str, result: ex.SweepResult) -> str:
    rows = result.rows
    if command == "fig1":
        return emit_svg([r[0] for r in rows], {"T_n (CG)": [r[1] if r[1] >= 0 else float("nan") for r in rows],
                                               "S_n^-1 T_n (PCG)": [r[2] if r[2] >= 0 else float("nan") for r in rows]},
                        "line", "Iterations per trial", "t", "iterations")
    if command == "fig2":
        return emit_svg([r[0] for r in rows], {"T_n (CG)": [r[1] for r in rows],
                                               "S_n^-1 T_n (PCG)": [r[2] for r in rows]},
                        "line", "Average iterations", "n", "iterations")
    if command == "spectrum":
        ok = [r for r in rows if r[1] >= 0]
        return emit_svg([r[2] for r in ok], {"eigenvalues": [r[0] for r in ok]},
                        "scatter", "Eigenvalues of S^-1 T", "eigenvalue", "t")
    if command == "equidist":
        names = sorted({r[1] for r in rows})
        ns = sorted({r[0] for r in rows})
        table = {(n, name): d for n, name, d in rows}
        return emit_svg(ns, {name: [table[(n, name)] for n in ns] for name in names},
                        "line", "Equidistribution discrepancy", "n", "discrepancy")
    return emit_svg([r[0] for r in rows], {"residual ratio": [r[1] for r in rows]},
                    "line", "Residual history", "iteration", "||r_j|| / ||r_0||")


def _print_summary(command, result, stream):
    s = result.summary
    if command == "fig1":
        print(f"mean iter_cg = {s['mean_iter_cg']:.4f}  mean iter_pcg = {s['mean_iter_pcg']:.4f}  "
              f"failed = {s['failed']} ({100 * s['failure_rate']:.1f}%)", file=stream)
    elif command == "fig2":
        print(f"failure rate = {100 * s['failure_rate']:.1f}%  per n: {s['failed_per_n']}", file=stream)
    elif command == "spectrum":
        print(f"outliers at epsilon={s['epsilon']}: {s['outliers']}", file=stream)
    elif command == "solve":
        print(f"iterations = {s['iterations']}  converged = {s['converged']}", file=stream)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        cfg = config_from_args(args)
    except InvalidInputError as exc:
        parser.error(str(exc))
    try:
        result = RUNNERS[args.command](cfg)
    except RandToeplitzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(result.csv)
    else:
        sys.stdout.write(result.csv)
    _print_summary(args.command, result, sys.stderr)
    if args.svg:
        try:
            svg = render_svg(args.command, result)
        except RandToeplitzError as exc:
            print(f"error: cannot plot: {exc}", file=sys.stderr)
            return 1
        with open(args.svg, "w", encoding="utf-8", newline="") as fh:
            fh.write(svg)
    return 0


if __name__ == "__main__":
    sys.exit(main())
