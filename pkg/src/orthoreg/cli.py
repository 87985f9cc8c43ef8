"""Command-line front end.

Subcommands: project, regularize, solve, bench, tradeoff, elements, basis.
Exit codes: 0 success, 2 usage error, 3 numerical failure.  All randomness
flows from explicit seeds, so every command is deterministic given its
flags.
"""

import argparse
import os
import sys

import numpy as np

from . import experiment, io, svg
from .baselines import SolverOptions
from .errors import NumericalError
from .linalg import condition_number
from .measures import squared_distance
from .projection import polar_project, series_project
from .regularize import ALL_METHODS, regularized_system, solve_with_method
from .rng import substream

USAGE_EXIT = 2
NUMERICAL_EXIT = 3


def _parse_indices(text):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError("indices must be a comma-separated list of integers, got %r" % text)


def _parse_sigmas(text):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError("sigmas must be a comma-separated list of reals, got %r" % text)


def _instance_from_args(args, need_rhs):
    """Build (e, y, xbar) from either files or a seeded draw."""
    if args.matrix:
        e = io.read_matrix(args.matrix)
        if not need_rhs:
            return e, None, None
        if not (args.rhs and args.truth):
            raise ValueError("--matrix needs --rhs and --truth for this command")
        y = io.read_vector(args.rhs)
        xbar = io.read_vector(args.truth)
        return e, y, xbar
    rng = substream(args.seed, 0)
    sigmas = experiment.sample_sigmas(args.n, 0.1, 0.9, rng)
    e = experiment.vandermonde_basis(sigmas)
    if not need_rhs:
        return e, None, None
    xbar = experiment.make_ground_truth("normal", args.n, rng)
    return e, e @ xbar, xbar


def cmd_project(args):
    g = io.read_matrix(args.input)
    if args.series:
        ortho, cert = series_project(g, tol=args.tol)
    else:
        ortho, cert = polar_project(g), None
    io.write_matrix(args.output, ortho.matrix)
    print("manifold: %+d" % ortho.manifold)
    print("distance: %s" % io.format_float(squared_distance(g, ortho.matrix)))
    if cert is not None:
        print("gershgorin_bound: %s" % io.format_float(cert.gershgorin_bound))
        print("certified: %s" % cert.certified)
        print("terms_used: %d" % cert.terms_used)
        print("truncation_bound: %s" % io.format_float(cert.truncation_bound))
        print("used_svd_fallback: %s" % cert.used_svd_fallback)
    return 0


def cmd_regularize(args):
    g = io.read_matrix(args.input)
    h = regularized_system(args.method, g, args.rho)
    io.write_matrix(args.output, h)
    print("condition: %s" % io.format_float(condition_number(h)))
    return 0


def cmd_solve(args):
    e = io.read_matrix(args.matrix)
    y = io.read_vector(args.rhs)
    if y.shape[0] != e.shape[0]:
        raise ValueError(
            "dimension mismatch: matrix is %dx%d but rhs has length %d"
            % (e.shape[0], e.shape[1], y.shape[0])
        )
    x = solve_with_method(args.method, e, y, rho=args.rho, opts=SolverOptions())
    io.write_vector(args.output, x)
    return 0


def cmd_bench(args):
    cfg = experiment.read_config(args.config)
    log_lines = [
        "config: n=%d trials=%d sigma=[%s,%s] rho_tol=%s seed=%d methods=%s xbar=%s"
        % (
            cfg.n,
            cfg.trials,
            io.format_float(cfg.sigma_low),
            io.format_float(cfg.sigma_high),
            io.format_float(cfg.rho_tol),
            cfg.seed,
            ",".join(cfg.methods),
            cfg.xbar,
        )
    ]

    def progress(rec):
        for name in cfg.methods:
            out = rec.outcomes[name]
            log_lines.append(
                "trial %d %s: rho=%s residual=%s status=%s"
                % (rec.index, name, io.format_float(out.rho), io.format_float(out.residual), out.status)
            )

    records = experiment.run_experiment(cfg, threads=args.threads, progress=progress)
    rows = experiment.aggregate(records)
    os.makedirs(args.outdir, exist_ok=True)
    table_path = os.path.join(args.outdir, "table1.csv")
    with open(table_path, "w") as fh:
        fh.write("\n".join(experiment.summary_csv_lines(rows)) + "\n")
    with open(os.path.join(args.outdir, "bench.log"), "w") as fh:
        fh.write("\n".join(log_lines) + "\n")
    for row in rows:
        print(
            "%-10s mean_residual=%-12.4g mean_rho=%-10.4g failures=%d"
            % (row["method"], row["mean_residual"], row["mean_rho"], row["failures"])
        )
    print("wrote %s" % table_path)
    return 0


def cmd_tradeoff(args):
    e, y, xbar = _instance_from_args(args, need_rhs=True)
    grid = np.linspace(0.0, 1.0, args.points)
    points = experiment.tradeoff_curve(args.method, e, y, xbar, grid)
    output = args.output or ("tradeoff_%s.csv" % args.method)
    with open(output, "w") as fh:
        fh.write("\n".join(experiment.tradeoff_csv_lines(points)) + "\n")
    print("wrote %s" % output)
    if args.svg:
        ok = [p for p in points if p.ok]
        doc = svg.line_plot(
            [(args.method, [p.condition for p in ok], [p.residual for p in ok])],
            xlabel="condition number",
            ylabel="residual",
            log_x=True,
            log_y=True,
            title="accuracy vs stability",
        )
        with open(args.svg, "w") as fh:
            fh.write(doc)
        print("wrote %s" % args.svg)
    return 0


def cmd_elements(args):
    e, _, _ = _instance_from_args(args, need_rhs=False)
    indices = _parse_indices(args.indices)
    originals, regularized = experiment.element_curves(args.method, e, args.rho, indices)
    output = args.output or ("elements_%s.csv" % args.method)
    with open(output, "w") as fh:
        fh.write("\n".join(experiment.element_csv_lines(indices, originals, regularized)) + "\n")
    print("wrote %s" % output)
    if args.svg:
        samples = list(range(originals.shape[0]))
        series = []
        for col, k in enumerate(indices):
            series.append(("orig_%d" % k, samples, list(originals[:, col])))
            series.append(("reg_%d" % k, samples, list(regularized[:, col])))
        doc = svg.line_plot(series, xlabel="sample", ylabel="value", title="basis elements")
        with open(args.svg, "w") as fh:
            fh.write(doc)
        print("wrote %s" % args.svg)
    return 0


def cmd_basis(args):
    if args.sigmas:
        sigmas = np.array(_parse_sigmas(args.sigmas))
    else:
        rng = substream(args.seed, 0)
        sigmas = experiment.sample_sigmas(args.n, 0.1, 0.9, rng)
    e = experiment.vandermonde_basis(sigmas)
    io.write_matrix(args.output, e)
    print("condition: %s" % io.format_float(condition_number(e)))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="orthoreg",
        description="Structure-preserving regularization of ill-conditioned linear systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="project a system onto the orthogonal group")
    p.add_argument("input", help="matrix file (.csv or plain)")
    p.add_argument("--output", "-o", required=True, help="output matrix file")
    p.add_argument("--series", action="store_true", help="use the certified power-series route")
    p.add_argument("--tol", type=float, default=1e-10, help="series truncation tolerance")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("regularize", help="emit the regularized system at a fixed rho")
    p.add_argument("input", help="matrix file")
    p.add_argument("--method", required=True, choices=("homotopy", "quartic"))
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_regularize)

    p = sub.add_parser("solve", help="solve e x = y with a chosen method at fixed rho")
    p.add_argument("matrix", help="matrix file")
    p.add_argument("rhs", help="right-hand-side vector file")
    p.add_argument("--method", required=True, choices=ALL_METHODS)
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="run the benchmark described by a config file")
    p.add_argument("config", help="flat key=value config file")
    p.add_argument("--outdir", default=".", help="directory for table1.csv and bench.log")
    p.add_argument("--threads", type=int, default=1, help="worker processes for trials")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("tradeoff", help="accuracy vs stability curve along rho")
    p.add_argument("--method", required=True, choices=("homotopy", "quartic"))
    p.add_argument("--matrix", help="matrix file (with --rhs and --truth)")
    p.add_argument("--rhs", help="right-hand-side vector file")
    p.add_argument("--truth", help="synthetic solution vector file")
    p.add_argument("--seed", type=int, default=0, help="seeded instance when no files given")
    p.add_argument("--n", type=int, default=18, help="dimension for the seeded instance")
    p.add_argument("--points", type=int, default=33, help="rho grid size")
    p.add_argument("--output", "-o", default=None, help="CSV path (default tradeoff_<method>.csv)")
    p.add_argument("--svg", default=None, help="also render an SVG to this path")
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("elements", help="original vs regularized basis elements")
    p.add_argument("--method", required=True, choices=("homotopy", "quartic"))
    p.add_argument("--matrix", help="matrix file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=18)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--indices", required=True, help="comma-separated 0-based column indices")
    p.add_argument("--output", "-o", default=None, help="CSV path (default elements_<method>.csv)")
    p.add_argument("--svg", default=None)
    p.set_defaults(func=cmd_elements)

    p = sub.add_parser("basis", help="generate an exponentially ill-conditioned Vandermonde basis")
    p.add_argument("--sigmas", default=None, help="comma-separated nodes in (0,1), increasing")
    p.add_argument("--n", type=int, default=18)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_basis)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalError as exc:
        print("numerical failure: %s" % exc, file=sys.stderr)
        return NUMERICAL_EXIT
    except (ValueError, IndexError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
