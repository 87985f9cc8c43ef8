"""The ill-conditioned Vandermonde benchmark.

Each trial draws N node values, builds the exponentially ill-conditioned
Vandermonde system ``E[i, j] = sigma_j ** i`` (rows are powers), fabricates
an exact right-hand side ``y = E @ xbar`` from a synthetic solution, and for
every requested method finds the rho minimizing ``||x(rho) - xbar||_2``.
Trials are pure functions of ``(config, trial index)`` via per-trial RNG
substreams, so serial and parallel runs aggregate identically.
"""

import multiprocessing
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .io import format_float
from .linalg import as_square, condition_number, solve_gaussian
from .projection import polar_project
from .regularize import ALL_METHODS, homotopy_system, rho_search, solve_quartic
from .rng import substream

__all__ = [
    "ExperimentConfig",
    "MethodOutcome",
    "TrialRecord",
    "TradeoffPoint",
    "sample_sigmas",
    "vandermonde_basis",
    "make_ground_truth",
    "run_trial",
    "run_experiment",
    "aggregate",
    "summary_csv_lines",
    "tradeoff_curve",
    "tradeoff_csv_lines",
    "element_curves",
    "element_csv_lines",
    "parse_config",
    "read_config",
]

XBAR_KINDS = ("normal", "ones", "sparse")


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 18
    trials: int = 1
    sigma_low: float = 0.1
    sigma_high: float = 0.9
    rho_tol: float = 1e-6
    seed: int = 0
    methods: tuple = ALL_METHODS
    xbar: str = "normal"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0.0 < self.sigma_low < self.sigma_high < 1.0:
            raise ValueError("need 0 < sigma_low < sigma_high < 1")
        if self.rho_tol <= 0:
            raise ValueError("rho_tol must be positive")
        methods = tuple(self.methods)
        if not methods:
            raise ValueError("at least one method is required")
        for m in methods:
            if m not in ALL_METHODS:
                raise ValueError("unknown method %r (known: %s)" % (m, ", ".join(ALL_METHODS)))
        object.__setattr__(self, "methods", methods)
        if self.xbar not in XBAR_KINDS:
            raise ValueError("unknown xbar kind %r (known: %s)" % (self.xbar, ", ".join(XBAR_KINDS)))


@dataclass(frozen=True)
class MethodOutcome:
    rho: float
    residual: float
    condition: float
    status: str  # "ok" or an error description


@dataclass(frozen=True)
class TrialRecord:
    index: int
    sigmas: tuple
    outcomes: dict


@dataclass(frozen=True)
class TradeoffPoint:
    rho: float
    residual: float
    condition: float
    ok: bool = True


def sample_sigmas(n, low, high, rng):
    """n i.i.d. uniforms on [low, high], sorted; redrawn if any gap < 1e-12."""
    if n < 1:
        raise ValueError("n must be at least 1")
    while True:
        draws = np.sort(np.array([rng.uniform(low, high) for _ in range(n)]))
        if n == 1 or np.min(np.diff(draws)) >= 1e-12:
            return draws


def vandermonde_basis(sigmas):
    """The system with ``E[i, j] = sigmas[j] ** i`` (strictly increasing nodes)."""
    s = np.asarray(sigmas, dtype=np.float64)
    if s.ndim != 1 or s.shape[0] < 1:
        raise ValueError("sigmas must be a nonempty vector")
    if np.any(s <= 0.0) or np.any(s >= 1.0):
        raise ValueError("node values must lie strictly inside (0, 1)")
    if s.shape[0] > 1 and np.any(np.diff(s) <= 0.0):
        raise ValueError("node values must be strictly increasing")
    n = s.shape[0]
    return np.ascontiguousarray(s[None, :] ** np.arange(n)[:, None], dtype=np.float64)


def make_ground_truth(kind, n, rng):
    """Synthetic solution of unit Euclidean norm.

    ``normal``: i.i.d. standard normals, normalized.  ``ones``: the constant
    vector, normalized.  ``sparse``: three random positions with normal
    values, normalized.
    """
    if kind == "ones":
        return np.full(n, 1.0 / np.sqrt(n))
    if kind == "normal":
        x = np.array([rng.normal() for _ in range(n)])
    elif kind == "sparse":
        x = np.zeros(n)
        support = min(3, n)
        while np.count_nonzero(x) < support:
            x[rng.integers(n)] = rng.normal()
    else:
        raise ValueError("unknown xbar kind %r" % kind)
    nrm = np.linalg.norm(x)
    if nrm == 0.0:  # probability-zero draw; keep the contract anyway
        x[0] = 1.0
        nrm = 1.0
    return x / nrm


def _condition_of(method, e, rho):
    if method == "direct":
        return condition_number(e)
    if method == "homotopy":
        return condition_number(homotopy_system(e, rho))
    if method == "quartic":
        return condition_number(solve_quartic(e, rho)[0])
    if method == "tikhonov":
        normal = e.T @ e + (rho * rho) * np.eye(e.shape[0])
        return condition_number(normal)
    return float("nan")  # bpdn/dantzig regularize the solution, not a system


def run_trial(cfg, index, system_override=None):
    """One benchmark trial; pure function of ``(cfg, index)``.

    ``system_override`` replaces the Vandermonde draw (test hook for
    well-conditioned controls); the sigma draw still advances the stream so
    records stay comparable.
    """
    rng = substream(cfg.seed, index)
    sigmas = sample_sigmas(cfg.n, cfg.sigma_low, cfg.sigma_high, rng)
    e = as_square(system_override) if system_override is not None else vandermonde_basis(sigmas)
    xbar = make_ground_truth(cfg.xbar, cfg.n, rng)
    y = e @ xbar

    outcomes = {}
    for method in cfg.methods:
        try:
            if method == "direct":
                x = solve_gaussian(e, y)
                rho = 0.0
                residual = float(np.linalg.norm(x - xbar))
            else:
                found = rho_search(method, e, y, xbar, tol=cfg.rho_tol)
                rho = found.rho
                residual = found.residual
            condition = _condition_of(method, e, rho)
            outcomes[method] = MethodOutcome(
                rho=rho, residual=residual, condition=condition, status="ok"
            )
        except NumericalError as exc:
            outcomes[method] = MethodOutcome(
                rho=float("nan"),
                residual=float("nan"),
                condition=float("nan"),
                status="error: %s" % exc,
            )
    return TrialRecord(index=index, sigmas=tuple(sigmas), outcomes=outcomes)


def _trial_worker(args):
    cfg, index = args
    return run_trial(cfg, index)


def run_experiment(cfg, threads=1, progress=None):
    """All trials, in index order.  ``threads > 1`` forks workers; results
    are identical to the serial run because every trial owns its substream.
    """
    indices = list(range(cfg.trials))
    if threads <= 1:
        records = []
        for i in indices:
            records.append(run_trial(cfg, i))
            if progress is not None:
                progress(records[-1])
        return records
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=threads) as pool:
        chunk = max(1, cfg.trials // (4 * threads))
        records = pool.map(_trial_worker, [(cfg, i) for i in indices], chunksize=chunk)
    if progress is not None:
        for rec in records:
            progress(rec)
    return records


def aggregate(records):
    """Per-method summary rows: mean/median residual, mean rho, failures.

    Failed trials are excluded from the means and counted in ``failures``.
    The median column is an extension beyond the usual mean-only table and
    is labeled as such in the CSV header.
    """
    if not records:
        raise ValueError("no records to aggregate")
    methods = []
    for rec in records:
        for name in rec.outcomes:
            if name not in methods:
                methods.append(name)
    rows = []
    for name in methods:
        residuals = []
        rhos = []
        failures = 0
        for rec in records:
            out = rec.outcomes.get(name)
            if out is None:
                continue
            if out.status == "ok" and np.isfinite(out.residual):
                residuals.append(out.residual)
                rhos.append(out.rho)
            else:
                failures += 1
        if residuals:
            rows.append(
                {
                    "method": name,
                    "mean_residual": float(np.mean(residuals)),
                    "mean_rho": float(np.mean(rhos)),
                    "median_residual": float(np.median(residuals)),
                    "failures": failures,
                }
            )
        else:
            rows.append(
                {
                    "method": name,
                    "mean_residual": float("nan"),
                    "mean_rho": float("nan"),
                    "median_residual": float("nan"),
                    "failures": failures,
                }
            )
    return rows


def summary_csv_lines(rows):
    lines = ["method,mean_residual,mean_rho,median_residual_ext,failures"]
    for row in rows:
        lines.append(
            "%s,%s,%s,%s,%d"
            % (
                row["method"],
                format_float(row["mean_residual"]),
                format_float(row["mean_rho"]),
                format_float(row["median_residual"]),
                row["failures"],
            )
        )
    return lines


def tradeoff_curve(method, e, y, xbar, rho_grid):
    """Residual and condition number along a rho grid for one method."""
    if method not in ("homotopy", "quartic"):
        raise ValueError("tradeoff curves exist for 'homotopy' and 'quartic', not %r" % method)
    m = as_square(e)
    points = []
    polar = polar_project(m).matrix if method == "homotopy" else None
    for rho in rho_grid:
        try:
            if method == "homotopy":
                h = homotopy_system(m, float(rho), _polar=polar)
            else:
                h = solve_quartic(m, float(rho))[0]
            x = solve_gaussian(h, y)
            residual = float(np.linalg.norm(x - xbar))
            condition = condition_number(h)
            points.append(
                TradeoffPoint(rho=float(rho), residual=residual, condition=condition, ok=True)
            )
        except NumericalError:
            points.append(
                TradeoffPoint(rho=float(rho), residual=float("nan"), condition=float("nan"), ok=False)
            )
    return points


def tradeoff_csv_lines(points):
    lines = ["rho,residual,condition"]
    for p in points:
        lines.append(
            "%s,%s,%s" % (format_float(p.rho), format_float(p.residual), format_float(p.condition))
        )
    return lines


def element_curves(method, e, rho, indices):
    """Original vs regularized basis vectors, as plottable sample series.

    Returns ``(originals, regularized)``: two (N, len(indices)) arrays whose
    columns are the requested vectors.
    """
    m = as_square(e)
    n = m.shape[0]
    idx = list(indices)
    for k in idx:
        if not 0 <= k < n:
            raise IndexError("element index %d out of range for dimension %d" % (k, n))
    if method == "homotopy":
        h = homotopy_system(m, rho)
    elif method == "quartic":
        h = solve_quartic(m, rho)[0]
    else:
        raise ValueError("element curves exist for 'homotopy' and 'quartic', not %r" % method)
    originals = m[:, idx].copy()
    regularized = h[:, idx].copy()
    return originals, regularized


def element_csv_lines(indices, originals, regularized):
    lines = ["index,sample,original,regularized"]
    for col, k in enumerate(indices):
        for i in range(originals.shape[0]):
            lines.append(
                "%d,%d,%s,%s"
                % (k, i, format_float(originals[i, col]), format_float(regularized[i, col]))
            )
    return lines


_CONFIG_KEYS = {
    "n": int,
    "trials": int,
    "sigma_low": float,
    "sigma_high": float,
    "rho_tol": float,
    "seed": int,
    "methods": str,
    "xbar": str,
}


def parse_config(text):
    """Flat ``key = value`` config; '#' starts a comment; unknown keys fail.

    Keys: n, trials, sigma_low, sigma_high, rho_tol, seed,
    methods (comma-separated subset of direct/homotopy/quartic/tikhonov/
    bpdn/dantzig), xbar (normal/ones/sparse).
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError("config line %d: expected 'key = value', got %r" % (lineno, raw))
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError("config line %d: unknown key %r" % (lineno, key))
        if key in values:
            raise ValueError("config line %d: duplicate key %r" % (lineno, key))
        caster = _CONFIG_KEYS[key]
        try:
            values[key] = caster(val)
        except ValueError:
            raise ValueError("config line %d: cannot parse %r as %s" % (lineno, val, caster.__name__))
    if "methods" in values:
        values["methods"] = tuple(tok.strip() for tok in values["methods"].split(",") if tok.strip())
    return ExperimentConfig(**values)


def read_config(path):
    with open(path) as fh:
        return parse_config(fh.read())
