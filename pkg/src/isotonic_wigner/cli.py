"""Command-line front end: every computation as a reproducible data file.

Subcommands: ``grid``, ``flow``, ``orbit``, ``flux``, ``purity-sweep``,
``partition`` and ``validate``.

Output is CSV (``# key=value`` metadata lines, one header row, data rows) or
JSON (``{"meta": ..., "data": [...]}``). Floats are written as the shortest
string that round-trips (at most 17 significant digits), so the same command
always produces the same bytes. Files are written to a temporary sibling and
renamed into place, so a failed run never leaves a partial file.

Exit codes: 0 success, 1 validation failure, 2 bad arguments or unusable
output path, 3 numerical failure.
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .eigensystem import OscillatorParams
from .errors import DomainError, IntegrationError, OrbitError, SeriesTruncationError
from .flow import (DEFAULT_ETA_MAX, classical_orbit, contour_probability, current_k,
                   divergence, purity_flux)
from .thermal_ensemble import (ThermalParams, ThermalState,
                               partition_function, partition_function_spectral,
                               phase_space_normalization, thermal_purity)
from .wigner_states import EigenState, QuasiGaussianParams, QuasiGaussianState, wigner_value

EXIT_OK, EXIT_VALIDATION, EXIT_ARGS, EXIT_NUMERIC = 0, 1, 2, 3
RESUMMED = "resummed"  # --eta-max value selecting the closed-form (all-order) current
FORMAT_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one command run."""

    subcommand: str
    alpha: float = 1.5
    state: str = "eigen"
    n: int = 0
    gamma: float = 1.0
    tau: float = 0.0
    beta: float = 1.0
    betas: tuple = (0.25, 0.5, 1.0, 2.0, 4.0)
    energy: float = 2.0
    x_min: float = 0.0
    x_max: float = 6.0
    nx: int = 128
    k_min: float = -6.0
    k_max: float = 6.0
    nk: int = 128
    n_tau: int = 128
    eta_max: int = DEFAULT_ETA_MAX
    method: str = "reduced"
    tol: float = 1e-8
    format: str = "csv"
    out: str = ""

    def validate(self):
        """Check every field against the preconditions of the operation it feeds."""
        OscillatorParams(self.alpha)
        if not (math.isfinite(self.tol) and self.tol > 0):
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.format not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.format}")
        if self.state not in ("eigen", "quasi-gaussian", "thermal"):
            raise DomainError(f"unknown state {self.state!r}")
        if self.eta_max != RESUMMED and not (isinstance(self.eta_max, int) and self.eta_max >= 0):
            raise DomainError(f"eta-max must be a non-negative integer or {RESUMMED!r}")
        if self.subcommand in ("grid", "flow"):
            if not (self.x_max > self.x_min and self.k_max > self.k_min):
                raise DomainError("grid bounds must be increasing")
            if self.nx < 1 or self.nk < 1:
                raise DomainError("nx and nk must be positive")
        if self.subcommand in ("grid", "flow", "flux"):
            self.make_state()
        if self.subcommand in ("orbit", "flux"):
            classical_orbit(OscillatorParams(self.alpha), self.energy)
            if self.n_tau < 2:
                raise DomainError("n-tau must be >= 2")
        if self.subcommand in ("purity-sweep", "partition"):
            if not self.betas:
                raise DomainError("betas must not be empty")
            for b in self.betas:
                ThermalParams(b).check_supported()
        if self.subcommand == "purity-sweep" and self.method not in ("reduced", "grid",
                                                                      "hypergeometric"):
            raise DomainError(f"unknown purity method {self.method!r}")
        return self

    def make_state(self):
        p = OscillatorParams(self.alpha)
        if self.state == "eigen":
            return EigenState(p, self.n)
        if self.state == "quasi-gaussian":
            return QuasiGaussianState(p, QuasiGaussianParams(self.gamma, self.tau))
        return ThermalState(p, ThermalParams(self.beta).check_supported())

    @property
    def eta(self):
        """Moyal order in the form the flow functions take (None = resummed)."""
        return None if self.eta_max == RESUMMED else self.eta_max

    def meta(self):
        out = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "out"}
        out["betas"] = list(self.betas)
        out["build"] = f"isotonic_wigner {__version__}"
        out["format_version"] = FORMAT_VERSION
        return out


def _num(v):
    """Shortest round-trip text for a float (deterministic, <= 17 significant digits)."""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v) + 0.0)  # + 0.0 folds -0.0 into 0.0
    return str(v)


def _json_value(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (list, tuple)):
        return [_json_value(u) for u in v]
    return v


def render(meta, columns, rows, fmt):
    """Serialise a table to CSV or JSON text."""
    if fmt == "json":
        doc = {"meta": {k: _json_value(v) for k, v in meta.items()},
               "data": [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows]}
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"
    lines = []
    for key, val in meta.items():
        if isinstance(val, (list, tuple)):
            val = ";".join(_num(v) for v in val)
        lines.append(f"# {key}={_num(val)}")
    lines.append(",".join(columns))
    lines.extend(",".join(_num(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_atomic(path, text):
    """Write ``text`` to ``path`` via a temporary file and a rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(cfg, columns, rows, extra_meta=None):
    meta = cfg.meta()
    meta.update(extra_meta or {})
    text = render(meta, columns, rows, cfg.format)
    if cfg.out:
        write_atomic(cfg.out, text)
    else:
        sys.stdout.write(text)


def grid_axes(cfg):
    """x nodes fill (x_min, x_max] (left-open), k nodes fill [k_min, k_max]."""
    xs = cfg.x_min + (cfg.x_max - cfg.x_min) * np.arange(1, cfg.nx + 1) / cfg.nx
    ks = np.linspace(cfg.k_min, cfg.k_max, cfg.nk) if cfg.nk > 1 else np.array([cfg.k_min])
    return xs, ks


def _grid_row(args):
    cfg, x, ks = args
    state = cfg.make_state()
    return [(x, k, wigner_value(state, x, k, cfg.tol) if x > 0 else 0.0) for k in ks]


def _flow_row(args):
    cfg, x, ks = args
    state = cfg.make_state()
    p = state.params
    rows = []
    for k in ks:
        if x <= 0:
            rows.append((x, k, 0.0, 0.0, 0.0, 0.0))
            continue
        w = wigner_value(state, x, k, cfg.tol)
        jk = current_k(state, p, x, k, cfg.eta, cfg.tol)
        try:
            res = divergence(state, p, x, k, cfg.eta, cfg.tol)
        except DomainError:
            res = math.nan  # no analytic x-derivative for this state
        rows.append((x, k, w, k * w, jk, res))
    return rows


def _map_rows(fn, cfg, workers):
    xs, ks = grid_axes(cfg)
    jobs = [(cfg, float(x), [float(k) for k in ks]) for x in xs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(fn, jobs))
    else:
        chunks = [fn(job) for job in jobs]
    return [row for chunk in chunks for row in chunk]


def cmd_grid(cfg, workers=1):
    rows = _map_rows(_grid_row, cfg, workers)
    xs, ks = grid_axes(cfg)
    cell = (xs[1] - xs[0] if len(xs) > 1 else 1.0) * (ks[1] - ks[0] if len(ks) > 1 else 1.0)
    _emit(cfg, ["x", "k", "W"], rows, {"cell_area": float(cell)})


def cmd_flow(cfg, workers=1):
    rows = _map_rows(_flow_row, cfg, workers)
    _emit(cfg, ["x", "k", "W", "Jx", "Jk", "residual"], rows)


def cmd_orbit(cfg, workers=1):
    orbit = classical_orbit(OscillatorParams(cfg.alpha), cfg.energy)
    taus = orbit.period * np.arange(cfg.n_tau + 1) / cfg.n_tau
    rows = [(float(t), orbit.x(float(t)), orbit.k(float(t)), float(orbit.energy(float(t))))
            for t in taus]
    lo, hi = orbit.turning_points
    _emit(cfg, ["tau", "x", "k", "energy"], rows,
          {"period": orbit.period, "x_inner": lo, "x_outer": hi})


def cmd_flux(cfg, workers=1):
    state = cfg.make_state()
    orbit = classical_orbit(state.params, cfg.energy)
    one = purity_flux(state, orbit, cfg.eta, cfg.tol, n_tau=cfg.n_tau)
    prob = contour_probability(state, orbit, cfg.tol)
    _emit(cfg, ["energy", "eta_max", "n_tau", "flux_T_pi", "flux_T_2pi", "contour_probability"],
          [(cfg.energy, cfg.eta_max, cfg.n_tau, one, 2.0 * one, prob)])


def cmd_purity_sweep(cfg, workers=1):
    p = OscillatorParams(cfg.alpha)
    rows = []
    for b in cfg.betas:
        val = thermal_purity(p, ThermalParams(b), cfg.method, cfg.tol)
        rows.append((b, val, math.tanh(b), abs(val - math.tanh(b))))
    _emit(cfg, ["beta", "purity", "tanh_beta", "abs_difference"], rows)


def cmd_partition(cfg, workers=1):
    p = OscillatorParams(cfg.alpha)
    rows = []
    for b in cfg.betas:
        t = ThermalParams(b)
        z = partition_function(t)
        z_sum = partition_function_spectral(t, min(cfg.tol, 1e-14))
        z_ps = phase_space_normalization(p, t, cfg.tol)
        rows.append((b, z, z_sum, z_ps, abs(z_ps - z) / z))
    _emit(cfg, ["beta", "Z_closed", "Z_spectral", "Z_phase_space", "rel_difference"], rows)


def cmd_validate(tol=None, only=None, out="", fmt="csv"):
    from .validation import run_all

    def echo(line):
        print(line, flush=True)

    results = run_all(tol=tol, only=only, echo=echo)
    failed = [r for r in results if not r.passed]
    total = sum(r.seconds for r in results)
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed in {total:.1f}s")
    if failed:
        print("failing: " + ", ".join(f"{r.number} ({r.name})" for r in failed))
    if out:
        meta = {"subcommand": "validate", "tol": "default" if tol is None else tol,
                "build": f"isotonic_wigner {__version__}", "format_version": FORMAT_VERSION}
        rows = [(r.number, r.name, r.measured, r.target, r.passed, r.seconds, r.detail)
                for r in results]
        write_atomic(out, render(meta, ["number", "name", "measured", "target", "passed",
                                        "seconds", "detail"], rows, fmt))
    return EXIT_OK if not failed else EXIT_VALIDATION


def _betas(text):
    try:
        vals = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad beta list {text!r}") from exc
    return vals


def _eta_max(text):
    if text == RESUMMED:
        return RESUMMED
    try:
        return int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"eta-max must be an integer or {RESUMMED!r}, got {text!r}") from exc


def _ints(text):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def build_parser():
    parser = argparse.ArgumentParser(
        prog="isotonic-wigner",
        description="Wigner functions, currents and thermal purity of the singular oscillator.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(sp, state=True):
        sp.add_argument("--alpha", type=float, default=1.5)
        sp.add_argument("--tol", type=float, default=1e-8)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", default="", help="output file (default: standard output)")
        if state:
            sp.add_argument("--state", choices=("eigen", "quasi-gaussian", "thermal"),
                            default="eigen")
            sp.add_argument("--n", type=int, default=0)
            sp.add_argument("--gamma", type=float, default=1.0)
            sp.add_argument("--tau", type=float, default=0.0)
            sp.add_argument("--beta", type=float, default=1.0)

    def bounds(sp):
        sp.add_argument("--x-min", type=float, default=0.0)
        sp.add_argument("--x-max", type=float, default=6.0)
        sp.add_argument("--nx", type=int, default=128)
        sp.add_argument("--k-min", type=float, default=-6.0)
        sp.add_argument("--k-max", type=float, default=6.0)
        sp.add_argument("--nk", type=int, default=128)
        sp.add_argument("--workers", type=int, default=1, help="processes for the grid fill")

    sp = sub.add_parser("grid", help="tabulate W(x, k)")
    common(sp)
    bounds(sp)

    sp = sub.add_parser("flow", help="tabulate W, J_x, J_k and the continuity residual")
    common(sp)
    bounds(sp)
    sp.add_argument("--eta-max", type=_eta_max, default=DEFAULT_ETA_MAX,
                    help=f"highest Moyal order, or {RESUMMED!r} for the closed-form current")

    sp = sub.add_parser("orbit", help="sample the closed classical orbit")
    common(sp, state=False)
    sp.add_argument("--energy", type=float, default=2.0)
    sp.add_argument("--n-tau", type=int, default=128)

    sp = sub.add_parser("flux", help="purity flux and enclosed probability for a classical contour")
    common(sp)
    sp.add_argument("--energy", type=float, default=2.0)
    sp.add_argument("--eta-max", type=_eta_max, default=DEFAULT_ETA_MAX,
                    help=f"highest Moyal order, or {RESUMMED!r} for the closed-form current")
    sp.add_argument("--n-tau", type=int, default=128)

    sp = sub.add_parser("purity-sweep", help="thermal purity over a list of beta")
    common(sp, state=False)
    sp.add_argument("--betas", type=_betas, default=(0.25, 0.5, 1.0, 2.0, 4.0))
    sp.add_argument("--method", choices=("reduced", "grid", "hypergeometric"), default="reduced")

    sp = sub.add_parser("partition", help="partition function three ways over a list of beta")
    common(sp, state=False)
    sp.add_argument("--betas", type=_betas, default=(0.25, 0.5, 1.0, 2.0, 4.0))

    sp = sub.add_parser("validate", help="run the acceptance checks")
    sp.add_argument("--tol", type=float, default=None,
                    help="override the quadrature tolerance of every check")
    sp.add_argument("--only", type=_ints, default=None, help="comma-separated criterion numbers")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", default="", help="also write the report to this file")
    return parser


COMMANDS = {
    "grid": cmd_grid,
    "flow": cmd_flow,
    "orbit": cmd_orbit,
    "flux": cmd_flux,
    "purity-sweep": cmd_purity_sweep,
    "partition": cmd_partition,
}


def config_from_args(args):
    known = {f.name for f in fields(RunConfig)}
    values = {k: v for k, v in vars(args).items() if k in known and v is not None}
    return RunConfig(**values)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on malformed arguments
    try:
        if args.subcommand == "validate":
            if args.tol is not None and not args.tol > 0:
                raise DomainError("tol must be positive")
            return cmd_validate(args.tol, args.only, args.out, args.format)
        cfg = config_from_args(args).validate()
        workers = getattr(args, "workers", 1)
        if workers < 1:
            raise DomainError("workers must be >= 1")
        COMMANDS[args.subcommand](cfg, workers)
    except (DomainError, OrbitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (IntegrationError, SeriesTruncationError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
