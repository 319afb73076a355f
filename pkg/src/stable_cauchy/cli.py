"""Command line front end.

Exit codes: 0 ok, 2 configuration error, 10 Infinite verdict, 11 Inconclusive
verdict, 12 refused to simulate a divergent configuration, 20 diagnostic band
failure.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import special
from .config import ConfigError, RunConfig, load_config
from .constants import SCHEMA_VERSION
from .diagnostics import SUITES, run_suite
from .errors import DomainError
from .noise import (
    SUBORDINATED,
    Box,
    generate_subordinated_path,
    generate_white_noise_jumps,
)
from .rng import RngState
from .sampling import (
    sample_rotational_stable,
    sample_sas,
    sample_subordinator_increment,
    sample_uniform_sphere,
)
from .spectral import FINITE, INCONCLUSIVE, INFINITE, existence_integral, simulate_mild_solution

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFINITE = 10
EXIT_INCONCLUSIVE = 11
EXIT_REFUSED = 12
EXIT_BAND = 20

# named stream ids; every random draw of a run descends from (seed, one of these)
STREAM_SAMPLE = 1
STREAM_NOISE = 2
STREAM_SIMULATE = 3

_VERDICT_EXIT = {FINITE: EXIT_OK, INFINITE: EXIT_INFINITE, INCONCLUSIVE: EXIT_INCONCLUSIVE}


def _default_threads() -> int:
    env = os.environ.get("STABLE_CAUCHY_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _csv_bytes(header: list, rows: np.ndarray) -> bytes:
    buf = io.StringIO()
    np.savetxt(buf, np.atleast_2d(rows), fmt="%.17g", delimiter=",",
               header=",".join(header), comments="")
    return buf.getvalue().encode()


def _emit_json(obj, path=None) -> None:
    text = json.dumps(obj, indent=2, default=float)
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text + "\n")
    print(text)


def _resolve_config(args) -> RunConfig:
    cfg = load_config(args.config) if getattr(args, "config", None) else RunConfig()
    overrides = {
        "alpha": getattr(args, "alpha", None),
        "horizon": getattr(args, "T", None),
        "dt": getattr(args, "dt", None),
        "galerkin_n": getattr(args, "n", None),
        "paths": getattr(args, "paths", None),
        "seed": getattr(args, "seed", None),
        "output_dir": getattr(args, "output_dir", None),
        "representation": getattr(args, "representation", None),
        "s_min": getattr(args, "s_min", None),
        "epsilon": getattr(args, "epsilon", None),
        "model": getattr(args, "model", None),
        "dim": getattr(args, "dim", None),
        "exponent": getattr(args, "exponent", None),
        "truncation": getattr(args, "truncation", None),
    }
    return cfg.with_overrides(**overrides)


# ---------------------------------------------------------------------------
# subcommands


def cmd_constants(args) -> int:
    a, n = args.alpha, args.n
    out = {
        "schema_version": SCHEMA_VERSION,
        "alpha": a,
        "n": n,
        "c_alpha": special.c_alpha(a),
        "sphere_total_mass": special.sphere_total_mass(n, a),
        "d_alpha": special.d_alpha(n, a),
        "sphere_moment_alpha": special.sphere_moment(n, a),
        "sphere_moment_1": special.sphere_moment(n, 1.0),
        "sphere_moment_2": special.sphere_moment(n, 2.0),
        "c_ratio": special.c_ratio(n, a),
    }
    if 1.0 < a < 2.0:
        out["white_noise_constant"] = special.white_noise_constant(a)
    _emit_json(out)
    return EXIT_OK


def cmd_sample(args) -> int:
    rng = RngState(args.seed, args.stream if args.stream is not None else STREAM_SAMPLE)
    k = args.count
    if args.law == "sas":
        rows, header = sample_sas(args.alpha, args.scale, rng, size=k)[:, None], ["x"]
    elif args.law == "subordinator":
        rows, header = sample_subordinator_increment(args.alpha, args.dt, rng, size=k)[:, None], ["dl"]
    elif args.law == "sphere":
        rows = sample_uniform_sphere(args.n, rng, size=k)
        header = [f"y_{i + 1}" for i in range(args.n)]
    else:
        rows = sample_rotational_stable(args.n, args.alpha, args.t, rng, size=k)
        header = [f"x_{i + 1}" for i in range(args.n)]
    data = _csv_bytes(header, rows)
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.write(data.decode())
    return EXIT_OK


def cmd_simulate_noise(args) -> int:
    cfg = _resolve_config(args)
    rng = RngState(cfg.seed, STREAM_NOISE)
    if cfg.representation == SUBORDINATED:
        grid = np.linspace(0.0, cfg.horizon, cfg.time_grid_steps() + 1)
        path = generate_subordinated_path(cfg.galerkin_n, cfg.alpha, grid, rng)
        header = ["t"] + [f"dL_{k + 1}" for k in range(path.n)] + ["dl"]
        rows = np.column_stack([grid[1:], path.increments, path.subordinator_increments])
    else:
        box = Box.unit(args.space_dim)
        jumps = generate_white_noise_jumps(box, cfg.alpha, cfg.horizon, cfg.epsilon, rng)
        header = ["t"] + [f"x_{i + 1}" for i in range(box.dim)] + ["y"]
        rows = np.column_stack([jumps.times, jumps.locations, jumps.magnitudes]) if len(jumps) else \
            np.empty((0, box.dim + 2))
    data = _csv_bytes(header, rows)
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.write(data.decode())
    return EXIT_OK


def run_check_existence(cfg: RunConfig):
    report = existence_integral(cfg.semigroup.spec(), cfg.alpha, cfg.horizon, cfg.s_min)
    out = {"schema_version": SCHEMA_VERSION, **report.to_dict(),
           "semigroup": cfg.semigroup.spec().to_dict()}
    return report, out


def cmd_check_existence(args) -> int:
    cfg = _resolve_config(args)
    report, out = run_check_existence(cfg)
    path = Path(cfg.output_dir) / "existence.json" if (args.config or args.output_dir) else None
    _emit_json(out, path)
    return _VERDICT_EXIT[report.verdict]


def _simulate_one(cfg: RunConfig, spec, grid, i: int, outdir: Path) -> str:
    rng = RngState(cfg.seed, STREAM_SIMULATE).substream(i)
    noise = generate_subordinated_path(cfg.galerkin_n, cfg.alpha, grid, rng)
    traj = simulate_mild_solution(spec, noise)
    name = f"path_{i:05d}.csv"
    header = ["t"] + [f"X_{k + 1}" for k in range(cfg.galerkin_n)]
    (outdir / name).write_bytes(_csv_bytes(header, np.column_stack([grid, traj.coords])))
    return name


def run_simulate(cfg: RunConfig, force: bool = False, threads: int = 1) -> tuple:
    """Simulate ``cfg.paths`` independent Galerkin trajectories.

    Returns ``(exit_code, manifest)``. Path ``i`` uses its own stream, so the
    files do not depend on ``threads``.
    """
    if cfg.representation != SUBORDINATED:
        raise ConfigError("simulate supports only the subordinated representation")
    report, _ = run_check_existence(cfg)
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "seed": cfg.seed,
        "config_hash": cfg.config_hash(),
        "config": cfg.to_dict(),
        "alpha": cfg.alpha,
        "truncation": cfg.semigroup.spec().truncation,
        "dt": cfg.dt,
        "model": cfg.semigroup.model,
        "existence_verdict": report.verdict,
        "forced": bool(force),
        "files": [],
    }
    if report.verdict != FINITE and not force:
        return EXIT_REFUSED, manifest
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    spec = cfg.semigroup.spec()
    grid = np.linspace(0.0, cfg.horizon, cfg.time_grid_steps() + 1)
    start = time.perf_counter()
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        names = list(pool.map(lambda i: _simulate_one(cfg, spec, grid, i, outdir), range(cfg.paths)))
    manifest["files"] = names
    manifest["threads"] = threads
    manifest["wall_time_s"] = time.perf_counter() - start
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return EXIT_OK, manifest


def cmd_simulate(args) -> int:
    cfg = _resolve_config(args)
    code, manifest = run_simulate(cfg, args.force, args.threads or _default_threads())
    if code == EXIT_REFUSED:
        print(f"existence verdict is {manifest['existence_verdict']}; pass --force to simulate anyway",
              file=sys.stderr)
    else:
        print(json.dumps({k: manifest[k] for k in ("config_hash", "seed", "files")}, indent=2))
    return code


def run_diagnose(cfg: RunConfig, suite: str, samples: int = 100_000) -> tuple:
    out = run_suite(suite, cfg.alpha, cfg.seed, samples)
    out["schema_version"] = SCHEMA_VERSION
    return (EXIT_OK if out["pass"] else EXIT_BAND), out


def cmd_diagnose(args) -> int:
    cfg = _resolve_config(args)
    code, out = run_diagnose(cfg, args.suite, args.samples)
    path = Path(cfg.output_dir) / f"diagnose_{args.suite}.json" if (args.config or args.output_dir) else None
    _emit_json(out, path)
    return code


# ---------------------------------------------------------------------------


def _add_run_flags(p, *names):
    if "config" in names:
        p.add_argument("--config", help="YAML run configuration")
    if "alpha" in names:
        p.add_argument("--alpha", type=float)
    if "T" in names:
        p.add_argument("--T", type=float, help="time horizon")
    if "dt" in names:
        p.add_argument("--dt", type=float)
    if "n" in names:
        p.add_argument("--n", type=int, help="number of Galerkin coordinates")
    if "seed" in names:
        p.add_argument("--seed", type=int)
    if "output_dir" in names:
        p.add_argument("--output-dir", dest="output_dir")
    if "model" in names:
        p.add_argument("--model", choices=["powerlaw", "explicit"])
        p.add_argument("--dim", type=int, help="space dimension d; eigenvalues k**(2/d)")
        p.add_argument("--exponent", type=float)
        p.add_argument("--truncation", type=int)
        p.add_argument("--s-min", dest="s_min", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stable-cauchy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="print closed-form constants as JSON")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("sample", help="draw samples and write CSV")
    p.add_argument("--law", choices=["sas", "subordinator", "sphere", "rotstable"], required=True)
    p.add_argument("--alpha", type=float, default=1.5)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=1.0)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("simulate-noise", help="write one noise path (or jump set) as CSV")
    _add_run_flags(p, "config", "alpha", "T", "dt", "n", "seed")
    p.add_argument("--representation", choices=["subordinated", "white_noise"])
    p.add_argument("--epsilon", type=float)
    p.add_argument("--space-dim", dest="space_dim", type=int, default=1)
    p.add_argument("--output")
    p.set_defaults(func=cmd_simulate_noise)

    p = sub.add_parser("check-existence", help="evaluate the existence criterion")
    _add_run_flags(p, "config", "alpha", "T", "model", "output_dir")
    p.set_defaults(func=cmd_check_existence)

    p = sub.add_parser("simulate", help="simulate Galerkin trajectories")
    _add_run_flags(p, "config", "alpha", "T", "dt", "n", "seed", "output_dir", "model")
    p.add_argument("--paths", type=int)
    p.add_argument("--force", action="store_true", help="simulate even without a Finite verdict")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("diagnose", help="run a statistical diagnostic suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    _add_run_flags(p, "config", "alpha", "seed", "output_dir")
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_diagnose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
