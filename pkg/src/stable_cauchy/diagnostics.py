"""Statistical checks of the noise laws and of the jump-tail formula.

All pass/fail bands are ``3`` standard errors plus an explicit, reported bias
allowance. They are engineering tolerances, not hypothesis tests.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .constants import MC_SIGMAS
from .errors import DomainError
from .noise import (
    NoisePath,
    empirical_char_fn,
    generate_subordinated_paths,
)
from .rng import RngLike, RngState, as_generator
from .sampling import (
    sample_rotational_stable,
    sample_sas,
    sample_subordinator_increment,
    sample_uniform_sphere,
)
from .special import c_alpha, check_alpha, log_sphere_total_mass, sphere_total_mass
from .spectral import marginal_scale, scheme_scale

__all__ = [
    "CharFnReport",
    "JumpGrowthReport",
    "levy_tail_mass",
    "log_levy_tail_mass",
    "log_predicted_prob",
    "spectral_tail_mc",
    "max_jump_statistic",
    "grid_bias_allowance",
    "empirical_max_jump_prob",
    "irregularity_growth",
    "char_fn_gof",
    "marginal_gof",
    "run_suite",
    "SUITES",
]


@dataclass
class CharFnReport:
    beta_points: list
    empirical: list
    target: list
    std_errors: list
    bias_allowance: list
    pass_: bool
    label: str = ""

    @property
    def passed(self) -> bool:
        return self.pass_

    def max_excess(self) -> float:
        """Largest ``|emp - target| - band`` over points and parts (<= 0 when passing)."""
        worst = -math.inf
        for e, t, (sr, si), b in zip(self.empirical, self.target, self.std_errors, self.bias_allowance):
            worst = max(worst,
                        abs(e.real - t.real) - (MC_SIGMAS * sr + b),
                        abs(e.imag - t.imag) - (MC_SIGMAS * si + b))
        return worst

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "beta_points": [np.atleast_1d(b).tolist() for b in self.beta_points],
            "empirical": [[z.real, z.imag] for z in self.empirical],
            "target": [[z.real, z.imag] for z in self.target],
            "std_errors": [list(se) for se in self.std_errors],
            "bias_allowance": list(self.bias_allowance),
            "pass": self.pass_,
        }


def char_fn_gof(samples, targets, bias_allowance=0.0, label: str = "") -> CharFnReport:
    """Compare the empirical characteristic function with closed-form targets.

    ``targets`` is a sequence of ``(beta, value)`` pairs. Real and imaginary
    parts are checked separately against ``3 * se + bias``.
    """
    targets = list(targets)
    if not targets:
        raise DomainError("no target points given")
    bias = np.broadcast_to(np.asarray(bias_allowance, dtype=float), (len(targets),))
    betas, emp, tgt, ses = [], [], [], []
    ok = True
    for (beta, value), b in zip(targets, bias):
        ecf = empirical_char_fn(samples, beta)
        value = complex(value)
        ok &= abs(ecf.value.real - value.real) <= MC_SIGMAS * ecf.se_real + b
        ok &= abs(ecf.value.imag - value.imag) <= MC_SIGMAS * ecf.se_imag + b
        betas.append(beta)
        emp.append(ecf.value)
        tgt.append(value)
        ses.append((ecf.se_real, ecf.se_imag))
    return CharFnReport(betas, emp, tgt, ses, [float(v) for v in bias], bool(ok), label)


def marginal_gof(finals, lambdas, alpha: float, time_grid, betas=(0.25, 0.5, 1.0, 1.5, 2.0),
                 label: str = "") -> CharFnReport:
    """Check Galerkin end values against their stable marginals.

    ``finals`` is ``(paths, n)``. Coordinate ``k`` is divided by
    ``marginal_scale(lambda_k, alpha, T)`` so every column should be SaS with
    unit scale. Coordinates of one path share the subordinator, so cosines
    are averaged within a path and standard errors are taken across paths.
    The bias allowance is the exact gap between the scheme's own stable law
    and the continuous-time law.
    """
    x = np.atleast_2d(np.asarray(finals, dtype=float))
    lam = np.asarray(lambdas, dtype=float)
    if x.shape[1] != lam.size:
        raise DomainError("finals and lambdas disagree on the number of coordinates")
    if x.shape[0] < 2:
        raise DomainError("need at least two paths")
    grid = np.asarray(time_grid, dtype=float)
    T = grid[-1] - grid[0]
    sig = np.array([marginal_scale(l, alpha, T) for l in lam])
    ratio = np.array([scheme_scale(l, alpha, grid) for l in lam]) / sig
    z = x / sig
    betas_l, emp, tgt, ses, bias = [], [], [], [], []
    ok = True
    for b in betas:
        c = np.cos(b * z).mean(axis=1)
        s_ = np.sin(b * z).mean(axis=1)
        e = complex(c.mean(), s_.mean())
        se = (float(c.std(ddof=1) / math.sqrt(c.size)), float(s_.std(ddof=1) / math.sqrt(s_.size)))
        t = math.exp(-abs(b) ** alpha)
        allow = float(np.max(np.abs(np.exp(-(ratio * abs(b)) ** alpha) - t)))
        ok &= abs(e.real - t) <= MC_SIGMAS * se[0] + allow
        ok &= abs(e.imag) <= MC_SIGMAS * se[1] + allow
        betas_l.append(b)
        emp.append(e)
        tgt.append(complex(t))
        ses.append(se)
        bias.append(allow)
    return CharFnReport(betas_l, emp, tgt, ses, bias, bool(ok), label)


# ---------------------------------------------------------------------------
# tail masses


def log_levy_tail_mass(n: int, alpha: float, c: float) -> float:
    c = float(c)
    if not c > 0.0:
        raise DomainError(f"threshold c must be positive, got {c}")
    return log_sphere_total_mass(n, alpha) - math.log(c_alpha(alpha)) - alpha * math.log(c)


def levy_tail_mass(n: int, alpha: float, c: float) -> float:
    """Lévy measure of ``{|b| >= c}`` for the first ``n`` coordinates."""
    return math.exp(log_levy_tail_mass(n, alpha, c))


def log_predicted_prob(n: int, alpha: float, T: float, c: float) -> float:
    """``log P(no jump of norm > c on [0, T]) = -T * levy_tail_mass``."""
    if T < 0:
        raise DomainError("T must be nonnegative")
    if T == 0:
        return 0.0
    return -T * levy_tail_mass(n, alpha, c)


def spectral_tail_mc(n: int, alpha: float, c: float, samples: int, rng: RngLike, r0: Optional[float] = None):
    """Monte Carlo value of the polar-form integral of ``1{|r xi| >= c}``.

    Radii are drawn from the Pareto density ``alpha r0^alpha r^(-1-alpha)`` on
    ``[r0, inf)`` and directions uniformly, so the Lévy measure of a set ``B``
    is ``(r_n / c_alpha) r0^(-alpha) P(r xi in B)``. Returns ``(estimate, se)``.
    """
    alpha = check_alpha(alpha)
    r0 = 0.5 * c if r0 is None else float(r0)
    gen = as_generator(rng)
    xi = sample_uniform_sphere(n, gen, size=samples)
    r = r0 * (1.0 - gen.uniform(size=samples)) ** (-1.0 / alpha)
    hit = np.linalg.norm(r[:, None] * xi, axis=1) >= c
    scale = sphere_total_mass(n, alpha) / c_alpha(alpha) * r0 ** (-alpha)
    p = hit.mean()
    return scale * p, scale * math.sqrt(p * (1.0 - p) / samples)


# ---------------------------------------------------------------------------
# maximal jumps


def max_jump_statistic(noise_paths, n: int) -> np.ndarray:
    """Per path, the largest Euclidean norm of a grid increment of the first ``n`` coordinates.

    Accepts a :class:`NoisePath` (single or batched) or a list of them. On a
    grid this over-estimates the largest true jump by at most the sub-grid
    activity in the same step.
    """
    if isinstance(noise_paths, NoisePath):
        noise_paths = [noise_paths]
    out = []
    for p in noise_paths:
        if n < 1 or n > p.n:
            raise DomainError(f"n={n} exceeds path width {p.n}")
        norms = np.linalg.norm(p.increments[..., :n], axis=-1)
        out.append(np.atleast_1d(norms.max(axis=-1)))
    return np.concatenate(out)


def grid_bias_allowance(n: int, alpha: float, T: float, c: float, dt: float) -> float:
    """First-order-in-``dt`` allowance between grid and jump statistics.

    Covers the Bernoulli-versus-Poisson gap ``T m^2 dt / 2`` plus a
    second-order tail term ``T m c^-alpha dt`` with unit constant, where
    ``m`` is the tail mass at ``c``.
    """
    m = levy_tail_mass(n, alpha, c)
    return T * dt * (m * m + m * c ** (-alpha))


def empirical_max_jump_prob(
    n: int, alpha: float, T: float, c, dt: float, paths: int, rng: RngState,
    block: int = 100,
) -> tuple:
    """Empirical ``P(grid max increment <= c)`` with standard errors.

    Paths are generated in blocks of ``block``; block ``j`` uses stream
    ``rng.substream(j)``, so results do not depend on scheduling.
    """
    steps = int(round(T / dt))
    grid = np.linspace(0.0, T, steps + 1)
    cs = np.atleast_1d(np.asarray(c, dtype=float))
    maxima = []
    for j, start in enumerate(range(0, paths, block)):
        k = min(block, paths - start)
        noise = generate_subordinated_paths(n, alpha, grid, rng.substream(j), k)
        maxima.append(max_jump_statistic(noise, n))
    maxima = np.concatenate(maxima)
    p = (maxima[:, None] <= cs[None, :]).mean(axis=0)
    se = np.sqrt(p * (1.0 - p) / maxima.size)
    return p, se, maxima


@dataclass
class JumpGrowthReport:
    dims: list
    thresholds: list
    predicted_prob: np.ndarray
    log_predicted_prob: np.ndarray
    empirical_prob: Optional[np.ndarray] = None
    empirical_se: Optional[np.ndarray] = None
    samples: int = 0
    alpha: float = 0.0
    T: float = 0.0

    def decreasing_in_n(self) -> bool:
        lp = self.log_predicted_prob
        if self.T == 0:
            return bool(np.all(lp == 0.0))
        return bool(np.all(np.diff(lp, axis=0) < 0.0))

    def to_dict(self) -> dict:
        d = {
            "dims": list(self.dims),
            "thresholds": list(self.thresholds),
            "predicted_prob": self.predicted_prob.tolist(),
            "log_predicted_prob": self.log_predicted_prob.tolist(),
            "samples": self.samples,
            "alpha": self.alpha,
            "T": self.T,
            "decreasing_in_n": self.decreasing_in_n(),
        }
        if self.empirical_prob is not None:
            d["empirical_prob"] = self.empirical_prob.tolist()
            d["empirical_se"] = self.empirical_se.tolist()
        return d


def irregularity_growth(
    alpha: float, T: float, c, dims: Sequence[int],
    paths: int = 0, dt: float = 1e-3, rng: Optional[RngState] = None,
) -> JumpGrowthReport:
    """Tabulate ``exp(-T * levy_tail_mass(n, alpha, c))`` over dimensions and thresholds.

    With ``paths > 0`` the grid estimate of the same probability is added for
    every dimension (cost grows linearly in ``n``).
    """
    alpha = check_alpha(alpha)
    dims = [int(v) for v in dims]
    if not dims:
        raise DomainError("dims must be nonempty")
    if any(b <= a for a, b in zip(dims, dims[1:])):
        raise DomainError("dims must be strictly increasing")
    cs = [float(v) for v in np.atleast_1d(c)]
    logp = np.array([[log_predicted_prob(n, alpha, T, cc) for cc in cs] for n in dims])
    report = JumpGrowthReport(dims, cs, np.exp(logp), logp, alpha=alpha, T=float(T))
    if paths > 0:
        if rng is None:
            raise DomainError("an rng is required for the empirical estimate")
        emp, se = [], []
        for i, n in enumerate(dims):
            p, s, _ = empirical_max_jump_prob(n, alpha, T, cs, dt, paths, rng.substream(i))
            emp.append(p)
            se.append(s)
        report.empirical_prob = np.array(emp)
        report.empirical_se = np.array(se)
        report.samples = int(paths)
    return report


# ---------------------------------------------------------------------------
# suites used by the command line


def _charfn_suite(alpha: float, seed: int, samples: int) -> dict:
    base = RngState(seed, 101)
    betas = [0.5, 1.0, 2.0]
    reports = []
    x = sample_sas(alpha, 1.0, base.substream(0), size=samples)
    reports.append(char_fn_gof(x, [(b, math.exp(-abs(b) ** alpha)) for b in betas],
                               label=f"sas alpha={alpha}"))
    ell = sample_subordinator_increment(alpha, 1.0, base.substream(1), size=samples)
    lap = [(b, math.exp(-b ** (0.5 * alpha))) for b in betas]
    # Laplace transform checked through the same band logic on exp(-b l)
    ok = True
    lap_rows = []
    for b, target in lap:
        v = np.exp(-b * ell)
        m, se = float(v.mean()), float(v.std(ddof=1) / math.sqrt(v.size))
        ok &= abs(m - target) <= MC_SIGMAS * se
        lap_rows.append({"beta": b, "empirical": m, "target": target, "std_error": se})
    for n in (2, 3):
        xr = sample_rotational_stable(n, alpha, 1.0, base.substream(10 + n), size=samples)
        pts = [np.full(n, b / math.sqrt(n)) for b in betas]
        reports.append(char_fn_gof(xr, [(p, math.exp(-np.linalg.norm(p) ** alpha)) for p in pts],
                                   label=f"rotational n={n} alpha={alpha}"))
    return {
        "suite": "charfn",
        "alpha": alpha,
        "samples": samples,
        "reports": [r.to_dict() for r in reports],
        "subordinator_laplace": {"rows": lap_rows, "pass": bool(ok)},
        "pass": bool(ok and all(r.passed for r in reports)),
    }


def _tails_suite(alpha: float, seed: int, samples: int) -> dict:
    base = RngState(seed, 202)
    rows = []
    ok = True
    i = 0
    for n in (1, 3, 10):
        for c in (1.0, 5.0):
            est, se = spectral_tail_mc(n, alpha, c, samples, base.substream(i))
            exact = levy_tail_mass(n, alpha, c)
            good = abs(est - exact) <= MC_SIGMAS * se
            ok &= good
            rows.append({"n": n, "c": c, "exact": exact, "mc": est, "std_error": se, "pass": bool(good)})
            i += 1
    # grid check of the jump law at modest resolution
    dt, T, n, c = 1e-3, 1.0, 3, 5.0
    paths = max(1000, samples // 100)
    p, se, _ = empirical_max_jump_prob(n, alpha, T, c, dt, paths, base.substream(99))
    pred = math.exp(log_predicted_prob(n, alpha, T, c))
    band = MC_SIGMAS * float(se[0]) + grid_bias_allowance(n, alpha, T, c, dt)
    good = abs(float(p[0]) - pred) <= band
    ok &= good
    return {
        "suite": "tails",
        "alpha": alpha,
        "spectral_mc": rows,
        "max_jump": {"n": n, "c": c, "T": T, "dt": dt, "paths": paths,
                     "empirical": float(p[0]), "predicted": pred, "band": band, "pass": bool(good)},
        "pass": bool(ok),
    }


def _irregularity_suite(alpha: float, seed: int, samples: int) -> dict:
    dims = [1, 10, 100, 1000, 10_000, 100_000]
    rep = irregularity_growth(alpha, 1.0, [5.0, 10.0], dims)
    tail_small = bool(rep.predicted_prob[-1, -1] < 1e-6)
    ok = rep.decreasing_in_n() and tail_small
    return {"suite": "irregularity", "report": rep.to_dict(),
            "vanishes_at_largest_n": tail_small, "pass": bool(ok)}


SUITES = {
    "charfn": _charfn_suite,
    "tails": _tails_suite,
    "irregularity": _irregularity_suite,
}


def run_suite(name: str, alpha: float = 1.5, seed: int = 0, samples: int = 100_000) -> dict:
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](check_alpha(alpha), int(seed), int(samples))
