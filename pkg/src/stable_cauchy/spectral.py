"""Diagonal semigroups: existence criterion, Galerkin solver, sandwich bounds.

The semigroup acts by ``T(t) e_k = exp(-lambda_k t) e_k``. Eigenvalues come
from a power law ``lambda_k = c_k k**p`` (Weyl's law for the Laplacian on a
d-dimensional domain has ``p = 2/d``) or from an explicit finite list.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy import integrate
from scipy import special as _sp

from .constants import (
    DEFAULT_TRUNCATION,
    EXISTENCE_FIT_RESIDUAL,
    EXISTENCE_MARGIN,
    EXISTENCE_RTOL,
)
from .errors import DomainError
from .noise import NoisePath
from .rng import RngLike, RngState, as_generator
from .sampling import sample_uniform_sphere
from .special import c_alpha, c_ratio, check_alpha, sphere_total_mass

__all__ = [
    "POWER_LAW",
    "EXPLICIT",
    "FINITE",
    "INFINITE",
    "INCONCLUSIVE",
    "SemigroupSpec",
    "HSNorm",
    "ExistenceReport",
    "Trajectory",
    "SandwichResult",
    "hs_norm_sq",
    "existence_integral",
    "simulate_mild_solution",
    "marginal_scale",
    "scheme_scale",
    "sandwich_check",
]

POWER_LAW = "powerlaw"
EXPLICIT = "explicit"

FINITE = "Finite"
INFINITE = "Infinite"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SemigroupSpec:
    model: str
    c_lo: float = 1.0
    c_hi: float = 1.0
    exponent: float = 1.0
    lambdas: Optional[tuple] = None
    truncation: int = DEFAULT_TRUNCATION
    coefficient_seed: int = 0

    def __post_init__(self):
        if self.model == POWER_LAW:
            if not (0.0 < self.c_lo <= self.c_hi):
                raise DomainError("power law needs 0 < c_lo <= c_hi")
            if not self.exponent > 0.0:
                raise DomainError("power-law exponent must be positive")
            if int(self.truncation) != self.truncation or self.truncation < 1:
                raise DomainError("truncation must be a positive integer")
        elif self.model == EXPLICIT:
            lam = tuple(float(v) for v in (self.lambdas or ()))
            if not lam or any(not (v >= 0.0 and math.isfinite(v)) for v in lam):
                raise DomainError("explicit eigenvalues must be a nonempty list of finite values >= 0")
            object.__setattr__(self, "lambdas", lam)
            object.__setattr__(self, "truncation", len(lam))
        else:
            raise DomainError(f"unknown semigroup model {self.model!r}")

    @classmethod
    def power_law(cls, c: float = 1.0, exponent: float = 1.0, truncation: int = DEFAULT_TRUNCATION,
                  c_hi: Optional[float] = None, coefficient_seed: int = 0) -> "SemigroupSpec":
        return cls(POWER_LAW, float(c), float(c if c_hi is None else c_hi), float(exponent),
                   None, int(truncation), int(coefficient_seed))

    @classmethod
    def heat(cls, dim: int, c: float = 1.0, truncation: int = DEFAULT_TRUNCATION) -> "SemigroupSpec":
        """Weyl-law model of the Dirichlet Laplacian in ``dim`` space dimensions."""
        if int(dim) != dim or dim < 1:
            raise DomainError("dimension must be a positive integer")
        return cls.power_law(c, 2.0 / dim, truncation)

    @classmethod
    def explicit(cls, lambdas) -> "SemigroupSpec":
        return cls(EXPLICIT, lambdas=tuple(lambdas))

    @property
    def finite_rank(self) -> bool:
        return self.model == EXPLICIT

    def eigenvalues(self, count: Optional[int] = None) -> np.ndarray:
        """The first ``count`` eigenvalues (default: all ``truncation`` of them)."""
        count = self.truncation if count is None else int(count)
        if count < 1:
            raise DomainError("count must be positive")
        if self.model == EXPLICIT:
            if count > len(self.lambdas):
                raise DomainError(f"only {len(self.lambdas)} eigenvalues are defined")
            return np.array(self.lambdas[:count])
        k = np.arange(1, count + 1, dtype=float)
        if self.c_lo == self.c_hi:
            coef = np.full(count, self.c_lo)
        else:
            coef = RngState(self.coefficient_seed, 0xC0EF).generator().uniform(self.c_lo, self.c_hi, count)
        return coef * k**self.exponent

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["lambdas"] is not None:
            d["lambdas"] = list(d["lambdas"])
        return d


# ---------------------------------------------------------------------------
# Hilbert-Schmidt norm


@dataclass(frozen=True)
class HSNorm:
    lower: float
    upper: float

    @property
    def value(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower


def _tail_integral(a, start: float, p: float):
    """``int_start^inf exp(-a x**p) dx`` for ``a > 0`` (vectorised in ``a``)."""
    a = np.asarray(a, dtype=float)
    q = 1.0 / p
    x = a * start**p
    upper_gamma = _sp.gammaincc(q, x)
    with np.errstate(divide="ignore"):
        log_val = math.log(q) - q * np.log(a) + _sp.gammaln(q) + np.log(upper_gamma)
    return np.exp(log_val)


def _hs_bounds(spec: SemigroupSpec, s: np.ndarray, lam: np.ndarray):
    head = np.exp(-2.0 * s[:, None] * lam[None, :]).sum(axis=1)
    if spec.finite_rank:
        return head, head.copy()
    K = spec.truncation
    lo_tail = _tail_integral(2.0 * s * spec.c_hi, K + 1.0, spec.exponent)
    hi_tail = _tail_integral(2.0 * s * spec.c_lo, float(K), spec.exponent)
    return head + lo_tail, head + hi_tail


def hs_norm_sq(spec: SemigroupSpec, s) -> HSNorm:
    """``||T(s)||_HS^2`` as a rigorous interval.

    The first ``truncation`` terms are summed; the remainder is enclosed by
    the integral test using the extreme coefficients of the power law.
    """
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(~(s_arr > 0.0)):
        raise DomainError("s must be positive; ||T(0)||_HS is infinite for infinite rank")
    lo, hi = _hs_bounds(spec, s_arr, spec.eigenvalues())
    if np.ndim(s) == 0:
        return HSNorm(float(lo[0]), float(hi[0]))
    return HSNorm(lo, hi)


# ---------------------------------------------------------------------------
# existence criterion


@dataclass(frozen=True)
class ExistenceReport:
    integral_value: float
    integral_lower: float
    integral_upper: float
    singularity_exponent: float
    integrand_exponent: float
    fit_residual: float
    verdict: str
    alpha: float
    T: float
    s_min: float

    def to_dict(self) -> dict:
        return asdict(self)


def _quad_log(fn, a: float, b: float) -> float:
    # s = exp(u) spreads the near-singular region over many panels
    val, _ = integrate.quad(
        lambda u: fn(math.exp(u)) * math.exp(u),
        math.log(a), math.log(b),
        epsabs=0.0, epsrel=EXISTENCE_RTOL, limit=500,
    )
    return val


def existence_integral(
    spec: SemigroupSpec, alpha: float, T: float, s_min: float = 1e-8, fit_points: int = 25
) -> ExistenceReport:
    """Evaluate ``int_{s_min}^T ||T(s)||_HS^alpha ds`` and classify the singularity.

    The log-log slope of ``||T(s)||_HS^2`` on ``[s_min, 100 s_min]`` gives the
    singularity exponent ``e``; the integrand behaves like ``s**(-e*alpha/2)``.
    The verdict is Finite when ``e*alpha/2 < 1 - margin``, Infinite when it is
    at or above the critical value up to the margin (the critical power
    ``1/s`` already diverges), and Inconclusive when the samples are not a
    clean power law.
    """
    alpha = check_alpha(alpha)
    T = float(T)
    s_min = float(s_min)
    if not (0.0 < s_min < T):
        raise DomainError(f"need 0 < s_min < T, got s_min={s_min}, T={T}")
    lam = spec.eigenvalues()
    half = 0.5 * alpha

    def envelope(which):
        def f(s):
            lo, hi = _hs_bounds(spec, np.array([s]), lam)
            return float((lo if which == 0 else hi)[0]) ** half
        return f

    def mid(s):
        lo, hi = _hs_bounds(spec, np.array([s]), lam)
        return float(0.5 * (lo[0] + hi[0])) ** half

    value = _quad_log(mid, s_min, T)
    if spec.finite_rank:
        lower = upper = value
    else:
        lower = _quad_log(envelope(0), s_min, T)
        upper = _quad_log(envelope(1), s_min, T)

    s_fit = np.geomspace(s_min, min(100.0 * s_min, T), fit_points)
    lo, hi = _hs_bounds(spec, s_fit, lam)
    y = np.log(0.5 * (lo + hi))
    x = np.log(s_fit)
    slope, icpt = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + icpt)) ** 2)))
    exponent = float(max(-slope, 0.0))
    q = exponent * half
    if resid > EXISTENCE_FIT_RESIDUAL:
        verdict = INCONCLUSIVE
    elif q < 1.0 - EXISTENCE_MARGIN:
        verdict = FINITE
    else:
        verdict = INFINITE
    return ExistenceReport(
        integral_value=float(value),
        integral_lower=float(lower),
        integral_upper=float(upper),
        singularity_exponent=exponent,
        integrand_exponent=q,
        fit_residual=resid,
        verdict=verdict,
        alpha=alpha,
        T=T,
        s_min=s_min,
    )


# ---------------------------------------------------------------------------
# Galerkin mild solution


@dataclass(frozen=True)
class Trajectory:
    """Coordinates ``<X(t_i), e_k>``; shape ``(steps+1, n)`` or ``(paths, steps+1, n)``."""

    time_grid: np.ndarray
    coords: np.ndarray
    initial: np.ndarray

    @property
    def final(self) -> np.ndarray:
        return self.coords[..., -1, :]


def simulate_mild_solution(spec: SemigroupSpec, noise: NoisePath, x0=None) -> Trajectory:
    """Exponential-Euler Galerkin scheme for ``dX = -D X dt + dL``.

    ``X_{i+1} = exp(-lambda dt_i) * (X_i + dL_i)``: the increment is injected
    at the start of the step and damped with the full step factor.
    """
    n = noise.n
    if n > spec.truncation:
        raise DomainError(f"noise has {n} coordinates but the semigroup only {spec.truncation}")
    x0 = np.zeros(n) if x0 is None else np.asarray(x0, dtype=float)
    if x0.shape != (n,):
        raise DomainError(f"x0 must have length {n}, got shape {x0.shape}")
    lam = spec.eigenvalues(n)
    decay = np.exp(-lam[None, :] * np.diff(noise.time_grid)[:, None])  # (steps, n)
    inc = noise.increments
    batch = inc.shape[:-2]
    coords = np.empty(batch + (noise.steps + 1, n))
    x = np.broadcast_to(x0, batch + (n,)).copy()
    coords[..., 0, :] = x
    for i in range(noise.steps):
        x = decay[i] * (x + inc[..., i, :])
        coords[..., i + 1, :] = x
    return Trajectory(noise.time_grid, coords, x0)


def marginal_scale(lam: float, alpha: float, t: float) -> float:
    """Stable scale of ``int_0^t exp(-lam (t-s)) dL(s)`` for a 1-d SaS driver."""
    alpha = check_alpha(alpha)
    lam = float(lam)
    t = float(t)
    if lam < 0.0 or not t > 0.0:
        raise DomainError("need lam >= 0 and t > 0")
    if lam == 0.0:
        return t ** (1.0 / alpha)
    return (-math.expm1(-alpha * lam * t) / (alpha * lam)) ** (1.0 / alpha)


def scheme_scale(lam: float, alpha: float, time_grid) -> float:
    """Exact stable scale of the exponential-Euler output at the last grid point.

    The scheme returns ``sum_i exp(-lam (T - t_i)) dL_i`` with ``t_i`` the left
    end of step ``i``, a left-point rule for the kernel of :func:`marginal_scale`.
    """
    alpha = check_alpha(alpha)
    grid = np.asarray(time_grid, dtype=float)
    dt = np.diff(grid)
    w = np.exp(-alpha * lam * (grid[-1] - grid[:-1]))
    return float(np.sum(dt * w)) ** (1.0 / alpha)


# ---------------------------------------------------------------------------
# sandwich bounds


@dataclass(frozen=True)
class SandwichResult:
    lower: float
    estimate: float
    upper: float
    std_error: float
    c_ratio: float
    mc_points: int

    def ordered(self, sigmas: float = 3.0) -> bool:
        band = sigmas * self.std_error
        return self.lower <= self.estimate + band and self.estimate - band <= self.upper

    def to_dict(self) -> dict:
        return asdict(self)


def sandwich_check(
    spec: SemigroupSpec,
    alpha: float,
    T: float,
    m: int,
    n: int,
    mc_points: int = 100_000,
    rng: RngLike = 0,
    chunk: int = 20_000,
) -> SandwichResult:
    """Monte Carlo value of the block functional ``I_{m,n}`` and its Jensen bounds.

    ``I_{m,n} = 2/(c_alpha (2-alpha)) * int_0^T int_S (sum_k exp(-2 lam_k s) xi_k^2)^(alpha/2) lambda_N(dxi) ds``
    over the block ``k = m..n`` of size ``N``. With
    ``H = int_0^T (sum_k exp(-2 lam_k s))^(alpha/2) ds`` and
    ``K = 2/(c_alpha (2-alpha))`` the bounds are ``K H <= I <= K c_N H`` where
    ``c_N = r_N / N^(alpha/2)``.
    """
    alpha = check_alpha(alpha)
    if not (1 <= m <= n):
        raise DomainError(f"need 1 <= m <= n, got m={m}, n={n}")
    if n > spec.truncation:
        raise DomainError("block exceeds the semigroup truncation")
    lam = spec.eigenvalues(n)[m - 1:]
    size = lam.size
    half = 0.5 * alpha
    pref = 2.0 / (c_alpha(alpha) * (2.0 - alpha))

    h, _ = integrate.quad(lambda s: np.exp(-2.0 * lam * s).sum() ** half, 0.0, T,
                          epsabs=0.0, epsrel=1e-10, limit=200)
    gen = as_generator(rng)
    vals = []
    remaining = int(mc_points)
    while remaining > 0:
        k = min(chunk, remaining)
        xi2 = sample_uniform_sphere(size, gen, size=k) ** 2
        per_point, _ = integrate.quad_vec(
            lambda s: (xi2 @ np.exp(-2.0 * lam * s)) ** half, 0.0, T,
            epsabs=0.0, epsrel=1e-9,
        )
        vals.append(per_point)
        remaining -= k
    vals = np.concatenate(vals)
    r = sphere_total_mass(size, alpha)
    est = pref * r * float(vals.mean())
    se = pref * r * float(vals.std(ddof=1) / math.sqrt(vals.size)) if vals.size > 1 else 0.0
    cr = c_ratio(size, alpha)
    return SandwichResult(pref * h, est, pref * cr * h, se, cr, int(mc_points))
