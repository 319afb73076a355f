"""Discretised paths of the canonical alpha-stable cylindrical noise.

Two constructions are provided:

* subordinated Brownian motion: coordinate increments over a step are
  ``sqrt(2 * dl) * Z`` with ``dl`` an increment of the alpha/2-stable
  subordinator and ``Z`` i.i.d. standard normal. The shared ``dl`` couples
  the coordinates, which is what separates the cylindrical noise from ``n``
  independent stable processes.
* space-time white noise: a Poisson random measure of jumps on
  ``[0, horizon] x box x {|y| >= eps}`` with intensity
  ``dt dx |y|**(-alpha-1) dy / c``. Small jumps are dropped; their
  compensator is zero by symmetry.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .constants import DEFAULT_EPSILON
from .errors import DomainError
from .rng import RngLike, as_generator
from .sampling import positive_stable_standard
from .special import check_alpha, white_noise_constant

__all__ = [
    "SUBORDINATED",
    "WHITE_NOISE",
    "Box",
    "NoisePath",
    "WhiteNoiseJumpSet",
    "ECF",
    "validate_grid",
    "generate_subordinated_path",
    "generate_subordinated_paths",
    "generate_white_noise_jumps",
    "evaluate_white_noise",
    "white_noise_path",
    "white_noise_tail_mass",
    "truncation_variance",
    "truncation_bias",
    "empirical_char_fn",
]

SUBORDINATED = "subordinated"
WHITE_NOISE = "white_noise"


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def validate_grid(time_grid) -> np.ndarray:
    grid = np.asarray(time_grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise DomainError("time grid needs at least two points")
    if grid[0] != 0.0:
        raise DomainError(f"time grid must start at 0, got {grid[0]}")
    if not np.all(np.isfinite(grid)) or np.any(np.diff(grid) <= 0.0):
        raise DomainError("time grid must be finite and strictly increasing")
    return grid


@dataclass(frozen=True)
class Box:
    """Axis-aligned box ``[lo_1, hi_1] x ... x [lo_d, hi_d]``."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        lo = tuple(float(v) for v in np.atleast_1d(self.lo))
        hi = tuple(float(v) for v in np.atleast_1d(self.hi))
        if len(lo) != len(hi) or not lo:
            raise DomainError("box corners must have the same positive dimension")
        if any(not (b > a) for a, b in zip(lo, hi)):
            raise DomainError(f"degenerate box {lo} x {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def unit(cls, d: int = 1) -> "Box":
        return cls((0.0,) * d, (1.0,) * d)

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def volume(self) -> float:
        return float(np.prod(np.subtract(self.hi, self.lo)))

    def contains_box(self, other: "Box") -> bool:
        return other.dim == self.dim and all(
            a <= c and d <= b for a, b, c, d in zip(self.lo, self.hi, other.lo, other.hi)
        )

    def contains_points(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(-1, self.dim)
        return np.all((x >= self.lo) & (x <= self.hi), axis=1)


@dataclass(frozen=True)
class NoisePath:
    """First ``n`` coordinates of the noise on a time grid.

    ``increments`` has shape ``(steps, n)`` for a single path or
    ``(paths, steps, n)`` for a batch sharing the grid.
    """

    representation: str
    time_grid: np.ndarray
    increments: np.ndarray
    alpha: float
    subordinator_increments: Optional[np.ndarray] = None

    def __post_init__(self):
        grid = validate_grid(self.time_grid)
        inc = np.asarray(self.increments, dtype=float)
        if inc.ndim not in (2, 3) or inc.shape[-2] != grid.size - 1:
            raise DomainError(
                f"increments shape {inc.shape} does not match {grid.size - 1} steps"
            )
        if self.representation not in (SUBORDINATED, WHITE_NOISE):
            raise DomainError(f"unknown representation {self.representation!r}")
        object.__setattr__(self, "time_grid", _frozen(grid))
        object.__setattr__(self, "increments", _frozen(inc))
        if self.subordinator_increments is not None:
            sub = np.asarray(self.subordinator_increments, dtype=float)
            if sub.shape != inc.shape[:-1]:
                raise DomainError("subordinator increments do not match the grid")
            if np.any(sub < 0.0):
                raise DomainError("subordinator increments must be nonnegative")
            object.__setattr__(self, "subordinator_increments", _frozen(sub))

    @property
    def n(self) -> int:
        return self.increments.shape[-1]

    @property
    def steps(self) -> int:
        return self.time_grid.size - 1

    @property
    def is_batch(self) -> bool:
        return self.increments.ndim == 3

    def values(self) -> np.ndarray:
        """Cumulative path ``L(t_i)``, starting with zeros at ``t_0 = 0``."""
        cs = np.cumsum(self.increments, axis=-2)
        zero = np.zeros(cs.shape[:-2] + (1, cs.shape[-1]))
        return np.concatenate([zero, cs], axis=-2)


def _subordinated_block(n, alpha, dts, gen, paths):
    gamma = 0.5 * alpha
    shape = (paths, dts.size)
    u = gen.uniform(0.0, np.pi, shape)
    w = gen.standard_exponential(shape)
    dl = dts ** (1.0 / gamma) * positive_stable_standard(gamma, u, w)
    z = gen.standard_normal(shape + (n,))
    return np.sqrt(2.0 * dl)[..., None] * z, dl


def generate_subordinated_path(n: int, alpha: float, time_grid, rng: RngLike) -> NoisePath:
    """One path of the first ``n`` coordinates via subordination."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    alpha = check_alpha(alpha)
    grid = validate_grid(time_grid)
    inc, dl = _subordinated_block(int(n), alpha, np.diff(grid), as_generator(rng), 1)
    return NoisePath(SUBORDINATED, grid, inc[0], alpha, dl[0])


def generate_subordinated_paths(
    n: int, alpha: float, time_grid, rng: RngLike, paths: int
) -> NoisePath:
    """A batch of ``paths`` independent paths drawn from one stream."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if paths < 1:
        raise DomainError("paths must be positive")
    alpha = check_alpha(alpha)
    grid = validate_grid(time_grid)
    inc, dl = _subordinated_block(int(n), alpha, np.diff(grid), as_generator(rng), int(paths))
    return NoisePath(SUBORDINATED, grid, inc, alpha, dl)


# ---------------------------------------------------------------------------
# white noise


def white_noise_tail_mass(alpha: float, epsilon: float, convention: str = "exact") -> float:
    """Intensity of jumps with ``|y| >= epsilon`` per unit time and volume."""
    c = white_noise_constant(alpha, convention)
    return 2.0 / (c * alpha * epsilon**alpha)


def truncation_variance(alpha: float, epsilon: float) -> float:
    """Variance rate of the discarded jumps ``|y| < epsilon``."""
    alpha = check_alpha(alpha)
    c = white_noise_constant(alpha)
    return 2.0 * epsilon ** (2.0 - alpha) / (c * (2.0 - alpha))


def truncation_bias(beta, alpha: float, epsilon: float, t: float = 1.0, volume: float = 1.0):
    """Bound on |phi_eps(beta) - phi(beta)| for the truncated functional.

    Dropping the small jumps divides the characteristic function by
    ``exp(-psi_small)`` with ``0 <= psi_small <= beta^2 sigma_eps^2 t vol / 2``.
    """
    beta = np.abs(np.asarray(beta, dtype=float))
    target = np.exp(-t * volume * beta**alpha)
    s2 = truncation_variance(alpha, epsilon) * t * volume
    return target * np.expm1(0.5 * beta**2 * s2)


@dataclass(frozen=True)
class WhiteNoiseJumpSet:
    times: np.ndarray
    locations: np.ndarray
    magnitudes: np.ndarray
    truncation_epsilon: float
    domain_box: Box
    horizon: float
    alpha: float
    gaussian_variance_rate: float = 0.0

    def __post_init__(self):
        for name in ("times", "locations", "magnitudes"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        if self.locations.shape != (self.times.size, self.domain_box.dim):
            raise DomainError("locations must have shape (jumps, d)")
        if np.any(np.abs(self.magnitudes) < self.truncation_epsilon):
            raise DomainError("a jump magnitude lies below the truncation level")

    def __len__(self) -> int:
        return self.times.size


def generate_white_noise_jumps(
    domain_box: Box,
    alpha: float,
    horizon: float,
    epsilon: float = DEFAULT_EPSILON,
    rng: RngLike = None,
    convention: str = "exact",
    gaussian_refinement: bool = False,
) -> WhiteNoiseJumpSet:
    """Simulate the jumps of the white noise with ``|y| >= epsilon``.

    With ``gaussian_refinement`` the variance of the discarded jumps is
    recorded and :func:`evaluate_white_noise` adds a matching Gaussian term
    to each functional it evaluates (a marginal correction, not a coherent
    Gaussian field across boxes).
    """
    alpha = check_alpha(alpha, 1.0, 2.0)
    epsilon = float(epsilon)
    if not epsilon > 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    horizon = float(horizon)
    if not horizon > 0.0:
        raise DomainError(f"horizon must be positive, got {horizon}")
    gen = as_generator(rng)
    rate = horizon * domain_box.volume * white_noise_tail_mass(alpha, epsilon, convention)
    count = int(gen.poisson(rate))
    times = gen.uniform(0.0, horizon, count)
    locs = gen.uniform(domain_box.lo, domain_box.hi, (count, domain_box.dim))
    # |y| is Pareto(alpha) above epsilon; 1 - U keeps the base in (0, 1]
    radii = epsilon * (1.0 - gen.uniform(size=count)) ** (-1.0 / alpha)
    signs = np.where(gen.uniform(size=count) < 0.5, -1.0, 1.0)
    order = np.argsort(times, kind="stable")
    return WhiteNoiseJumpSet(
        times=times[order],
        locations=locs[order],
        magnitudes=(signs * radii)[order],
        truncation_epsilon=epsilon,
        domain_box=domain_box,
        horizon=horizon,
        alpha=alpha,
        gaussian_variance_rate=truncation_variance(alpha, epsilon) if gaussian_refinement else 0.0,
    )


def evaluate_white_noise(
    jumps: WhiteNoiseJumpSet, t: float, indicator_box: Box, rng: RngLike = None
) -> float:
    """``L(t) 1_A``: the sum of jump magnitudes in ``[0, t] x A``."""
    if not jumps.domain_box.contains_box(indicator_box):
        raise DomainError("indicator box is not contained in the domain box")
    if not 0.0 <= t <= jumps.horizon:
        raise DomainError(f"t must lie in [0, {jumps.horizon}], got {t}")
    if len(jumps) == 0:
        value = 0.0
    else:
        mask = (jumps.times <= t) & indicator_box.contains_points(jumps.locations)
        value = float(jumps.magnitudes[mask].sum())
    if jumps.gaussian_variance_rate > 0.0:
        var = jumps.gaussian_variance_rate * t * indicator_box.volume
        value += math.sqrt(var) * float(as_generator(rng).standard_normal())
    return value


def white_noise_path(
    jumps: WhiteNoiseJumpSet, time_grid, boxes: Sequence[Box], normalize: bool = True
) -> NoisePath:
    """Grid increments of ``L(t) 1_{A_k}`` for disjoint boxes ``A_k``.

    With ``normalize`` each column is divided by ``leb(A_k)**(1/alpha)`` so it
    is a unit-norm functional.
    """
    grid = validate_grid(time_grid)
    if grid[-1] > jumps.horizon:
        raise DomainError("time grid runs past the simulated horizon")
    cols = []
    for box in boxes:
        if not jumps.domain_box.contains_box(box):
            raise DomainError("indicator box is not contained in the domain box")
        mask = box.contains_points(jumps.locations)
        idx = np.searchsorted(grid, jumps.times[mask], side="left") - 1
        idx = np.clip(idx, 0, grid.size - 2)
        col = np.bincount(idx, weights=jumps.magnitudes[mask], minlength=grid.size - 1)
        if normalize:
            col = col / box.volume ** (1.0 / jumps.alpha)
        cols.append(col)
    return NoisePath(WHITE_NOISE, grid, np.stack(cols, axis=1), jumps.alpha)


# ---------------------------------------------------------------------------
# characteristic functions


@dataclass(frozen=True)
class ECF:
    """Empirical characteristic function value with standard errors."""

    value: complex
    se_real: float
    se_imag: float
    samples: int = field(default=0)


def empirical_char_fn(samples, beta) -> ECF:
    """``mean(exp(i <beta, X_j>))`` and the standard errors of its parts.

    ``samples`` is ``(N,)`` or ``(N, d)``; ``beta`` is a scalar or length-``d``.
    """
    x = np.asarray(samples, dtype=float)
    if x.size == 0 or x.shape[0] == 0:
        raise DomainError("empirical characteristic function needs samples")
    b = np.atleast_1d(np.asarray(beta, dtype=float))
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2 or b.shape != (x.shape[1],):
        raise DomainError(f"beta of shape {b.shape} does not match samples {x.shape}")
    proj = x @ b
    c, s = np.cos(proj), np.sin(proj)
    n = proj.size
    ddof = 1 if n > 1 else 0
    return ECF(
        complex(c.mean(), s.mean()),
        float(c.std(ddof=ddof) / math.sqrt(n)),
        float(s.std(ddof=ddof) / math.sqrt(n)),
        n,
    )
