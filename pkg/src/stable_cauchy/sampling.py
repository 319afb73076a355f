"""Exact samplers for symmetric and one-sided stable laws.

All samplers take ``rng`` as an :class:`~stable_cauchy.rng.RngState`, a numpy
``Generator`` or an integer seed, and an optional ``size``. With ``size=None``
a scalar (or a single vector) is returned.

Conventions (see ``MATH.md`` for the derivations):

* ``sample_sas(alpha, scale)`` has characteristic function
  ``exp(-scale**alpha * |b|**alpha)``.
* ``sample_subordinator_increment(alpha, dt)`` has Laplace transform
  ``exp(-dt * b**(alpha/2))``.
* ``sample_rotational_stable(n, alpha, t)`` has characteristic function
  ``exp(-t * |b|**alpha)`` on R^n; it is ``sqrt(2 * l) * Z`` with ``l`` a
  subordinator increment over ``t`` and ``Z`` standard normal.
"""
from __future__ import annotations

import numpy as np

from .errors import DomainError
from .rng import RngLike, as_generator
from .special import check_alpha

__all__ = [
    "sample_sas",
    "sample_subordinator_increment",
    "sample_uniform_sphere",
    "sample_rotational_stable",
    "sas_standard",
    "positive_stable_standard",
]


def _scalar_or_array(x, size):
    return float(x) if size is None else x


def sas_standard(alpha: float, u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Chambers-Mallows-Stuck transform for the symmetric case.

    ``u`` is uniform on (-pi/2, pi/2) and ``w`` is standard exponential.
    The result has characteristic function ``exp(-|b|**alpha)``.
    """
    if alpha == 1.0:
        return np.tan(u)
    a = alpha
    return (
        np.sin(a * u)
        / np.cos(u) ** (1.0 / a)
        * (np.cos((1.0 - a) * u) / w) ** ((1.0 - a) / a)
    )


def positive_stable_standard(gamma: float, u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Totally skewed stable variable with Laplace transform ``exp(-b**gamma)``.

    ``0 < gamma < 1``, ``u`` uniform on (0, pi), ``w`` standard exponential.
    This is the skewness-one Chambers-Mallows-Stuck transform rescaled by
    ``cos(pi*gamma/2)**(1/gamma)``; after the rescaling it coincides with
    Kanter's formula, evaluated in log space to stay finite near u = 0, pi.
    """
    g = gamma
    log_k = (
        np.log(np.sin(g * u))
        - np.log(np.sin(u)) / g
        + (1.0 - g) / g * (np.log(np.sin((1.0 - g) * u)) - np.log(w))
    )
    return np.exp(log_k)


def sample_sas(alpha: float, scale: float = 1.0, rng: RngLike = None, size=None):
    alpha = check_alpha(alpha)
    scale = float(scale)
    if not scale >= 0.0:
        raise DomainError(f"scale must be nonnegative, got {scale}")
    gen = as_generator(rng)
    u = gen.uniform(-0.5 * np.pi, 0.5 * np.pi, size)
    w = gen.standard_exponential(size)
    if scale == 0.0:
        return _scalar_or_array(np.zeros_like(u), size)
    return _scalar_or_array(scale * sas_standard(alpha, u, w), size)


def sample_subordinator_increment(alpha: float, dt, rng: RngLike = None, size=None):
    """Increment of the alpha/2-stable subordinator over a step ``dt``.

    ``dt`` may be an array broadcastable to ``size`` (one step length per draw).
    """
    alpha = check_alpha(alpha)
    dt_arr = np.asarray(dt, dtype=float)
    if np.any(~(dt_arr > 0.0)):
        raise DomainError(f"dt must be positive, got {dt!r}")
    gen = as_generator(rng)
    gamma = 0.5 * alpha
    u = gen.uniform(0.0, np.pi, size)
    w = gen.standard_exponential(size)
    # self-similarity: l(dt) has the law of dt**(1/gamma) * l(1)
    out = dt_arr ** (1.0 / gamma) * positive_stable_standard(gamma, u, w)
    return _scalar_or_array(out, size)


def sample_uniform_sphere(n: int, rng: RngLike = None, size=None) -> np.ndarray:
    """Uniform point(s) on the unit sphere of R^n, shape ``(n,)`` or ``(size, n)``."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    gen = as_generator(rng)
    shape = (n,) if size is None else (size, n)
    z = gen.standard_normal(shape)
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def sample_rotational_stable(n: int, alpha: float, t: float, rng: RngLike = None, size=None):
    """Rotationally invariant stable vector with char. fn ``exp(-t|b|^alpha)``.

    The subordinator draw(s) come first in the stream, then the Gaussian block.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    t = float(t)
    if not t > 0.0:
        raise DomainError(f"t must be positive, got {t}")
    gen = as_generator(rng)
    ell = sample_subordinator_increment(alpha, t, gen, size=1 if size is None else size)
    shape = (1, n) if size is None else (size, n)
    z = gen.standard_normal(shape)
    x = np.sqrt(2.0 * np.asarray(ell))[:, None] * z
    return x[0] if size is None else x
