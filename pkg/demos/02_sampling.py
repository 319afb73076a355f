"""Exact stable samplers checked against their transforms.

Chambers-Mallows-Stuck for SaS, Kanter's formula for the alpha/2-stable
subordinator, and subordinated Gaussians for the rotationally invariant law.
"""
import math

import numpy as np

from stable_cauchy import RngState, empirical_char_fn
from stable_cauchy.sampling import sample_rotational_stable, sample_sas, sample_subordinator_increment

N = 200_000
rng = RngState(seed=1)

x = sample_sas(1.2, 1.0, rng.substream(0), size=N)
for b in (0.5, 1.0, 2.0):
    e = empirical_char_fn(x, b)
    print(f"SaS(1.2)   E cos(bX), b={b}: {e.value.real:.4f} +- {e.se_real:.4f}  target {math.exp(-b**1.2):.4f}")

ell = sample_subordinator_increment(1.2, 1.0, rng.substream(1), size=N)
for b in (0.5, 1.0, 2.0):
    print(f"subordinator E exp(-b l), b={b}: {np.exp(-b * ell).mean():.4f}  target {math.exp(-b**0.6):.4f}")

v = sample_rotational_stable(3, 1.2, 1.0, rng.substream(2), size=N)
for beta in ([1, 0, 0], [0, 0.6, 0.8], [0.577, 0.577, 0.577]):
    e = empirical_char_fn(v, beta)
    print(f"rotational, beta={beta}: {e.value.real:.4f} +- {e.se_real:.4f}  target {math.exp(-np.linalg.norm(beta)**1.2):.4f}")
