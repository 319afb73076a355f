"""Two constructions of the same cylindrical noise.

Coordinates via a shared subordinator, and the integral of an indicator
against a truncated Poisson white noise. For alpha in (1, 2) both laws have
characteristic function exp(-|b|^alpha) on a unit-measure box.
"""
import math

import numpy as np

from stable_cauchy import Box, RngState, empirical_char_fn, evaluate_white_noise, generate_white_noise_jumps
from stable_cauchy.noise import generate_subordinated_paths, truncation_bias

alpha, eps = 1.5, 3e-3
sub = generate_subordinated_paths(2, alpha, [0.0, 1.0], RngState(2, 0), 200_000).increments[:, 0, :]

box = Box.unit(1)
wn = np.array([
    evaluate_white_noise(generate_white_noise_jumps(box, alpha, 1.0, eps, RngState(2, 1).substream(j)), 1.0, box)
    for j in range(3000)
])

for b in (0.5, 1.0, 2.0):
    e1, e2 = empirical_char_fn(sub[:, 0], b), empirical_char_fn(wn, b)
    print(f"b={b}: subordinated {e1.value.real:.4f}, white noise {e2.value.real:.4f} "
          f"(+-{3 * e2.se_real:.4f}, bias <= {float(truncation_bias(b, alpha, eps)):.4f}), "
          f"target {math.exp(-b**alpha):.4f}")

a = np.abs(sub)
print("\ncoordinates share the subordinator, so their sizes are correlated:",
      f"corr(|dL_1|, |dL_2|) = {np.corrcoef(np.tanh(a[:, 0]), np.tanh(a[:, 1]))[0, 1]:.3f}")
