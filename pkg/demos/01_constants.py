"""Closed-form constants of the rotationally invariant stable law.

The Lévy measure (alpha/c_alpha) r^(-1-alpha) dr lambda_n(dxi) has symbol
|b|^alpha exactly when the sphere mass r_n is the reciprocal of the sphere
moment E|xi_1|^alpha. This script tabulates both and their product.
"""
from stable_cauchy import c_alpha, c_ratio, sphere_moment, sphere_total_mass

print(f"{'alpha':>6} {'c_alpha':>10}")
for a in (0.5, 1.0, 1.5, 1.9):
    print(f"{a:6.2f} {c_alpha(a):10.6f}")

print("\nnormalisation r_n * E|xi_1|^alpha at alpha = 1.5")
for n in (1, 2, 10, 1000, 100_000):
    r = sphere_total_mass(n, 1.5)
    print(f"  n={n:>6}: r_n={r:12.4f}  product={r * sphere_moment(n, 1.5):.15f}")

print("\nratio of the block bounds c_N = r_N / N^(alpha/2) grows from 1 to a limit above 1:")
for N in (1, 10, 100, 1001):
    print(f"  N={N:>5}: {c_ratio(N, 1.5):.6f}")
