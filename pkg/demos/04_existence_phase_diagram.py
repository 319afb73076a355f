"""Existence of a mild solution for the heat-type model lambda_k = k^(2/d).

A solution exists iff the Hilbert-Schmidt integral of the semigroup is
finite, which for this model happens iff alpha * d < 4.
"""
from stable_cauchy import SemigroupSpec, existence_integral

alphas = (0.5, 1.0, 1.3, 1.5, 1.9)
print("alpha\\d " + " ".join(f"{d:>10}" for d in range(1, 6)))
for a in alphas:
    cells = []
    for d in range(1, 6):
        r = existence_integral(SemigroupSpec.heat(d), a, 1.0, s_min=1e-8)
        cells.append(f"{r.verdict:>10}")
    print(f"{a:7.1f} " + " ".join(cells))

r = existence_integral(SemigroupSpec.heat(3), 1.2, 1.0)
print(f"\nd=3, alpha=1.2: fitted HS exponent {r.singularity_exponent:.4f} (theory 1.5), "
      f"integrand exponent {r.integrand_exponent:.4f}, integral on [s_min, T] = {r.integral_value:.4f}")
