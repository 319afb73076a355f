"""Why the solution has no regular version in the state space.

The probability that the first n coordinates of the noise have no jump
larger than c on [0, T] is exp(-T * nu_n(|b| > c)). The tail mass grows
like n^(alpha/2), so the probability vanishes as n grows, at every c.
"""
from stable_cauchy import RngState, irregularity_growth

rep = irregularity_growth(1.5, 1.0, [5.0, 10.0, 50.0], [1, 10, 100, 1000, 10_000, 100_000])
print("n        " + "".join(f"c={c:<12g}" for c in rep.thresholds))
for n, row in zip(rep.dims, rep.predicted_prob):
    print(f"{n:<8} " + "".join(f"{p:<14.3e}" for p in row))

sim = irregularity_growth(1.5, 1.0, 5.0, [1, 3, 10], paths=1000, dt=1e-3, rng=RngState(6))
print("\ngrid estimate vs prediction at c=5:")
for n, p, se, q in zip(sim.dims, sim.empirical_prob[:, 0], sim.empirical_se[:, 0], sim.predicted_prob[:, 0]):
    print(f"  n={n:>2}: {p:.3f} +- {se:.3f}   predicted {q:.3f}")
