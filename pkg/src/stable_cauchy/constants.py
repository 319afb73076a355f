"""Shared numerical tolerances and defaults."""

#: Relative accuracy contract for :func:`stable_cauchy.special.log_gamma`.
LOG_GAMMA_RTOL = 1e-12

#: Tolerance for the normalisation identity r_n * E|Y_1|^alpha = 1.
NORMALIZATION_TOL = 1e-10

#: Tolerance for E[Y_k^2] = 1/n.
SECOND_MOMENT_TOL = 1e-12

#: Monte Carlo bands are this many standard errors wide.
MC_SIGMAS = 3.0

#: Relative tolerance for the existence-criterion quadrature.
EXISTENCE_RTOL = 1e-6

#: Half width of the dead band around the critical singularity exponent.
EXISTENCE_MARGIN = 0.01

#: RMS residual (in log units) above which the log-log fit is not a power law.
EXISTENCE_FIT_RESIDUAL = 0.05

#: Default eigenvalue truncation for infinite-rank semigroups.
DEFAULT_TRUNCATION = 10_000

#: Default small-jump truncation for the white-noise representation.
DEFAULT_EPSILON = 1e-3

SCHEMA_VERSION = 1
