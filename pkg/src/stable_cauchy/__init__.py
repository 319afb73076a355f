"""Simulation and verification tools for the linear Cauchy problem driven by
canonical alpha-stable cylindrical Lévy noise."""

from .errors import DomainError
from .rng import RngState
from .special import (
    c_alpha,
    c_ratio,
    d_alpha,
    log_gamma,
    sphere_moment,
    sphere_total_mass,
    white_noise_constant,
)
from .sampling import (
    sample_rotational_stable,
    sample_sas,
    sample_subordinator_increment,
    sample_uniform_sphere,
)
from .noise import (
    Box,
    NoisePath,
    WhiteNoiseJumpSet,
    empirical_char_fn,
    evaluate_white_noise,
    generate_subordinated_path,
    generate_subordinated_paths,
    generate_white_noise_jumps,
)
from .spectral import (
    ExistenceReport,
    SemigroupSpec,
    Trajectory,
    existence_integral,
    hs_norm_sq,
    marginal_scale,
    sandwich_check,
    simulate_mild_solution,
)
from .diagnostics import (
    char_fn_gof,
    irregularity_growth,
    levy_tail_mass,
    max_jump_statistic,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "RngState",
    "c_alpha",
    "c_ratio",
    "d_alpha",
    "log_gamma",
    "sphere_moment",
    "sphere_total_mass",
    "white_noise_constant",
    "sample_rotational_stable",
    "sample_sas",
    "sample_subordinator_increment",
    "sample_uniform_sphere",
    "Box",
    "NoisePath",
    "WhiteNoiseJumpSet",
    "empirical_char_fn",
    "evaluate_white_noise",
    "generate_subordinated_path",
    "generate_subordinated_paths",
    "generate_white_noise_jumps",
    "ExistenceReport",
    "SemigroupSpec",
    "Trajectory",
    "existence_integral",
    "hs_norm_sq",
    "marginal_scale",
    "sandwich_check",
    "simulate_mild_solution",
    "char_fn_gof",
    "irregularity_growth",
    "levy_tail_mass",
    "max_jump_statistic",
]
