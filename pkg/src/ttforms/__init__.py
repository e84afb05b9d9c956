"""Deformed modular forms: series evaluation, integral-kernel oracles,
Mellin-side diagonalization, and verification suites."""

from __future__ import annotations

__version__ = "0.1.0"

from ._kernels import BACKEND as kernel_backend
from .deform_holo import (
    DeformParams,
    admissible_domain,
    deform_eval,
    deform_exponent,
    deform_jacobi_theta,
    hagedorn_scan,
    jacobi_inversion_residual,
    kernel_oracle,
    s_residual,
)
from .deform_real import (
    deform_eval_real,
    dgh_kernel_oracle,
    heat_flow_residual,
    st_residuals,
)
from .errors import BranchCutError, DomainError, PoleError, ToleranceError
from .maass import (
    eisenstein_holo_deformed,
    eisenstein_real,
    flow_factor,
    laplacian_fd,
    maass_flow,
)
from .mellin import (
    DirichletValue,
    MellinValue,
    MultiplierValue,
    beta_reflection_residual,
    deformed_mellin,
    dirichlet_beta,
    locate_critical_zero,
    mellin_quad,
    mellin_seed,
    multiplier,
    product_residual,
)
from .spectra import (
    EvalResult,
    HoloSeed,
    ModulusPoint,
    RealSeed,
    builtin_seed,
    eta24_coeffs,
    eval_seed,
    hermitian_square_seed,
    partition_numbers,
    seed_from_json,
)

__all__ = [
    "BranchCutError",
    "DeformParams",
    "DirichletValue",
    "DomainError",
    "EvalResult",
    "HoloSeed",
    "MellinValue",
    "ModulusPoint",
    "MultiplierValue",
    "PoleError",
    "RealSeed",
    "ToleranceError",
    "admissible_domain",
    "beta_reflection_residual",
    "builtin_seed",
    "deform_eval",
    "deform_eval_real",
    "deform_exponent",
    "deform_jacobi_theta",
    "deformed_mellin",
    "dgh_kernel_oracle",
    "dirichlet_beta",
    "eisenstein_holo_deformed",
    "eisenstein_real",
    "eta24_coeffs",
    "eval_seed",
    "flow_factor",
    "hagedorn_scan",
    "heat_flow_residual",
    "hermitian_square_seed",
    "jacobi_inversion_residual",
    "kernel_backend",
    "kernel_oracle",
    "laplacian_fd",
    "locate_critical_zero",
    "maass_flow",
    "mellin_quad",
    "mellin_seed",
    "multiplier",
    "partition_numbers",
    "product_residual",
    "s_residual",
    "seed_from_json",
    "st_residuals",
]
