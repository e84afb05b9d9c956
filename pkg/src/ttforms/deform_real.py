"""Deformation of real-analytic (Fourier) seeds and the 2D Gaussian-kernel
oracle.

A term (lam, p, a) of a weight-k real seed deforms to

    S = sqrt(1 + 8 pi lam a d1 + (4 pi p a d1)^2)

with exponential factor exp(-(S-1)/(2 a) + 2 pi i p d2) and, for the
weighted variant, the prefactor of the two-dimensional smearing

    [((1+S)/2)^2 - (2 pi p a d1)^2]^((2-k)/2) / S
        = ((1+S)/2 + 2 pi lam a d1)^((2-k)/2) / S,

which is what actually preserves F(1/delta) = |delta|^k F(delta) term
structure (checked to rounding on exactly covariant seeds).  The
invariant variant (weight 0) drops the prefactor entirely.

The invariant variant is reproduced exactly, term by term, by the Gaussian
integral operator

    (4 pi a)^-1 integral exp(-|delta-delta'|^2 / (4 a d1 d1'))
                 F(delta') d^2 delta' / d1'^2

which this module also implements as an independent quadrature oracle.
"""

from __future__ import annotations

import math
import numpy as np

from . import _kernels as kernels
from .errors import DomainError, ToleranceError
from .maass import Evaluator, laplacian_fd
from .numkit import adaptive_quad, gauss_hermite
from .spectra import EvalResult, RealSeed, as_delta, real_series_sum, seed_grid_eval
from .deform_holo import admissible_domain


def _check_window(seed: RealSeed, alpha: float, d1: float) -> None:
    lo, hi = admissible_domain(seed, alpha)
    if not (lo < d1 < hi):
        raise DomainError(
            f"d1 = {d1:.6g} outside the admissible window ({lo:.6g}, {hi:.6g}) "
            f"of {seed.name} at alpha={alpha:g}"
        )


def deform_eval_real(
    seed: RealSeed,
    alpha: float,
    delta,
    variant: str = "invariant",
    tol: float = 1e-12,
    normalization: str = "unit",
) -> EvalResult:
    """Deformed real-analytic series at delta = d1 + i d2.

    variant "weighted" carries the weight-k prefactor; "invariant" (which
    requires weight 0) drops it and is exactly the Gaussian-kernel image
    of the seed.
    """
    if variant not in ("weighted", "invariant"):
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "invariant" and abs(seed.weight) > 1e-12:
        raise ValueError(f"invariant variant needs weight 0, seed has k={seed.weight:g}")
    if alpha < 0.0:
        raise DomainError("alpha must be >= 0")
    z = as_delta(delta)
    _check_window(seed, alpha, z.real)
    lam, spin, coef = seed.terms()
    weighted = variant == "weighted"
    vals = kernels.deformed_real_terms(lam, spin, coef, alpha, z.real, z.imag, seed.weight, weighted)
    res = real_series_sum(np.asarray(vals), lam, seed.truncated)
    if weighted and normalization == "raw":
        # the covariant prefactor tends to 1 as alpha -> 0; "raw" rescales
        # to the 2^(1-k) convention of the holomorphic series
        scale = 2.0 ** (1.0 - seed.weight)
        return EvalResult(res.value * scale, res.tail * abs(scale), res.terms_used)
    return res


def st_residuals(
    seed: RealSeed,
    alpha: float,
    delta,
    variant: str = "invariant",
    tol: float = 1e-12,
) -> tuple[float, float]:
    """Relative residuals of the two functional equations

        F_a(1/delta) = |delta|^k F_a(delta)     (S)
        F_a(delta + i) = F_a(delta)             (T)
    """
    z = as_delta(delta)
    zi = 1.0 / z
    f = deform_eval_real(seed, alpha, z, variant, tol).value
    fi = deform_eval_real(seed, alpha, zi, variant, tol).value
    ft = deform_eval_real(seed, alpha, z + 1j, variant, tol).value
    scale = max(abs(f), 1e-300)
    s_res = abs(fi - abs(z) ** seed.weight * f) / scale
    t_res = abs(ft - f) / scale
    return s_res, t_res


def real_seed_evaluator(seed: RealSeed) -> Evaluator:
    """Vectorized undeformed-seed evaluator on paired (d1, d2) arrays."""

    def ev(d1s: np.ndarray, d2s: np.ndarray) -> np.ndarray:
        return seed_grid_eval(seed, d1s, d2s)

    return ev


# ---------------------------------------------------------------------------
# 2D Gaussian kernel oracle
# ---------------------------------------------------------------------------

def dgh_exponent(delta, deltap, alpha: float) -> float:
    """Kernel exponent -|delta - delta'|^2 / (4 a d1 d1'); invariant under
    simultaneous inversion of both points (hyperbolic-distance property)."""
    z, zp = complex(delta), complex(deltap)
    return -abs(z - zp) ** 2 / (4.0 * alpha * z.real * zp.real)


def dgh_kernel_oracle(
    F: Evaluator,
    alpha: float,
    delta,
    gh_order: int = 64,
    width_mult: float = 8.0,
    tol: float = 1e-8,
) -> tuple[complex, float]:
    """Apply the Gaussian kernel operator to an evaluator F by quadrature.

    The d1' integral is taken in v = log(d1'/d1) where the kernel weight is
    exp(-sinh(v/2)^2 / a); the d2' line integral is Gauss-Hermite with the
    local width 2 d1 sqrt(a) e^(v/2).  The window is +-width_mult standard
    deviations; the returned estimate combines the quadrature estimate
    with the truncated Gaussian mass.

    Raises ToleranceError when the cutoff tail dominates the tolerance.
    """
    if alpha <= 0.0:
        raise DomainError("kernel oracle needs alpha > 0")
    z = as_delta(delta)
    d1, d2 = z.real, z.imag
    t, w = gauss_hermite(gh_order)
    v_max = width_mult * math.sqrt(2.0 * alpha)

    def inner(v: float) -> complex:
        dp1 = d1 * math.exp(v)
        width = 2.0 * d1 * math.sqrt(alpha) * math.exp(0.5 * v)
        vals = F(np.full(t.shape, dp1), d2 + width * t)
        return complex(np.dot(w, vals))

    def integrand(vs: np.ndarray) -> np.ndarray:
        out = np.empty(vs.shape, dtype=np.complex128)
        for i, v in enumerate(vs):
            out[i] = math.exp(-0.5 * v) * math.exp(-math.sinh(0.5 * v) ** 2 / alpha) * inner(v)
        return out

    norm = 1.0 / (2.0 * math.pi * math.sqrt(alpha))
    val, quad_err = adaptive_quad(integrand, -v_max, v_max, tol)
    edge = (abs(integrand(np.array([-v_max]))[0]) + abs(integrand(np.array([v_max]))[0]))
    cutoff_tail = norm * edge * (2.0 * alpha / v_max)
    value = norm * val
    estimate = norm * quad_err + cutoff_tail
    if cutoff_tail > max(tol * abs(value), 10.0 * norm * quad_err + 1e-290):
        raise ToleranceError(
            f"kernel cutoff insufficient: tail {cutoff_tail:.3g} dominates "
            f"(increase width_mult={width_mult:g})",
            value=value,
            estimate=estimate,
        )
    return value, estimate


def heat_flow_residual(
    F: Evaluator,
    alpha: float,
    delta,
    h: float = 1e-3,
    rate: float = 0.25,
    gh_order: int = 64,
    tol: float = 1e-9,
) -> float:
    """| (F_a(delta) - F(delta))/a + rate * Lap(F)(delta) |: the first-order
    defect of the kernel flow against d/da F = -rate * Lap F.

    F_a is the kernel-oracle image of F; the Laplacian is the 5-point
    finite-difference invariant Laplacian.
    """
    z = as_delta(delta)
    base = complex(F(np.array([z.real]), np.array([z.imag]))[0])
    flowed, _ = dgh_kernel_oracle(F, alpha, z, gh_order=gh_order, tol=tol)
    lap = laplacian_fd(F, z, h)
    return abs((flowed - base) / alpha + rate * lap)
