"""Real Eisenstein series, the invariant Laplacian by finite differences,
the multiplicative flow on Laplacian eigenfunctions, and the deformed
holomorphic Eisenstein series built from per-lattice-point Gaussians.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels as kernels
from .errors import DomainError
from .numkit import gauss_hermite
from .spectra import EvalResult, as_delta

Evaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _lattice_min_eigenvalue(delta: complex) -> float:
    """Least eigenvalue of the quadratic form |i m delta + n|^2 on (m, n)."""
    r2 = abs(delta) ** 2
    tr = r2 + 1.0
    disc = math.sqrt((r2 - 1.0) ** 2 + 4.0 * delta.imag ** 2)
    return 0.5 * (tr - disc)


def eisenstein_real(s: complex, delta, bound: int = 60) -> EvalResult:
    """E_s(delta) = sum over (m,n) != (0,0) of d1^s / |i m delta + n|^(2s),
    truncated at |m|, |n| <= bound, with an integral-comparison tail bound.

    Absolute convergence needs Re s > 1.
    """
    s = complex(s)
    if s.real <= 1.0:
        raise DomainError(f"eisenstein_real needs Re s > 1, got {s}")
    z = as_delta(delta)
    value = complex(kernels.eisenstein_real_grid(s, np.array([z.real]), np.array([z.imag]), bound)[0])
    mu = _lattice_min_eigenvalue(z)
    sigma = s.real
    tail = (z.real ** sigma) * math.pi * mu ** (-sigma) * bound ** (2.0 - 2.0 * sigma) / (sigma - 1.0)
    return EvalResult(value, tail, (2 * bound + 1) ** 2 - 1)


def eisenstein_evaluator(s: complex, bound: int = 60) -> Evaluator:
    """Vectorized E_s on paired (d1, d2) arrays, for FD and kernel probes."""
    s = complex(s)

    def ev(d1s: np.ndarray, d2s: np.ndarray) -> np.ndarray:
        return kernels.eisenstein_real_grid(s, np.asarray(d1s, float), np.asarray(d2s, float), bound)

    return ev


def laplacian_fd(F: Evaluator, delta, h: float = 1e-3) -> complex:
    """Invariant Laplacian -d1^2 (d^2/dd1^2 + d^2/dd2^2) by 5-point central
    differences in each direction (O(h^4) stencil)."""
    z = as_delta(delta)
    d1, d2 = z.real, z.imag
    if d1 - 2.0 * h <= 0.0:
        raise DomainError(f"stencil leaves the half-plane: d1={d1:g}, h={h:g}")
    d1s = np.array([d1 - 2 * h, d1 - h, d1, d1 + h, d1 + 2 * h, d1, d1, d1, d1])
    d2s = np.array([d2, d2, d2, d2, d2, d2 - 2 * h, d2 - h, d2 + h, d2 + 2 * h])
    v = np.asarray(F(d1s, d2s), dtype=np.complex128)
    f0 = v[2]
    fxx = (-v[0] + 16.0 * v[1] - 30.0 * f0 + 16.0 * v[3] - v[4]) / (12.0 * h * h)
    fyy = (-v[5] + 16.0 * v[6] - 30.0 * f0 + 16.0 * v[7] - v[8]) / (12.0 * h * h)
    return -d1 * d1 * (fxx + fyy)


@dataclass(frozen=True)
class FlowFactor:
    """Multiplicative transport of a Laplacian eigenfunction."""

    eigenvalue: complex  # s(1-s)
    alpha: float
    factor: complex


def flow_factor(s: complex, alpha: float) -> FlowFactor:
    s = complex(s)
    lam = s * (1.0 - s)
    return FlowFactor(lam, alpha, cmath.exp(-lam * alpha / 4.0))


def maass_flow(value: complex, s: complex, alpha: float) -> complex:
    """Transport an eigenfunction value: multiply by exp(-s(1-s) alpha / 4)."""
    return complex(value) * flow_factor(s, alpha).factor


# ---------------------------------------------------------------------------
# deformed holomorphic Eisenstein series
# ---------------------------------------------------------------------------

def eisenstein_holo(k: int, delta, bound: int = 40) -> complex:
    """Undeformed truncated sum over (m,n) != (0,0) of (m + i n delta)^-k."""
    return complex(kernels.eisenstein_holo_sum(float(k), as_delta(delta), bound))


def _guard_denominators(k: int, alpha: float, z: complex, bound: int, node_span: float) -> None:
    rng = np.arange(-bound, bound + 1)
    m, n = np.meshgrid(rng, rng, indexing="ij")
    mask = (m != 0) & (n != 0)
    m = m[mask].astype(float)
    n = n[mask].astype(float)
    base = m + 1j * n * z
    root = np.sqrt(-1j * m * n * z)
    t_star = -base / (2.0 * math.sqrt(alpha) * root)
    risky = (np.abs(t_star.imag) < 0.05) & (np.abs(t_star.real) < node_span + 1.0)
    if np.any(risky):
        j = int(np.flatnonzero(risky)[0])
        raise DomainError(
            f"deformed Eisenstein term (m,n)=({int(m[j])},{int(n[j])}): "
            "denominator nearly vanishes on the integration path"
        )


def eisenstein_holo_deformed(
    k: int,
    alpha: float,
    delta,
    bound: int = 40,
    gh_order: int = 80,
) -> EvalResult:
    """Deformed holomorphic Eisenstein series of even weight k >= 4.

    Each off-axis lattice point is smeared by a one-dimensional Gaussian,

        (1/sqrt(pi)) * integral e^(-t^2)
            (2 sqrt(a) t sqrt(-i m n delta) + m + i n delta)^(-k) dt,

    evaluated by Gauss-Hermite; axis points (m n = 0) keep their
    undeformed value exactly.
    """
    if k < 4 or k % 2:
        raise DomainError(f"weight must be an even integer >= 4, got {k}")
    if alpha < 0.0:
        raise DomainError("alpha must be >= 0")
    z = as_delta(delta)
    t, w = gauss_hermite(gh_order)
    if alpha > 0.0:
        _guard_denominators(k, alpha, z, bound, float(np.max(np.abs(t))))
    value = complex(kernels.eisenstein_deformed_sum(float(k), alpha, z, bound, t, w))
    mu = _lattice_min_eigenvalue(z)
    tail = 2.0 * math.pi * mu ** (-0.5 * k) * bound ** (2.0 - k) / (k - 2.0)
    return EvalResult(value, tail, (2 * bound + 1) ** 2 - 1)


def eisenstein_deformed_s_residual(k: int, alpha: float, delta, bound: int = 40, gh_order: int = 80) -> float:
    """|E_k^a(1/delta) - delta^k E_k^a(delta)| / |E_k^a(delta)|; the weight
    phase follows the (m + i n delta)^-k convention (4 | k exact)."""
    z = as_delta(delta)
    f = eisenstein_holo_deformed(k, alpha, z, bound, gh_order).value
    fi = eisenstein_holo_deformed(k, alpha, 1.0 / z, bound, gh_order).value
    sign = -1.0 if k % 4 else 1.0  # i^k for even k
    return abs(fi - sign * z ** k * f) / max(abs(f), 1e-300)


def eisenstein_deformed_t_residual(k: int, alpha: float, delta, bound: int = 40, gh_order: int = 80) -> float:
    z = as_delta(delta)
    f = eisenstein_holo_deformed(k, alpha, z, bound, gh_order).value
    ft = eisenstein_holo_deformed(k, alpha, z + 1j, bound, gh_order).value
    return abs(ft - f) / max(abs(f), 1e-300)
