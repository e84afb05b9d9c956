"""Deformation of holomorphic seeds.

The deformed series on a spectrum {lam_j, a_j} of weight k is

    F_a(delta) = sum_j a_j (1 + S_j)^(1-k) / S_j * exp(-(S_j - 1)/(2 a)),
    S_j = sqrt(1 + 8 pi lam_j a delta),

("raw" normalization; "unit" divides by 2^(1-k) so a -> 0 recovers the
seed).  The same transform applied through an invariant integral kernel
provides an independent oracle, and the two-variable (Jacobi) theta
deforms through its completed spectrum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .errors import BranchCutError, DomainError
from .numkit import adaptive_quad, gauss_hermite
from .spectra import EvalResult, HoloSeed, as_delta, eval_seed, single_term_seed, sum_series

TWO_PI = 2.0 * math.pi
EIGHT_PI = 8.0 * math.pi


@dataclass(frozen=True)
class DeformParams:
    """Deformation strength and output normalization."""

    alpha: float
    normalization: str = "unit"  # unit: divide by 2^(1-k); raw: as-is

    def __post_init__(self) -> None:
        if self.alpha < 0.0:
            raise DomainError("alpha must be >= 0 (negative strength is out of scope)")
        if self.normalization not in ("unit", "raw"):
            raise ValueError(f"unknown normalization {self.normalization!r}")


@dataclass(frozen=True)
class TermDeformation:
    """Per-exponent deformation data (for property checks)."""

    s: complex
    prefactor: complex
    exponent_factor: complex


def term_deformation(lam: float, alpha: float, delta: complex, k: float) -> TermDeformation:
    w = 1.0 + EIGHT_PI * lam * alpha * delta
    if w.real <= 0.0 and abs(w.imag) <= 1e-14 * max(1.0, abs(w.real)):
        raise BranchCutError(f"term lam={lam}: 1+8*pi*lam*alpha*delta = {w} on the cut")
    s = cmath.sqrt(w)
    pref = (1.0 + s) ** (1.0 - k) / s
    expf = cmath.exp(-2.0 * TWO_PI * lam * delta / (1.0 + s))
    return TermDeformation(s, pref, expf)


def deform_exponent(x: complex, beta: complex) -> complex:
    """The deformed number x_beta = (sqrt(1 + 4 beta x) - 1) / (2 beta).

    Computed as 2 x / (1 + sqrt(1 + 4 beta x)), which is exact at beta = 0
    and satisfies (beta x_b)^2 + beta x_b = beta x.
    """
    w = 1.0 + 4.0 * complex(beta) * complex(x)
    if w.real <= 0.0 and abs(w.imag) <= 1e-14 * max(1.0, abs(w.real)):
        raise BranchCutError(f"deform_exponent: 1+4*beta*x = {w} lies on the branch cut")
    return 2.0 * complex(x) / (1.0 + cmath.sqrt(w))


def admissible_domain(seed, alpha: float) -> tuple[float, float]:
    """Admissible Re delta window for this seed and strength.

    (0, inf) when the lowest exponent is >= 0; otherwise the inversion
    symmetric window (8 pi |lam_min| a, 1/(8 pi |lam_min| a)), which is
    empty once 8 pi |lam_min| a >= 1.
    """
    dmin = seed.delta_min
    if alpha < 0.0:
        raise DomainError("alpha must be >= 0")
    if dmin >= 0.0 or alpha == 0.0:
        return (0.0, math.inf)
    lo = EIGHT_PI * abs(dmin) * alpha
    if lo >= 1.0 - 1e-12:  # closed up to rounding of the product
        raise DomainError(
            f"admissible window empty for {seed.name}: 8*pi*|lam_min|*alpha = {lo:.6g} >= 1"
        )
    return (lo, 1.0 / lo)


def check_admissible(seed, alpha: float, delta: complex) -> None:
    lo, hi = admissible_domain(seed, alpha)
    if not (lo < delta.real < hi):
        raise DomainError(
            f"Re delta = {delta.real:.6g} outside the admissible window "
            f"({lo:.6g}, {hi:.6g}) of {seed.name} at alpha={alpha:g}"
        )


def _guard_cut(lam: np.ndarray, alpha: float, delta: complex, context: str) -> None:
    w = 1.0 + EIGHT_PI * alpha * lam * delta
    bad = (w.real <= 0.0) & (np.abs(w.imag) <= 1e-14 * np.maximum(1.0, np.abs(w.real)))
    if np.any(bad):
        j = int(np.flatnonzero(bad)[0])
        raise BranchCutError(f"{context}: sqrt argument {w[j]} on the cut at term {j}")


def deform_eval(
    seed: HoloSeed,
    alpha: float,
    delta,
    tol: float = 1e-12,
    normalization: str = "unit",
    max_terms: int = 300_000,
) -> EvalResult:
    """Deformed holomorphic series at a point of the admissible window."""
    params = DeformParams(alpha, normalization)
    z = as_delta(delta)
    check_admissible(seed, alpha, z)
    k = seed.weight

    def term_fn(count: int):
        lam, coef = seed.terms(count)
        _guard_cut(lam, alpha, z, f"deform_eval({seed.name})")
        return kernels.deformed_holo_terms(lam, coef, alpha, z, k)

    res = sum_series(term_fn, seed.size, tol, max_terms, seed.truncated)
    if params.normalization == "unit":
        scale = 2.0 ** (k - 1.0)
        return EvalResult(res.value * scale, res.tail * abs(scale), res.terms_used)
    return res


def s_residual(seed: HoloSeed, alpha: float, delta, tol: float = 1e-12) -> float:
    """Relative residual of F_a(1/delta) = delta^k F_a(delta)."""
    z = as_delta(delta)
    zi = 1.0 / z
    check_admissible(seed, alpha, z)
    check_admissible(seed, alpha, zi)
    f = deform_eval(seed, alpha, z, tol).value
    fi = deform_eval(seed, alpha, zi, tol).value
    phase = cmath.exp(seed.weight * cmath.log(z))
    return abs(fi - phase * f) / max(abs(f), 1e-300)


# ---------------------------------------------------------------------------
# two-variable (Jacobi) theta
# ---------------------------------------------------------------------------

def deform_jacobi_theta(
    w: complex,
    alpha: float,
    delta,
    weightexp: float = 0.5,
    tol: float = 1e-12,
    max_ring: int = 4096,
) -> EvalResult:
    """Deformed two-variable theta at elliptic argument w.

    Write w = x + i*delta*y with real x, y (always possible for
    Re delta > 0); classically

        sum_n exp(-pi n^2 delta + 2 pi i n w)
            = e^(pi y^2 delta) sum_n e^(2 pi i n x) exp(-pi (n+y)^2 delta),

    and the deformation acts on the real shifted spectrum (n+y)^2/2 while
    the twist phases stay in the coefficients:

        e^(pi y^2 delta) sum_n e^(2 pi i n x)
            ((1+S_n)/2)^weightexp / S_n * exp(-(S_n-1)/(2 a)),
        S_n = sqrt(1 + 4 pi a (n+y)^2 delta).

    weightexp = 1/2 is the theta normalization (the underlying weight is
    1 - weightexp); at w = 0 this reduces to the unit-normalized deformed
    theta3 series.
    """
    z = as_delta(delta)
    w = complex(w)
    d1, d2 = z.real, z.imag
    y = w.imag / d1
    x = w.real + d2 * y
    prefactor = cmath.exp(math.pi * y * y * z)
    n_ring = 16
    total = 0.0 + 0.0j
    used = 0
    while True:
        n = np.arange(-n_ring, n_ring + 1)
        vals = kernels.shifted_theta_terms(n + y, alpha, z, weightexp)
        vals = vals * np.exp((TWO_PI * 1j * x) * n)
        total = complex(np.sum(vals))
        used = n.size
        edge = max(abs(vals[0]), abs(vals[-1]))
        if edge <= 0.25 * tol * max(abs(total), 1e-300):
            tail = 4.0 * edge
            break
        if n_ring >= max_ring:
            raise DomainError(
                f"two-variable theta did not converge by |n| = {max_ring}; "
                "Im w is too large for this alpha and delta"
            )
        n_ring *= 2
    return EvalResult(prefactor * total, abs(prefactor) * tail, used)


def jacobi_inversion_residual(
    z_arg: float,
    alpha: float,
    delta,
    weightexp: float = 0.5,
    tol: float = 1e-13,
) -> float:
    """Relative residual of the deformed inversion identity

        Th(z sqrt(delta); delta)
            = delta^-(1-weightexp) e^(-pi z^2) Th(i z / sqrt(delta); 1/delta).
    """
    z = as_delta(delta)
    rt = cmath.sqrt(z)
    lhs = deform_jacobi_theta(z_arg * rt, alpha, z, weightexp, tol).value
    rhs = deform_jacobi_theta(1j * z_arg / rt, alpha, 1.0 / z, weightexp, tol).value
    k = 1.0 - weightexp
    rhs = rhs * cmath.exp(-k * cmath.log(z)) * cmath.exp(-math.pi * z_arg * z_arg)
    return abs(lhs - rhs) / max(abs(lhs), 1e-300)


# ---------------------------------------------------------------------------
# integral-kernel oracle
# ---------------------------------------------------------------------------

def kernel_weight(delta: float, deltap: float, alpha: float, k: float, gh_order: int = 48) -> complex:
    """Kernel K(delta, delta'), invariant under (d, d') -> (1/d, 1/d'):

        K = exp(-(d'-d)^2 / (4 a d d')) *
            integral (A - i a t)^(1-k) e^(-a t^2) dt,
        A = (d + d') / (2 sqrt(d d')).
    """
    t, wts = gauss_hermite(gh_order)
    a_geo = (delta + deltap) / (2.0 * math.sqrt(delta * deltap))
    sq = math.sqrt(alpha)
    vals = (a_geo - 1j * sq * t) ** (1.0 - k)
    h = complex(np.dot(wts, vals)) / sq
    gauss = math.exp(-((deltap - delta) ** 2) / (4.0 * alpha * delta * deltap))
    return gauss * h


def _covariant_value(seed: HoloSeed, deltap: float, tol: float) -> complex:
    """Seed value, routed through the weight identity for small arguments."""
    if seed.s_covariant and deltap < 0.4:
        inner = eval_seed(seed, 1.0 / deltap, tol).value
        return deltap ** (-seed.weight) * inner
    return eval_seed(seed, deltap, tol).value


def _kernel_integral(seed: HoloSeed, alpha: float, delta: float, gh_order: int, tol: float) -> complex:
    k = seed.weight
    gh_order = min(200, max(gh_order, 24 + 10 * int(abs(1.0 - k)) + 10))
    t, wts = gauss_hermite(gh_order)
    sq = math.sqrt(alpha)

    def integrand(v: np.ndarray) -> np.ndarray:
        out = np.empty(v.shape, dtype=np.complex128)
        for i, vi in enumerate(v):
            dp = delta * math.exp(vi)
            a_geo = math.cosh(0.5 * vi)
            h = complex(np.dot(wts, (a_geo - 1j * sq * t) ** (1.0 - k))) / sq
            gauss = math.exp(-math.sinh(0.5 * vi) ** 2 / alpha)
            out[i] = gauss * h * math.exp(0.5 * k * vi) * _covariant_value(seed, dp, 0.1 * tol)
        return out

    # window: gaussian factor must beat the |F| ~ dp^-k growth toward 0
    v_max = 2.0 * math.asinh(math.sqrt(40.0 * alpha))
    for _ in range(8):
        v_max = 2.0 * math.asinh(math.sqrt(alpha * (40.0 + (abs(k) + 2.0) * v_max)))
    val, _ = adaptive_quad(integrand, -v_max, v_max, tol)
    return val


_CALIBRATION: dict[tuple, complex] = {}


def kernel_oracle(
    seed: HoloSeed,
    alpha: float,
    delta: float,
    gh_order: int = 48,
    tol: float = 1e-9,
    normalization: str = "unit",
) -> EvalResult:
    """Deformed value through the invariant-kernel representation.

    The overall constant of the kernel transform (a function of alpha and
    the weight only) is fixed once against the series on a single-term
    seed and reused; agreement on every other seed then probes the
    delta-dependence of the transform.
    """
    if seed.delta_min <= 0.0:
        raise DomainError("kernel oracle requires a seed with strictly positive exponents")
    delta = float(delta)
    if delta <= 0.0:
        raise DomainError("kernel oracle is defined for real positive delta")
    k = seed.weight
    key = (round(k, 12), round(alpha, 12), gh_order)
    cal = _CALIBRATION.get(key)
    if cal is None:
        ref = single_term_seed(1.0, 1.0, weight=k)
        series = deform_eval(ref, alpha, 1.0, tol=1e-14, normalization="raw").value
        integral = _kernel_integral(ref, alpha, 1.0, gh_order, min(tol, 1e-10))
        cal = _CALIBRATION[key] = series / integral
    value = cal * _kernel_integral(seed, alpha, delta, gh_order, tol)
    if normalization == "unit":
        value *= 2.0 ** (k - 1.0)
    return EvalResult(value, abs(value) * tol, 0)


# ---------------------------------------------------------------------------
# endpoint-singularity scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SingularityFit:
    exponent: float
    delta_c: float
    deltas: tuple[float, ...]
    values: tuple[float, ...]


def hagedorn_scan(
    seed: HoloSeed,
    alpha: float,
    fit_window: tuple[float, float] | None = None,
    npoints: int = 9,
    tol: float = 1e-11,
) -> SingularityFit:
    """Fit the power-law divergence of the deformed series at the upper
    edge delta_c of the admissible window (expected exponent -1/2).

    ``fit_window`` gives the relative distances (delta_c - delta)/delta_c
    sampled, log-spaced.  The default window scales like alpha^2: the
    exponential factor exp(-(S-1)/(2 alpha)) contributes sqrt(g)/(4 alpha)
    to the local log-log slope, so isolating the -1/2 of the 1/S prefactor
    needs sqrt(g) << alpha.
    """
    dmin = seed.delta_min
    if dmin >= 0.0:
        raise DomainError(f"seed {seed.name} has lam_min >= 0: no endpoint singularity")
    lo, hi = admissible_domain(seed, alpha)
    if fit_window is None:
        g_hi = (0.02 * alpha) ** 2
        fit_window = (g_hi / 300.0, g_hi)
    g0, g1 = fit_window
    if not (0.0 < g0 < g1 < 1.0):
        raise ValueError("fit_window must satisfy 0 < g0 < g1 < 1")
    if g0 < 1e-11:
        raise ValueError("fit window too close to delta_c for double precision")
    gs = np.exp(np.linspace(math.log(g0), math.log(g1), npoints))
    deltas = hi * (1.0 - gs)
    if deltas.min() <= lo:
        raise DomainError("fit window leaves the admissible domain")
    vals = np.array(
        [abs(deform_eval(seed, alpha, float(d), tol).value) for d in deltas]
    )
    slope = np.polyfit(np.log(hi - deltas), np.log(vals), 1)[0]
    return SingularityFit(float(slope), hi, tuple(map(float, deltas)), tuple(map(float, vals)))
