"""Mellin transforms of seeds, the universal deformation multiplier, and
the fixed-beta deformed Dirichlet series.

The transform R(s) = integral delta^(s-1) F(delta) d delta of a weight-k
covariant series with lam > 0 (constant term a0 split off) folds onto
(1, inf) as

    R(s) = integral_1^inf (d^(s-1) + d^(k-s-1)) F_+(d) dd
           + a0 (1/(s-k) - 1/s),

manifestly symmetric under s -> k-s.  The deformed transform divides by
the undeformed one termwise; that ratio is the entire multiplier

    I_a(k, s) = 2^(1-k) a^(-s) U(s, 2s - k + 1; 1/a)

(U = Tricomi confluent hypergeometric), equal to the absolutely convergent
double integral

    I_a(k, s) = int_0^inf u^(s-k/2-1) e^(-(u-1)^2/(4 a u))
                [ int (cosh(v/2)... ) ] du

evaluated here on the log axis u = e^v.  Both routes are implemented; the
closed form is preferred for small 1/a, quadrature elsewhere.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .deform_holo import deform_eval
from .errors import BranchCutError, DomainError, ToleranceError
from .numkit import adaptive_quad, gamma_complex, gauss_hermite, tricomi_u
from .spectra import HoloSeed, eval_seed, positive_part

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class MellinValue:
    s: complex
    value: complex
    route: str  # termwise | quadrature
    estimate: float


@dataclass(frozen=True)
class MultiplierValue:
    k: float
    s: complex
    alpha: float
    value: complex
    route: str  # closedform | quadrature
    estimate: float


@dataclass(frozen=True)
class DirichletValue:
    s: complex
    value: complex
    estimate: float
    terms_used: int


# ---------------------------------------------------------------------------
# Dirichlet-type sums with a power-law tail correction
# ---------------------------------------------------------------------------

def _dirichlet_sum(
    term_block: Callable[[int], np.ndarray],
    size: int | None,
    tol: float,
    max_terms: int,
) -> tuple[complex, float, int]:
    """Sum terms that decay like a power of the index.

    When the trailing terms have aligned phases, the tail is *corrected*
    by the midpoint integral of the fitted power law (Euler-Maclaurin at
    first order) and the correction's own error is the estimate; for
    oscillating tails only the absolute tail bound is used.
    """
    count = 256
    while True:
        if size is not None:
            count = min(count, size)
        t = np.asarray(term_block(count), dtype=np.complex128)
        n = t.size
        total = complex(np.sum(t))
        if size is not None and n >= size:
            return total, 0.0, n
        j = n - 1
        window = t[-8:]
        absw = np.abs(window)
        scale = max(abs(total), 1e-300)
        fitted = False
        if np.all(absw > 0.0):
            # two-parameter local model |t(x)| = C (x + x0)^(-g): the decrements
            # of log|t| over consecutive indices fix both g and the offset
            a1 = math.log(absw[-3] / absw[-2])
            a2 = math.log(absw[-2] / absw[-1])
            if a2 > 0.0 and a1 > a2:
                g = 1.0 / (1.0 / a2 - 1.0 / a1)
                xi = g / a2 + 0.5  # continuum position of index j
                if g > 1.05 and xi > 2.0:
                    fitted = True
                    drift = abs(np.angle(t[j] / t[j - 1]))
                    aligned = abs(np.sum(window)) > 0.99 * np.sum(absw)
                    if aligned:
                        half = xi + 0.5
                        corr = t[j] * (half / xi) ** (-g) * half / (g - 1.0)
                        err = abs(corr) * (
                            g * (g + 1.0) / (6.0 * xi * xi) + min(1.0, drift * half)
                        )
                        value = total + complex(corr)
                        if err <= tol * max(abs(value), 1e-300):
                            return value, float(err), n
                    else:
                        bound = abs(t[j]) * xi / (g - 1.0)
                        if bound <= tol * scale:
                            return total, float(bound), n
        if not fitted and n >= 64:
            # oscillating coefficients: smooth the magnitude over a window
            mags = np.abs(t)
            w_hi = float(np.max(mags[n - 16:]))
            w_lo = float(np.max(mags[n - 32: n - 16]))
            if 0.0 < w_hi < w_lo:
                g = math.log(w_lo / w_hi) / math.log(j / (j - 16.0))
                if g > 1.05:
                    bound = w_hi * j / (g - 1.0)
                    if bound <= tol * scale:
                        return total, float(bound), n
                    # predictive bail-out: index needed for the bound to pass
                    need = j * (bound / (tol * scale)) ** (1.0 / (g - 1.0))
                    if need > max_terms:
                        raise ToleranceError(
                            f"Dirichlet tail needs ~{need:.3g} terms for tol={tol}, "
                            f"beyond the budget {max_terms}",
                            value=total,
                            estimate=float(bound),
                        )
        if count >= max_terms:
            raise ToleranceError(
                f"Dirichlet tail did not reach tol={tol} within {max_terms} terms "
                "(s too close to the convergence boundary?)",
                value=total,
                estimate=float(abs(t[-1]) * n),
            )
        count = min(2 * count, max_terms)


def mellin_seed(seed: HoloSeed, s: complex, tol: float = 1e-10, max_terms: int = 400_000) -> MellinValue:
    """Termwise route: R(s) = Gamma(s) * sum a_j (2 pi lam_j)^(-s).

    All exponents must be strictly positive (split constants off first).
    """
    s = complex(s)
    lam0, _ = seed.terms(1)
    if lam0[0] <= 0.0:
        raise ValueError(
            f"seed {seed.name} has exponents <= 0; subtract them before the Mellin transform"
        )

    def block(count: int) -> np.ndarray:
        lam, coef = seed.terms(count)
        return coef * np.exp(-s * np.log(TWO_PI * lam))

    value, err, used = _dirichlet_sum(block, seed.size, tol, max_terms)
    g = gamma_complex(s)
    return MellinValue(s, g * value, "termwise", abs(g) * err)


def mellin_quad(seed: HoloSeed, s: complex, tol: float = 1e-10) -> MellinValue:
    """Folded quadrature route (needs an exactly covariant seed)."""
    s = complex(s)
    if not seed.s_covariant:
        raise ValueError(f"seed {seed.name} is not marked covariant; the fold is invalid")
    k = seed.weight
    sub, a0 = positive_part(seed)

    def integrand(xs: np.ndarray) -> np.ndarray:
        out = np.empty(xs.shape, dtype=np.complex128)
        for i, x in enumerate(xs):
            f = eval_seed(sub, complex(x), 0.01 * tol).value
            out[i] = (x ** (s - 1.0) + x ** (k - s - 1.0)) * f
        return out

    val, err = adaptive_quad(integrand, 1.0, math.inf, tol)
    if a0 != 0:
        val = val + a0 * (1.0 / (s - k) - 1.0 / s)
    return MellinValue(s, val, "quadrature", err)


# ---------------------------------------------------------------------------
# the universal multiplier
# ---------------------------------------------------------------------------

CLOSED_FORM_CAP = 60.0     # hard availability cap on 1/alpha for the series
CLOSED_FORM_AUTO = 20.0    # auto route switches to quadrature above this


def _multiplier_closed(k: float, s: complex, alpha: float, precision: str) -> tuple[complex, float]:
    z = 1.0 / alpha
    if z > CLOSED_FORM_CAP:
        raise ToleranceError(
            f"1/alpha = {z:.3g} beyond the closed-form cap {CLOSED_FORM_CAP:g}; "
            "use the quadrature route"
        )
    mode = "dd" if precision == "dd" else "auto"
    u, u_err = tricomi_u(s, 2.0 * s - k + 1.0, z, mode=mode)
    scale = 2.0 ** (1.0 - k) * cmath.exp(-s * math.log(alpha))
    return scale * u, abs(scale) * u_err


def _multiplier_quad(k: float, s: complex, alpha: float, gh_order: int, tol: float) -> tuple[complex, float]:
    # the inner integrand has an order-|1-k| pole off the contour; the
    # Gauss-Hermite order must grow with the weight
    gh_order = min(200, max(gh_order, 24 + 10 * int(abs(1.0 - k)) + 10))
    t, w = gauss_hermite(gh_order)
    sq = math.sqrt(alpha)
    pref = 1.0 / (TWO_PI * sq)
    exps = 1.0 - k
    sk = s - 0.5 * k

    def integrand(vs: np.ndarray) -> np.ndarray:
        out = np.empty(vs.shape, dtype=np.complex128)
        for i, v in enumerate(vs):
            ch = math.cosh(0.5 * v)
            inner = complex(np.dot(w, (ch + 1j * sq * t) ** exps)) * pref
            out[i] = cmath.exp(sk * v - math.sinh(0.5 * v) ** 2 / alpha) * inner
        return out

    v_max = 2.0 * math.asinh(math.sqrt(44.0 * alpha))
    for _ in range(8):
        v_max = 2.0 * math.asinh(math.sqrt(alpha * (44.0 + abs(sk.real) * v_max)))
    val, err = adaptive_quad(integrand, -v_max, v_max, tol)
    # the double integral carries the contour normalization (limit 1 as
    # alpha -> 0); rescale to the series normalization (limit 2^(1-k))
    scale = 2.0 ** (1.0 - k)
    return scale * val, scale * err


def multiplier(
    k: float,
    s: complex,
    alpha: float,
    route: str = "auto",
    gh_order: int = 48,
    tol: float = 1e-10,
    precision: str = "double",
) -> MultiplierValue:
    """The entire function I_a(k, s) with I_a(k,s) = I_a(k,k-s) and
    I_a -> 2^(1-k) as alpha -> 0; multiplies the undeformed Mellin
    transform to give the deformed one."""
    s = complex(s)
    if alpha < 0.0:
        raise DomainError("alpha must be >= 0")
    if alpha == 0.0:
        return MultiplierValue(k, s, alpha, 2.0 ** (1.0 - k), "closedform", 0.0)
    if route == "auto":
        route = "closedform" if 1.0 / alpha <= CLOSED_FORM_AUTO else "quadrature"
    if route == "closedform":
        val, err = _multiplier_closed(k, s, alpha, precision)
    elif route == "quadrature":
        val, err = _multiplier_quad(k, s, alpha, gh_order, tol)
    else:
        raise ValueError(f"unknown route {route!r}")
    return MultiplierValue(k, s, alpha, val, route, err)


def deformed_mellin(seed: HoloSeed, alpha: float, s: complex, tol: float = 1e-9) -> MellinValue:
    """Mellin transform of the raw-normalized deformed series, by the same
    fold; the constant term deforms to 2^(1-k) a0, which feeds the pole
    correction."""
    s = complex(s)
    if not seed.s_covariant:
        raise ValueError(f"seed {seed.name} is not marked covariant; the fold is invalid")
    k = seed.weight
    sub, a0 = positive_part(seed)
    if sub.delta_min <= 0.0:
        raise ValueError("deformed Mellin transform needs lam > 0 after the constant split")

    def integrand(xs: np.ndarray) -> np.ndarray:
        out = np.empty(xs.shape, dtype=np.complex128)
        for i, x in enumerate(xs):
            f = deform_eval(sub, alpha, complex(x), 0.01 * tol, normalization="raw").value
            out[i] = (x ** (s - 1.0) + x ** (k - s - 1.0)) * f
        return out

    val, err = adaptive_quad(integrand, 1.0, math.inf, tol)
    if a0 != 0:
        val = val + (2.0 ** (1.0 - k)) * a0 * (1.0 / (s - k) - 1.0 / s)
    return MellinValue(s, val, "quadrature", err)


def product_residual(
    seed: HoloSeed,
    alpha: float,
    s: complex,
    tol: float = 1e-9,
    route: str = "auto",
) -> dict:
    """Relative residual of R_a(s) = I_a(k, s) R_0(s) plus its pieces."""
    r0 = mellin_quad(seed, s, tol)
    ra = deformed_mellin(seed, alpha, s, tol)
    mult = multiplier(seed.weight, s, alpha, route=route, tol=tol)
    denom = max(abs(r0.value), 1e-300)
    return {
        "s": complex(s),
        "R0": r0.value,
        "Ralpha": ra.value,
        "I": mult.value,
        "residual": abs(ra.value - mult.value * r0.value) / denom,
    }


# ---------------------------------------------------------------------------
# fixed-beta Dirichlet series
# ---------------------------------------------------------------------------

def _beta_term_data(seed: HoloSeed, beta: complex, count: int, normalization: str = "raw"):
    lam, coef = seed.terms(count)
    w = 1.0 + 4.0 * beta * lam
    bad = (w.real <= 0.0) & (np.abs(w.imag) <= 1e-14 * np.maximum(1.0, np.abs(w.real)))
    if np.any(bad):
        j = int(np.flatnonzero(bad)[0])
        raise BranchCutError(f"beta-deformed exponent hits the cut at term {j}: 1+4*beta*lam = {w[j]}")
    root = np.sqrt(w.astype(np.complex128))
    lam_beta = 2.0 * lam / (1.0 + root)
    pref = (1.0 + root) ** (1.0 - seed.weight) / root
    if normalization == "unit":
        pref = pref * 2.0 ** (seed.weight - 1.0)
    return lam_beta, coef * pref


def dirichlet_beta(
    seed: HoloSeed,
    beta: complex,
    s: complex,
    max_terms: int = 400_000,
    tol: float = 1e-9,
    normalization: str = "raw",
) -> DirichletValue:
    """Deformed Dirichlet series at fixed beta:

        phi_b(s) = sum_j a_j^b (lam_{j,b})^(-s),

    with a_j^b the deformed coefficients and lam_b the deformed exponents.
    Direct summation with a power-law tail correction.  ``normalization``
    "raw" keeps the (1+S)^(1-k)/S prefactor as is (limit 2^(1-k) phi(s) as
    beta -> 0); "unit" rescales so the limit is phi(s) itself.
    """
    s = complex(s)
    beta = complex(beta)
    lam0, _ = seed.terms(1)
    if lam0[0] <= 0.0:
        raise ValueError("fixed-beta Dirichlet series needs lam > 0")

    def block(count: int) -> np.ndarray:
        lam_beta, coef = _beta_term_data(seed, beta, count, normalization)
        return coef * np.exp(-s * np.log(lam_beta))

    value, err, used = _dirichlet_sum(block, seed.size, tol, max_terms)
    return DirichletValue(s, value, err, used)


def beta_reflection_residual(seed: HoloSeed, beta: complex, s: complex, tol: float = 1e-8) -> float:
    """How badly the fixed-beta transform breaks s -> k-s reflection.

    Compares the true transform R_b(s) = Gamma(s) (2 pi)^(-s) phi_b(s)
    (termwise, exact for the fixed-beta series) against the would-be
    reflection-symmetric fold of the same function; the fold equals the
    transform only when the weight-k functional equation holds, so the
    residual vanishes at beta -> 0 and measures the broken symmetry for
    beta > 0.
    """
    s = complex(s)
    sub, a0 = positive_part(seed)
    k = seed.weight
    phi = dirichlet_beta(sub, beta, s, tol=0.01 * tol)
    r_true = gamma_complex(s) * cmath.exp(-s * math.log(TWO_PI)) * phi.value

    lam_beta, coef_beta = _beta_term_data(sub, beta, 6000 if sub.size is None else sub.size)

    def f_beta(x: float) -> complex:
        return complex(np.sum(coef_beta * np.exp(-TWO_PI * lam_beta * x)))

    def integrand(xs: np.ndarray) -> np.ndarray:
        return np.array(
            [(x ** (s - 1.0) + x ** (k - s - 1.0)) * f_beta(float(x)) for x in xs],
            dtype=np.complex128,
        )

    r_fold, _ = adaptive_quad(integrand, 1.0, math.inf, tol)
    if a0 != 0:
        r_fold = r_fold + (2.0 ** (1.0 - k)) * a0 * (1.0 / (s - k) - 1.0 / s)
    return abs(r_true - r_fold) / max(abs(r_true), 1e-300)


# ---------------------------------------------------------------------------
# zero location on the critical line
# ---------------------------------------------------------------------------

def locate_critical_zero(
    seed: HoloSeed,
    t_lo: float = 6.8,
    t_hi: float = 7.3,
    tol_t: float = 1e-9,
    quad_tol: float = 1e-10,
) -> complex:
    """Bisect |R_0| through its sign change on the critical line
    Re s = k/2 (the folded transform is real there)."""
    k = seed.weight

    def f(t: float) -> float:
        return mellin_quad(seed, complex(0.5 * k, t), quad_tol).value.real

    f_lo, f_hi = f(t_lo), f(t_hi)
    if f_lo == 0.0:
        return complex(0.5 * k, t_lo)
    if f_lo * f_hi > 0.0:
        raise ValueError(f"no sign change of R0 on Re s = k/2 in t = [{t_lo}, {t_hi}]")
    while t_hi - t_lo > tol_t:
        mid = 0.5 * (t_lo + t_hi)
        fm = f(mid)
        if fm == 0.0:
            return complex(0.5 * k, mid)
        if f_lo * fm < 0.0:
            t_hi = mid
        else:
            t_lo, f_lo = mid, fm
    return complex(0.5 * k, 0.5 * (t_lo + t_hi))
