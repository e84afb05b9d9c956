"""Numpy implementations of the hot term-evaluation kernels.

Every function here has a compiled twin in ``_core.pyx`` with identical
semantics; the package selects the backend at import time.  All square
roots and powers are principal-branch (numpy's convention).

Throughout, a deformed term on exponent ``lam`` at strength ``alpha`` uses

    S        = sqrt(1 + 8*pi*lam*alpha*delta)
    exponent = -(S - 1)/(2*alpha)  ==  -4*pi*lam*delta/(1 + S)
    prefactor = (1 + S)**(1 - k) / S

The rational form of the exponent is exact at ``alpha = 0`` (it degrades to
``-2*pi*lam*delta``) and avoids the 0/0 cancellation of the raw form.
"""

from __future__ import annotations

import numpy as np

FOUR_PI = 4.0 * np.pi
TWO_PI = 2.0 * np.pi

BACKEND = "python"


def deformed_holo_terms(lam, coef, alpha, delta, k):
    """Term values of the deformed holomorphic series (raw normalization)."""
    lam = np.asarray(lam, dtype=np.float64)
    coef = np.asarray(coef, dtype=np.complex128)
    s = np.sqrt(1.0 + (8.0 * np.pi * alpha) * lam * delta)
    one_plus = 1.0 + s
    pref = one_plus ** (1.0 - k) / s
    return coef * pref * np.exp(-FOUR_PI * lam * delta / one_plus)


def plain_holo_terms(lam, coef, delta):
    """Term values of the undeformed series ``coef * exp(-2*pi*lam*delta)``."""
    lam = np.asarray(lam, dtype=np.float64)
    coef = np.asarray(coef, dtype=np.complex128)
    return coef * np.exp(-TWO_PI * lam * delta)


def deformed_real_terms(lam, spin, coef, alpha, d1, d2, k, weighted):
    """Term values of the deformed real-analytic series.

    ``weighted`` applies the weight-k prefactor of the two-dimensional
    smearing, ((1+S)/2 + 2*pi*lam*alpha*d1)^((2-k)/2) / S, which keeps the
    |delta|^k inversion covariance exactly; the invariant variant (weight
    0, no prefactor) passes ``weighted=False``.
    """
    lam = np.asarray(lam, dtype=np.float64)
    spin = np.asarray(spin, dtype=np.float64)
    coef = np.asarray(coef, dtype=np.complex128)
    s = np.sqrt(1.0 + (8.0 * np.pi * alpha * d1) * lam + (16.0 * np.pi * np.pi * alpha * alpha * d1 * d1) * spin * spin)
    one_plus = 1.0 + s
    # rational exponent: -(4*pi*lam*d1 + 8*pi^2 p^2 alpha d1^2)/(1+S), exact at alpha=0
    expo = -(FOUR_PI * lam * d1 + 8.0 * np.pi * np.pi * alpha * d1 * d1 * spin * spin) / one_plus
    vals = coef * np.exp(expo + (TWO_PI * 1j * d2) * spin)
    if weighted:
        core = 0.5 * one_plus + (TWO_PI * alpha * d1) * lam
        vals = vals * core ** (0.5 * (2.0 - k)) / s
    return vals


def plain_real_terms(lam, spin, coef, d1, d2):
    lam = np.asarray(lam, dtype=np.float64)
    spin = np.asarray(spin, dtype=np.float64)
    coef = np.asarray(coef, dtype=np.complex128)
    return coef * np.exp(-TWO_PI * lam * d1 + (TWO_PI * 1j * d2) * spin)


def shifted_theta_terms(nu, alpha, delta, wexp):
    """Deformed theta terms on the shifted spectrum ``lam = nu^2 / 2``.

    Prefactor ``((1+S)/2)**wexp / S`` (unit normalization built in).
    """
    nu = np.asarray(nu, dtype=np.float64)
    lam = 0.5 * nu * nu
    s = np.sqrt(1.0 + (8.0 * np.pi * alpha) * lam * delta)
    one_plus = 1.0 + s
    pref = (0.5 * one_plus) ** wexp / s
    return pref * np.exp(-FOUR_PI * lam * delta / one_plus)


def real_grid_eval(lam, spin, coef, d1s, d2s):
    """Undeformed real series evaluated at paired points (d1s[i], d2s[i])."""
    lam = np.asarray(lam, dtype=np.float64)
    spin = np.asarray(spin, dtype=np.float64)
    coef = np.asarray(coef, dtype=np.complex128)
    d1s = np.asarray(d1s, dtype=np.float64)
    d2s = np.asarray(d2s, dtype=np.float64)
    out = np.empty(d1s.shape, dtype=np.complex128)
    # chunk over points to bound the (points x terms) temporary
    step = max(1, int(2_000_000 // max(1, lam.size)))
    for i in range(0, d1s.size, step):
        sl = slice(i, min(i + step, d1s.size))
        expo = (-TWO_PI) * np.outer(d1s[sl], lam) + (TWO_PI * 1j) * np.outer(d2s[sl], spin)
        out[sl] = np.exp(expo) @ coef
    return out


def eisenstein_real_grid(s, d1s, d2s, bound):
    """Real Eisenstein lattice sum at paired points, cutoff |m|,|n| <= bound."""
    d1s = np.asarray(d1s, dtype=np.float64)
    d2s = np.asarray(d2s, dtype=np.float64)
    rng = np.arange(-bound, bound + 1)
    m, n = np.meshgrid(rng, rng, indexing="ij")
    mask = (m != 0) | (n != 0)
    m = m[mask].astype(np.float64)
    n = n[mask].astype(np.float64)
    out = np.empty(d1s.shape, dtype=np.complex128)
    for i in range(d1s.size):
        q = (n - m * d2s[i]) ** 2 + (m * d1s[i]) ** 2
        out[i] = d1s[i] ** s * np.sum(q ** (-s))
    return out


def eisenstein_holo_sum(k, delta, bound):
    """Undeformed holomorphic Eisenstein sum over |m|,|n| <= bound."""
    rng = np.arange(-bound, bound + 1)
    m, n = np.meshgrid(rng, rng, indexing="ij")
    mask = (m != 0) | (n != 0)
    z = m[mask] + 1j * n[mask] * delta
    return np.sum(z ** (-float(k)))


def eisenstein_deformed_sum(k, alpha, delta, bound, t_nodes, t_weights):
    """Deformed holomorphic Eisenstein sum: per-point Gaussian average.

    Off-axis points (m*n != 0) are averaged over the Gauss-Hermite rule
    (t_nodes, t_weights) applied to

        (2*sqrt(alpha)*t*sqrt(-i*m*n*delta) + m + i*n*delta)**(-k) ;

    axis points contribute their undeformed value exactly.
    """
    rng = np.arange(-bound, bound + 1)
    m, n = np.meshgrid(rng, rng, indexing="ij")
    mask = (m != 0) | (n != 0)
    m = m[mask].astype(np.float64)
    n = n[mask].astype(np.float64)
    base = m + 1j * n * delta
    mn = m * n
    axis = mn == 0.0
    total = np.sum(base[axis] ** (-float(k)))
    mo = ~axis
    root = np.sqrt(-1j * mn[mo] * delta)
    shift = (2.0 * np.sqrt(alpha)) * np.outer(root, t_nodes)
    dens = (shift + base[mo][:, None]) ** (-float(k))
    total += np.sum(dens @ t_weights) / np.sqrt(np.pi)
    return total
