# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the fallback kernels (see fallback.py for the
formulas).  Semantics match the numpy implementations to rounding; the
parity suite compares both backends term by term.

The decisive win over numpy is the fused lattice-grid reduction, whose
inner loop stays in real arithmetic (integer powers by squaring; no
library complex division or cpow).  Elementwise term kernels are kept as
twins for parity but numpy's SIMD transcendentals usually win there; the
backend selector routes accordingly.
"""

import numpy as np

from libc.math cimport log, pow, sqrt

cdef extern from "complex.h" nogil:
    double complex csqrt(double complex)
    double complex cexp(double complex)
    double complex cpow(double complex, double complex)

cdef double PI = 3.141592653589793238462643383279502884
cdef double TWO_PI = 2.0 * PI
cdef double FOUR_PI = 4.0 * PI

BACKEND = "compiled"


cdef inline double complex cx(double re, double im) nogil:
    return re + 1j * im


cdef inline double complex cpow_real(double complex z, double w) nogil:
    """z**w for real w, principal branch."""
    if z.imag == 0.0 and z.real > 0.0:
        return cx(pow(z.real, w), 0.0)
    return cpow(z, cx(w, 0.0))


cdef inline double complex crecip(double complex z) nogil:
    """1/z by the conjugate trick (no library division helper)."""
    cdef double inv = 1.0 / (z.real * z.real + z.imag * z.imag)
    return cx(z.real * inv, -z.imag * inv)


cdef inline double complex ipow_recip(double complex z, int k) nogil:
    """z**(-k) for integer k >= 0 by repeated squaring of 1/z."""
    cdef double complex base = crecip(z)
    cdef double complex acc = cx(1.0, 0.0)
    cdef int e = k
    while e > 0:
        if e & 1:
            acc = acc * base
        base = base * base
        e >>= 1
    return acc


# ---------------------------------------------------------------------------
# elementwise term kernels
# ---------------------------------------------------------------------------

def deformed_holo_terms(object lam_o, object coef_o, double alpha, double complex delta, double k):
    lam_a = np.ascontiguousarray(lam_o, dtype=np.float64)
    coef_a = np.ascontiguousarray(coef_o, dtype=np.complex128)
    cdef double[::1] lam = lam_a
    cdef double complex[::1] coef = coef_a
    cdef Py_ssize_t n = lam.shape[0], i
    out_a = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_a
    cdef double complex s, one_plus
    with nogil:
        for i in range(n):
            s = csqrt(1.0 + (8.0 * PI * alpha) * lam[i] * delta)
            one_plus = 1.0 + s
            out[i] = coef[i] * cpow_real(one_plus, 1.0 - k) * crecip(s) \
                * cexp(-FOUR_PI * lam[i] * delta * crecip(one_plus))
    return out_a


def plain_holo_terms(object lam_o, object coef_o, double complex delta):
    lam_a = np.ascontiguousarray(lam_o, dtype=np.float64)
    coef_a = np.ascontiguousarray(coef_o, dtype=np.complex128)
    cdef double[::1] lam = lam_a
    cdef double complex[::1] coef = coef_a
    cdef Py_ssize_t n = lam.shape[0], i
    out_a = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_a
    with nogil:
        for i in range(n):
            out[i] = coef[i] * cexp(-TWO_PI * lam[i] * delta)
    return out_a


def deformed_real_terms(object lam_o, object spin_o, object coef_o, double alpha,
                        double d1, double d2, double k, bint weighted):
    lam_a = np.ascontiguousarray(lam_o, dtype=np.float64)
    spin_a = np.ascontiguousarray(spin_o, dtype=np.float64)
    coef_a = np.ascontiguousarray(coef_o, dtype=np.complex128)
    cdef double[::1] lam = lam_a
    cdef double[::1] spin = spin_a
    cdef double complex[::1] coef = coef_a
    cdef Py_ssize_t n = lam.shape[0], i
    out_a = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_a
    cdef double s, one_plus, core, expo
    cdef double complex val
    with nogil:
        for i in range(n):
            s = sqrt(1.0 + (8.0 * PI * alpha * d1) * lam[i]
                     + (16.0 * PI * PI * alpha * alpha * d1 * d1) * spin[i] * spin[i])
            one_plus = 1.0 + s
            expo = -(FOUR_PI * lam[i] * d1 + 8.0 * PI * PI * alpha * d1 * d1 * spin[i] * spin[i]) / one_plus
            val = coef[i] * cexp(cx(expo, TWO_PI * d2 * spin[i]))
            if weighted:
                core = 0.5 * one_plus + (TWO_PI * alpha * d1) * lam[i]
                val = val * (pow(core, 0.5 * (2.0 - k)) / s)
            out[i] = val
    return out_a


def plain_real_terms(object lam_o, object spin_o, object coef_o, double d1, double d2):
    lam_a = np.ascontiguousarray(lam_o, dtype=np.float64)
    spin_a = np.ascontiguousarray(spin_o, dtype=np.float64)
    coef_a = np.ascontiguousarray(coef_o, dtype=np.complex128)
    cdef double[::1] lam = lam_a
    cdef double[::1] spin = spin_a
    cdef double complex[::1] coef = coef_a
    cdef Py_ssize_t n = lam.shape[0], i
    out_a = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_a
    with nogil:
        for i in range(n):
            out[i] = coef[i] * cexp(cx(-TWO_PI * lam[i] * d1, TWO_PI * d2 * spin[i]))
    return out_a


def shifted_theta_terms(object nu_o, double alpha, double complex delta, double wexp):
    nu_a = np.ascontiguousarray(nu_o, dtype=np.float64)
    cdef double[::1] nu = nu_a
    cdef Py_ssize_t n = nu.shape[0], i
    out_a = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_a
    cdef double lam
    cdef double complex s, one_plus
    with nogil:
        for i in range(n):
            lam = 0.5 * nu[i] * nu[i]
            s = csqrt(1.0 + (8.0 * PI * alpha) * lam * delta)
            one_plus = 1.0 + s
            out[i] = cpow_real(0.5 * one_plus, wexp) * crecip(s) \
                * cexp(-FOUR_PI * lam * delta * crecip(one_plus))
    return out_a


# ---------------------------------------------------------------------------
# fused reductions (the hot loops)
# ---------------------------------------------------------------------------

def real_grid_eval(object lam_o, object spin_o, object coef_o, object d1_o, object d2_o):
    """Undeformed real series on paired points, fused over terms."""
    lam_a = np.ascontiguousarray(lam_o, dtype=np.float64)
    spin_a = np.ascontiguousarray(spin_o, dtype=np.float64)
    coef_a = np.ascontiguousarray(coef_o, dtype=np.complex128)
    d1_a = np.ascontiguousarray(d1_o, dtype=np.float64)
    d2_a = np.ascontiguousarray(d2_o, dtype=np.float64)
    cdef double[::1] lam = lam_a
    cdef double[::1] spin = spin_a
    cdef double complex[::1] coef = coef_a
    cdef double[::1] d1 = d1_a
    cdef double[::1] d2 = d2_a
    cdef Py_ssize_t npts = d1.shape[0], nterms = lam.shape[0], i, j
    out_a = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] out = out_a
    cdef double complex acc
    cdef double dd1, dd2
    with nogil:
        for i in range(npts):
            acc = cx(0.0, 0.0)
            dd1 = d1[i]
            dd2 = d2[i]
            for j in range(nterms):
                acc = acc + coef[j] * cexp(cx(-TWO_PI * lam[j] * dd1, TWO_PI * dd2 * spin[j]))
            out[i] = acc
    return out_a


def eisenstein_real_grid(double complex s, object d1_o, object d2_o, int bound):
    d1_a = np.ascontiguousarray(d1_o, dtype=np.float64)
    d2_a = np.ascontiguousarray(d2_o, dtype=np.float64)
    cdef double[::1] d1 = d1_a
    cdef double[::1] d2 = d2_a
    cdef Py_ssize_t npts = d1.shape[0], i
    cdef int m, n, e
    cdef bint s_int = (s.imag == 0.0) and s.real == <double>(<int>s.real) and s.real > 0
    cdef int si = <int>s.real if s_int else 0
    out_a = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] out = out_a
    cdef double complex acc
    cdef double q, racc, dd1, dd2, base, p
    with nogil:
        for i in range(npts):
            dd1 = d1[i]
            dd2 = d2[i]
            if s_int:
                racc = 0.0
                for m in range(-bound, bound + 1):
                    for n in range(-bound, bound + 1):
                        if m == 0 and n == 0:
                            continue
                        q = (n - m * dd2) * (n - m * dd2) + (m * dd1) * (m * dd1)
                        base = 1.0 / q
                        p = 1.0
                        e = si
                        while e > 0:
                            if e & 1:
                                p = p * base
                            base = base * base
                            e >>= 1
                        racc = racc + p
                acc = cx(racc, 0.0)
            else:
                acc = cx(0.0, 0.0)
                for m in range(-bound, bound + 1):
                    for n in range(-bound, bound + 1):
                        if m == 0 and n == 0:
                            continue
                        q = (n - m * dd2) * (n - m * dd2) + (m * dd1) * (m * dd1)
                        acc = acc + cexp(-s * log(q))
            out[i] = acc * cpow(cx(dd1, 0.0), s)
    return out_a


def eisenstein_holo_sum(double k, double complex delta, int bound):
    cdef int m, n
    cdef bint k_int = k == <double>(<int>k) and k > 0
    cdef int ki = <int>k if k_int else 0
    cdef double complex acc = cx(0.0, 0.0)
    with nogil:
        for m in range(-bound, bound + 1):
            for n in range(-bound, bound + 1):
                if m == 0 and n == 0:
                    continue
                if k_int:
                    acc = acc + ipow_recip(m + 1j * n * delta, ki)
                else:
                    acc = acc + cpow_real(m + 1j * n * delta, -k)
    return complex(acc)


def eisenstein_deformed_sum(double k, double alpha, double complex delta, int bound,
                            object t_o, object w_o):
    t_a = np.ascontiguousarray(t_o, dtype=np.float64)
    w_a = np.ascontiguousarray(w_o, dtype=np.float64)
    cdef double[::1] t = t_a
    cdef double[::1] w = w_a
    cdef Py_ssize_t order = t.shape[0], j
    cdef int m, n
    cdef bint k_int = k == <double>(<int>k) and k > 0
    cdef int ki = <int>k if k_int else 0
    cdef double complex acc = cx(0.0, 0.0), base, root, inner, shift
    cdef double sq = sqrt(alpha)
    cdef double inv_sqrt_pi = 1.0 / sqrt(PI)
    with nogil:
        for m in range(-bound, bound + 1):
            for n in range(-bound, bound + 1):
                if m == 0 and n == 0:
                    continue
                base = m + 1j * n * delta
                if m == 0 or n == 0:
                    acc = acc + (ipow_recip(base, ki) if k_int else cpow_real(base, -k))
                    continue
                root = csqrt(-1j * (m * n) * delta)
                shift = (2.0 * sq) * root
                inner = cx(0.0, 0.0)
                if k_int:
                    for j in range(order):
                        inner = inner + w[j] * ipow_recip(shift * t[j] + base, ki)
                else:
                    for j in range(order):
                        inner = inner + w[j] * cpow_real(shift * t[j] + base, -k)
                acc = acc + inner * inv_sqrt_pi
    return complex(acc)
