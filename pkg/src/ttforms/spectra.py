"""Seed (undeformed) forms.

A holomorphic seed is a series  sum_j a_j exp(-2 pi lam_j delta)  with a
strictly increasing exponent spectrum lam_j; a real seed is a Fourier sum
sum a exp(-2 pi lam d1 + 2 pi i p d2) with integer spins p and Hermitian
coefficients a(lam,-p) = conj(a(lam,p)).

Built-ins: theta3, eta-inverse, eta24, ising-Z (torus partition sum of the
three character squares), plus helpers to build Hermitian |G|^2 seeds and
to load finite seeds from JSON.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels as kernels
from .errors import DomainError, ToleranceError

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# modulus point and evaluation result
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModulusPoint:
    """A point delta = d1 + i*d2 in the right half-plane (d1 > 0)."""

    d1: float
    d2: float = 0.0

    def __post_init__(self) -> None:
        if not (self.d1 > 0.0 and math.isfinite(self.d1) and math.isfinite(self.d2)):
            raise DomainError(f"modulus point needs finite d1 > 0, got {self.d1}, {self.d2}")

    @property
    def delta(self) -> complex:
        return complex(self.d1, self.d2)

    @property
    def q(self) -> complex:
        return np.exp(-TWO_PI * self.delta)

    def inverse(self) -> "ModulusPoint":
        r2 = self.d1 * self.d1 + self.d2 * self.d2
        return ModulusPoint(self.d1 / r2, -self.d2 / r2)

    def t_image(self) -> "ModulusPoint":
        return ModulusPoint(self.d1, self.d2 + 1.0)


def as_delta(x) -> complex:
    if isinstance(x, ModulusPoint):
        return x.delta
    z = complex(x)
    if not z.real > 0.0:
        raise DomainError(f"Re delta must be positive, got {z}")
    return z


@dataclass(frozen=True)
class EvalResult:
    value: complex
    tail: float
    terms_used: int


# ---------------------------------------------------------------------------
# exact integer coefficient machinery
# ---------------------------------------------------------------------------

def partition_numbers(n: int) -> list[int]:
    """P(0) .. P(n) by the Euler pentagonal-number recurrence (exact)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p


def euler_product_coeffs(n: int) -> list[int]:
    """Coefficients of prod_{m>=1} (1 - q^m) up to q^n (pentagonal support)."""
    c = [0] * (n + 1)
    k = 0
    while True:
        g = k * (3 * k - 1) // 2
        gp = k * (3 * k + 1) // 2
        if g > n and gp > n:
            break
        if g <= n:
            c[g] += (-1) ** k
        if k > 0 and gp <= n:
            c[gp] += (-1) ** k
        k += 1
    return c


def _cube_coeffs(n: int) -> list[int]:
    """Coefficients of prod (1-q^m)^3 = sum (-1)^m (2m+1) q^{m(m+1)/2}."""
    c = [0] * (n + 1)
    m = 0
    while m * (m + 1) // 2 <= n:
        c[m * (m + 1) // 2] = (-1) ** m * (2 * m + 1)
        m += 1
    return c


def _poly_sq(a: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > n:
            continue
        if 2 * i <= n:
            out[2 * i] += ai * ai
        top = min(n - i, len(a) - 1)
        for j in range(i + 1, top + 1):
            aj = a[j]
            if aj:
                out[i + j] += 2 * ai * aj
    return out


_ETA24_CACHE: dict[int, list[int]] = {}


def eta24_coeffs(n: int) -> list[int]:
    """Coefficients of q * prod (1 - q^m)^24 for q^1 .. q^n (exact integers).

    Built as ((eta-cube)^2)^2)^2 with integer convolutions.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    plain = _ETA24_CACHE.get(n)
    if plain is None:
        base = _cube_coeffs(n - 1)
        p6 = _poly_sq(base, n - 1)
        p12 = _poly_sq(p6, n - 1)
        plain = _poly_sq(p12, n - 1)
        _ETA24_CACHE[n] = plain
    return [plain[m - 1] for m in range(1, n + 1)]


# ---------------------------------------------------------------------------
# seed classes
# ---------------------------------------------------------------------------

class HoloSeed:
    """Holomorphic seed with a lazily extended term stream."""

    kind = "holo"

    def __init__(
        self,
        name: str,
        weight: float,
        block_fn: Callable[[int], tuple[np.ndarray, np.ndarray]],
        size: int | None = None,
        s_covariant: bool = False,
        truncated: bool = False,
    ):
        self.name = name
        self.weight = float(weight)
        self._block_fn = block_fn
        self.size = size  # None means unbounded stream
        self.s_covariant = s_covariant
        self.truncated = truncated
        self._lam = np.empty(0)
        self._coef = np.empty(0, dtype=np.complex128)

    def terms(self, count: int) -> tuple[np.ndarray, np.ndarray]:
        """First ``count`` terms (or all, for a shorter finite seed)."""
        if self.size is not None:
            count = min(count, self.size)
        if count > self._lam.size:
            lam, coef = self._block_fn(count)
            if np.any(np.diff(lam) <= 0):
                raise ValueError(f"seed {self.name}: exponents must increase strictly")
            self._lam = np.asarray(lam, dtype=np.float64)
            self._coef = np.asarray(coef, dtype=np.complex128)
        return self._lam[:count], self._coef[:count]

    @property
    def delta_min(self) -> float:
        lam, _ = self.terms(1)
        return float(lam[0])

    def constant_coef(self) -> complex:
        """Coefficient of the lam = 0 term (0 if absent)."""
        lam, coef = self.terms(4)
        idx = np.flatnonzero(np.abs(lam) < 1e-14)
        return complex(coef[idx[0]]) if idx.size else 0.0 + 0.0j


class RealSeed:
    """Real-analytic seed: finite list of (lam, spin, coef) with p integer."""

    kind = "real"

    def __init__(self, name, weight, lam, spin, coef, s_covariant=False, truncated=False):
        self.name = name
        self.weight = float(weight)
        order = np.lexsort((np.asarray(spin), np.asarray(lam)))
        self._lam = np.asarray(lam, dtype=np.float64)[order]
        self._spin = np.asarray(spin, dtype=np.float64)[order]
        self._coef = np.asarray(coef, dtype=np.complex128)[order]
        self.size = self._lam.size
        self.s_covariant = s_covariant
        self.truncated = truncated
        if np.any(np.abs(self._spin - np.round(self._spin)) > 1e-9):
            raise ValueError(f"seed {name}: spins must be integers")
        self._check_hermitian()

    def _check_hermitian(self) -> None:
        index = {}
        for i in range(self.size):
            index[(round(self._lam[i] * 1e10), int(round(self._spin[i])))] = self._coef[i]
        for (lam_key, p), a in index.items():
            partner = index.get((lam_key, -p))
            if partner is None or abs(np.conj(partner) - a) > 1e-9 * max(1.0, abs(a)):
                raise ValueError(
                    f"seed {self.name}: Hermitian symmetry a(lam,-p) = conj a(lam,p) "
                    f"violated at lam key {lam_key}, p={p}"
                )

    def terms(self, count: int | None = None):
        if count is None or count >= self.size:
            return self._lam, self._spin, self._coef
        return self._lam[:count], self._spin[:count], self._coef[:count]

    @property
    def delta_min(self) -> float:
        return float(self._lam[0])


# ---------------------------------------------------------------------------
# built-in seeds
# ---------------------------------------------------------------------------

def _theta3_block(count: int):
    j = np.arange(count, dtype=np.float64)
    coef = np.full(count, 2.0, dtype=np.complex128)
    coef[0] = 1.0
    return 0.5 * j * j, coef


def _eta_inverse_block(count: int):
    p = partition_numbers(count - 1)
    j = np.arange(count, dtype=np.float64)
    return j - 1.0 / 24.0, np.array(p, dtype=np.complex128)


def _eta24_block(count: int):
    # generate in power-of-two chunks so repeated extensions reuse the cache
    n = 64
    while n < count:
        n *= 2
    tau = eta24_coeffs(n)[:count]
    j = np.arange(count, dtype=np.float64)
    return j + 1.0, np.array([float(t) for t in tau], dtype=np.complex128)


def eta_seed() -> HoloSeed:
    """Dedekind eta as a sparse seed: exponents k(3k-1)/2 + 1/24, signs +-1."""

    def block(count: int):
        exps: list[float] = []
        coefs: list[float] = []
        k = 0
        while len(exps) < count + 1:
            for kk in [0] if k == 0 else [k, -k]:
                g = kk * (3 * kk - 1) // 2
                exps.append(g + 1.0 / 24.0)
                coefs.append((-1.0) ** abs(kk))
            k += 1
        order = np.argsort(exps)
        return np.array(exps)[order][:count], np.array(coefs, dtype=np.complex128)[order][:count]

    return HoloSeed("eta", 0.5, block, s_covariant=True)


def _ising_character_data(order: int):
    """q-expansions of the three Ising characters on a q^(1/2) grid.

    Returns a list of (base_exponent, step, coeff_list) triples; exponents
    of character c are base + step * index over nonzero coefficients.
    """
    n_half = 2 * order  # degree in v = q^(1/2)
    plus = [0] * (n_half + 1)
    minus = [0] * (n_half + 1)
    plus[0] = minus[0] = 1
    m = 1
    while 2 * m - 1 <= n_half:
        d = 2 * m - 1
        for arr, sgn in ((plus, 1), (minus, -1)):
            for i in range(n_half - d, -1, -1):
                if arr[i]:
                    arr[i + d] += sgn * arr[i]
        m += 1
    even = [(plus[i] + minus[i]) // 2 for i in range(0, n_half + 1)]
    odd = [(plus[i] - minus[i]) // 2 for i in range(0, n_half + 1)]
    ramond = [0] * (order + 1)
    ramond[0] = 1
    for d in range(1, order + 1):
        for i in range(order - d, -1, -1):
            if ramond[i]:
                ramond[i + d] += ramond[i]
    # chi_0: v^even part, base -1/48; chi_{1/2}: v^odd part, base -1/48;
    # chi_{1/16}: integer grid, base 1/24.
    return [
        (-1.0 / 48.0, 0.5, even),
        (-1.0 / 48.0, 0.5, odd),
        (1.0 / 24.0, 1.0, ramond),
    ]


def ising_seed(order: int = 64) -> RealSeed:
    """Modular-invariant torus partition sum |chi_0|^2+|chi_half|^2+|chi_16|^2.

    Exponent ladders are truncated at lam <= order; spins are exact
    integers so the T identity holds termwise.
    """
    agg: dict[tuple[int, int], float] = {}
    for base, step, coeffs in _ising_character_data(order):
        support = [(base + step * i, c) for i, c in enumerate(coeffs) if c != 0]
        for e1, c1 in support:
            for e2, c2 in support:
                lam = e1 + e2
                if lam > order:
                    continue
                p = e1 - e2
                key = (round(lam * 48), int(round(p)))
                agg[key] = agg.get(key, 0.0) + float(c1 * c2)
    keys = sorted(agg)
    lam = np.array([k[0] / 48.0 for k in keys])
    spin = np.array([float(k[1]) for k in keys])
    coef = np.array([agg[k] for k in keys], dtype=np.complex128)
    return RealSeed("ising-Z", 0.0, lam, spin, coef, s_covariant=True, truncated=True)


def hermitian_square_seed(g: HoloSeed, order: float = 40.0, name: str | None = None) -> RealSeed:
    """The real form |G|^2 of a holomorphic seed G with integer-spaced
    exponents: terms (lam_i + lam_j, lam_i - lam_j, a_i conj(a_j)),
    weight twice the weight of G, truncated at lam <= order."""
    count = 16
    while True:
        lam_g, coef_g = g.terms(count)
        if (g.size is not None and lam_g.size >= g.size) or lam_g[-1] > order:
            break
        count *= 2
    keep = lam_g <= order
    lam_g, coef_g = lam_g[keep], coef_g[keep]
    spacing = lam_g - lam_g[0]
    if np.any(np.abs(spacing - np.round(spacing)) > 1e-9):
        raise ValueError("hermitian_square_seed needs integer-spaced exponents")
    lam = (lam_g[:, None] + lam_g[None, :]).ravel()
    spin = (lam_g[:, None] - lam_g[None, :]).ravel()
    coef = (coef_g[:, None] * np.conj(coef_g[None, :])).ravel()
    keep = lam <= order
    return RealSeed(
        name or f"abs2({g.name})",
        2.0 * g.weight,
        lam[keep],
        np.round(spin[keep]),
        coef[keep],
        s_covariant=g.s_covariant,
        truncated=True,
    )


_BUILTIN_NAMES = ("theta3", "eta-inverse", "eta24", "ising-Z")


def builtin_seed(name: str, order: int = 64):
    """Built-in seeds by name: theta3, eta-inverse, eta24, ising-Z."""
    if name == "theta3":
        return HoloSeed("theta3", 0.5, _theta3_block, s_covariant=True)
    if name == "eta-inverse":
        return HoloSeed("eta-inverse", -0.5, _eta_inverse_block, s_covariant=True)
    if name == "eta24":
        return HoloSeed("eta24", 12.0, _eta24_block, s_covariant=True)
    if name == "ising-Z":
        return ising_seed(order)
    raise ValueError(f"unknown seed {name!r}; built-ins are {', '.join(_BUILTIN_NAMES)}")


def positive_part(seed: HoloSeed) -> tuple[HoloSeed, complex]:
    """Split off the lam = 0 coefficient: returns (seed with lam > 0, a0).

    Terms with lam < 0 are rejected (no Dirichlet series exists for them).
    """
    lam, coef = seed.terms(4)
    if lam[0] < -1e-14:
        raise ValueError(f"seed {seed.name} has negative exponents; no Mellin data")
    a0 = seed.constant_coef()
    if abs(a0) == 0.0:
        return seed, 0.0 + 0.0j

    def block(count: int):
        full_lam, full_coef = seed.terms(count + 1)
        return full_lam[1:], full_coef[1:]

    sub = HoloSeed(
        seed.name + "+",
        seed.weight,
        block,
        size=None if seed.size is None else seed.size - 1,
        s_covariant=False,
        truncated=seed.truncated,
    )
    return sub, a0


# ---------------------------------------------------------------------------
# JSON seed interchange
# ---------------------------------------------------------------------------

def seed_from_json(text: str):
    """Load a finite seed from its JSON description.

    Holomorphic: {"kind": "holo", "name", "weight", "terms": [[lam, re, im], ...]}
    Real:        {"kind": "real", "name", "weight", "terms": [[lam, p, re, im], ...]}
    """
    doc = json.loads(text)
    kind = doc.get("kind", "holo")
    name = doc.get("name", "user-seed")
    weight = float(doc["weight"])
    terms = doc["terms"]
    if not terms:
        raise ValueError("seed needs at least one term")
    if kind == "holo":
        rows = sorted((float(t[0]), complex(float(t[1]), float(t[2]))) for t in terms)
        lam = np.array([r[0] for r in rows])
        coef = np.array([r[1] for r in rows], dtype=np.complex128)

        def block(count: int, lam=lam, coef=coef):
            return lam, coef

        return HoloSeed(name, weight, block, size=lam.size,
                        s_covariant=bool(doc.get("s_covariant", False)))
    if kind == "real":
        lam = np.array([float(t[0]) for t in terms])
        spin = np.array([float(t[1]) for t in terms])
        coef = np.array([complex(float(t[2]), float(t[3])) for t in terms], dtype=np.complex128)
        return RealSeed(name, weight, lam, spin, coef,
                        s_covariant=bool(doc.get("s_covariant", False)))
    raise ValueError(f"unknown seed kind {kind!r}")


def single_term_seed(lam: float, coef: complex = 1.0, weight: float = 0.0) -> HoloSeed:
    arr_l = np.array([float(lam)])
    arr_c = np.array([coef], dtype=np.complex128)

    def block(count: int):
        return arr_l, arr_c

    return HoloSeed(f"single(lam={lam:g})", weight, block, size=1)


# ---------------------------------------------------------------------------
# series summation with tail control
# ---------------------------------------------------------------------------

def sum_series(
    term_fn: Callable[[int], np.ndarray],
    seed_size: int | None,
    tol: float,
    max_terms: int = 300_000,
    truncated_seed: bool = False,
) -> EvalResult:
    """Sum terms produced in blocks by ``term_fn(count)`` until the
    exponential-tail bound drops below ``tol`` relative to the partial sum.

    The bound at cut J uses the geometric continuation of the observed
    decay: |t_J| * r / (1 - r) with r the 4-step geometric-mean ratio.
    """
    count = 64
    while True:
        if seed_size is not None:
            count = min(count, seed_size)
        vals = np.asarray(term_fn(count), dtype=np.complex128)
        absv = np.abs(vals)
        partial = np.cumsum(vals)
        scale = np.maximum.accumulate(np.abs(partial))
        n = vals.size
        for j in range(8, n):
            w = absv[j]
            if w == 0.0:  # underflow: the exponential tail is numerically gone
                value = complex(partial[j])
                return EvalResult(value, 0.0, j + 1)
            w_prev = absv[j - 4]
            if w_prev <= 0.0 or w >= w_prev:
                continue
            r = (w / w_prev) ** 0.25
            if r >= 0.9999:  # stagnation: too close to call convergent
                continue
            bound = w * r / (1.0 - r)
            if bound <= tol * max(scale[j], 1e-300):
                value = complex(partial[j])
                return EvalResult(value, float(bound), j + 1)
        if seed_size is not None and n >= seed_size:
            value = complex(partial[-1])
            if truncated_seed and n >= 8 and absv[-5] > 0 and absv[-1] < absv[-5]:
                r = (absv[-1] / absv[-5]) ** 0.25
                tail = absv[-1] * r / (1.0 - r) if r < 0.999 else float("inf")
            else:
                tail = 0.0
            return EvalResult(value, float(tail), n)
        if count >= max_terms:
            raise ToleranceError(
                f"series tail bound did not reach tol={tol} within {max_terms} terms",
                value=complex(partial[-1]),
                estimate=float(absv[-1]),
            )
        count = min(2 * count, max_terms)


def real_series_sum(vals: np.ndarray, lam: np.ndarray, truncated: bool) -> EvalResult:
    """Sum a finite real-seed term array completely.

    Spin ladders share exponents, so per-term stop rules misread the decay;
    the seeds are finite and vectorized, summing everything is cheap.  The
    tail estimate for a truncated seed extrapolates the decay of the last
    two exponent ladders.
    """
    value = complex(np.sum(vals))
    tail = 0.0
    if truncated and lam.size >= 2:
        keys = np.round(lam * 48.0).astype(np.int64)
        absv = np.abs(vals)
        last = absv[keys == keys[-1]].sum()
        prev_keys = keys[keys < keys[-1]]
        if prev_keys.size:
            gap = (keys[-1] - prev_keys[-1]) / 48.0
            prev = absv[keys == prev_keys[-1]].sum()
            if prev > 0.0 and last < prev:
                r = (last / prev) ** (1.0 / gap)
                tail = last * r / (1.0 - r) if r < 0.999 else float("inf")
            elif last > 0.0:
                tail = float("inf")
    return EvalResult(value, float(tail), int(vals.size))


def eval_seed(seed, delta, tol: float = 1e-12, max_terms: int = 300_000) -> EvalResult:
    """Evaluate an undeformed seed at delta (holo) or d1+i*d2 (real)."""
    z = as_delta(delta)
    if seed.kind == "holo":
        def term_fn(count: int):
            lam, coef = seed.terms(count)
            return kernels.plain_holo_terms(lam, coef, z)

        return sum_series(term_fn, seed.size, tol, max_terms, seed.truncated)

    lam, spin, coef = seed.terms()
    vals = kernels.plain_real_terms(lam, spin, coef, z.real, z.imag)
    return real_series_sum(np.asarray(vals), lam, seed.truncated)


def seed_grid_eval(seed: RealSeed, d1s, d2s) -> np.ndarray:
    """Undeformed real seed on paired point arrays (vectorized)."""
    lam, spin, coef = seed.terms()
    return kernels.real_grid_eval(lam, spin, coef, np.asarray(d1s, float), np.asarray(d2s, float))
