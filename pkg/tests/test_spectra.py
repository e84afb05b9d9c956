"""Seed-layer tests: exact coefficients against brute-force oracles,
built-in covariance, tail soundness, JSON interchange."""

import json
import math

import numpy as np
import pytest

from ttforms import spectra
from ttforms.errors import DomainError


def brute_force_partitions(n: int) -> int:
    """Count partitions by direct enumeration (independent of the
    pentagonal recurrence)."""

    def count(remaining: int, largest: int) -> int:
        if remaining == 0:
            return 1
        return sum(count(remaining - k, k) for k in range(min(remaining, largest), 0, -1))

    return count(n, n)


class TestPartitionNumbers:
    def test_p0(self):
        assert spectra.partition_numbers(0) == [1]

    def test_known_small(self):
        p = spectra.partition_numbers(10)
        assert p[5] == 7
        assert p[10] == 42

    def test_against_enumeration(self):
        p = spectra.partition_numbers(30)
        for n in range(31):
            assert p[n] == brute_force_partitions(n), n

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            spectra.partition_numbers(-1)


class TestEta24Coeffs:
    def test_leading(self):
        assert spectra.eta24_coeffs(1) == [1]

    def test_against_direct_expansion(self):
        # oracle: multiply out prod_{m<=4} (1-q^m)^24 directly
        order = 4
        poly = [1] + [0] * order
        for m in range(1, order + 1):
            for _ in range(24):
                for i in range(order, m - 1, -1):
                    poly[i] -= poly[i - m]
        got = spectra.eta24_coeffs(order + 1)
        assert got == [poly[i] for i in range(order + 1)]

    def test_known_values(self):
        # tau(2) = -24, tau(3) = 252
        assert spectra.eta24_coeffs(3) == [1, -24, 252]


class TestBuiltinSeeds:
    def test_theta3_first_term(self):
        seed = spectra.builtin_seed("theta3")
        lam, coef = seed.terms(3)
        assert lam[0] == 0.0 and coef[0] == 1.0
        assert lam[1] == 0.5 and coef[1] == 2.0

    def test_eta_inverse_first_term(self):
        seed = spectra.builtin_seed("eta-inverse")
        lam, coef = seed.terms(2)
        assert abs(lam[0] + 1.0 / 24.0) < 1e-15
        assert coef[0] == 1.0

    def test_eta24_spectrum(self):
        seed = spectra.builtin_seed("eta24")
        lam, coef = seed.terms(3)
        assert lam[0] == 1.0 and coef[0] == 1.0 and coef[1] == -24.0

    def test_ising_hermitian_pairs(self):
        seed = spectra.builtin_seed("ising-Z", order=24)
        lam, spin, coef = seed.terms()
        table = {(round(l * 48), int(p)): c for l, p, c in zip(lam, spin, coef)}
        for (lk, p), c in table.items():
            assert (lk, -p) in table
            assert abs(np.conj(table[(lk, -p)]) - c) < 1e-12

    def test_ising_ground_term(self):
        seed = spectra.builtin_seed("ising-Z", order=24)
        lam, spin, coef = seed.terms()
        assert abs(lam[0] + 1.0 / 24.0) < 1e-12
        assert spin[0] == 0.0 and abs(coef[0] - 1.0) < 1e-12

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown seed"):
            spectra.builtin_seed("j-function")


class TestEvalSeed:
    def test_theta3_at_one(self):
        # oracle: 4 explicit terms suffice at delta = 1
        expected = sum(
            (1.0 if n == 0 else 2.0) * math.exp(-math.pi * n * n) for n in range(4)
        )
        res = spectra.eval_seed(spectra.builtin_seed("theta3"), 1.0, 1e-11)
        assert abs(res.value - expected) < 1e-9
        assert abs(res.value - 1.0864348112) < 1e-9

    def test_theta3_inversion(self):
        seed = spectra.builtin_seed("theta3")
        d = 0.7
        f = spectra.eval_seed(seed, d, 1e-14).value
        fi = spectra.eval_seed(seed, 1.0 / d, 1e-14).value
        assert abs(fi - d ** 0.5 * f) < 1e-12

    def test_eta24_covariance(self):
        seed = spectra.builtin_seed("eta24")
        f2 = spectra.eval_seed(seed, 2.0, 1e-14).value
        f_half = spectra.eval_seed(seed, 0.5, 1e-14).value
        assert abs(f_half - 2.0 ** 12 * f2) / abs(f_half) < 1e-10

    @pytest.mark.parametrize("name,k", [("theta3", 0.5), ("eta-inverse", -0.5), ("eta24", 12.0)])
    def test_covariance_grid(self, name, k):
        seed = spectra.builtin_seed(name)
        for d1 in np.linspace(0.5, 2.0, 5):
            for d2 in (0.0, 0.4):
                z = complex(d1, d2)
                f = spectra.eval_seed(seed, z, 1e-13).value
                fi = spectra.eval_seed(seed, 1.0 / z, 1e-13).value
                scale = max(abs(fi), abs(z ** k * f))
                assert abs(fi - z ** k * f) / scale < 1e-9

    def test_ising_invariance(self):
        seed = spectra.builtin_seed("ising-Z")
        for z in (1.0 + 0.3j, 0.8 - 0.25j, 1.4 + 0.1j):
            f = spectra.eval_seed(seed, z, 1e-13).value
            fi = spectra.eval_seed(seed, 1.0 / z, 1e-13).value
            ft = spectra.eval_seed(seed, z + 1j, 1e-13).value
            assert abs(fi - f) / abs(f) < 1e-8
            assert abs(ft - f) / abs(f) < 1e-8
            assert abs(f.imag) < 1e-12 * abs(f)

    def test_tail_estimate_sound(self):
        seed = spectra.builtin_seed("eta24")
        z = 0.6 + 0.1j
        coarse = spectra.eval_seed(seed, z, 1e-6)
        fine = spectra.eval_seed(seed, z, 1e-14)
        assert abs(coarse.value - fine.value) <= max(coarse.tail, 1e-15)

    def test_modulus_guard(self):
        with pytest.raises(DomainError):
            spectra.eval_seed(spectra.builtin_seed("theta3"), -1.0)


class TestModulusPoint:
    def test_images(self):
        p = spectra.ModulusPoint(2.0, 1.0)
        inv = p.inverse()
        assert abs(inv.delta - 1.0 / p.delta) < 1e-15
        assert p.t_image().delta == p.delta + 1j

    def test_q_value(self):
        p = spectra.ModulusPoint(1.0)
        assert abs(p.q - math.exp(-2 * math.pi)) < 1e-15

    def test_half_plane_guard(self):
        with pytest.raises(DomainError):
            spectra.ModulusPoint(0.0, 1.0)


class TestDerivedSeeds:
    def test_positive_part_splits_constant(self):
        sub, a0 = spectra.positive_part(spectra.builtin_seed("theta3"))
        assert a0 == 1.0
        lam, _ = sub.terms(2)
        assert lam[0] == 0.5

    def test_positive_part_rejects_negative(self):
        with pytest.raises(ValueError):
            spectra.positive_part(spectra.builtin_seed("eta-inverse"))

    def test_eta_seed_covariance(self):
        seed = spectra.eta_seed()
        f = spectra.eval_seed(seed, 1.3, 1e-14).value
        fi = spectra.eval_seed(seed, 1.0 / 1.3, 1e-14).value
        assert abs(fi - 1.3 ** 0.5 * f) / abs(f) < 1e-12

    def test_hermitian_square_matches_modulus_squared(self):
        eta = spectra.eta_seed()
        sq = spectra.hermitian_square_seed(eta, order=30)
        assert sq.weight == 1.0
        z = 1.1 + 0.37j
        g = spectra.eval_seed(eta, z, 1e-14).value
        val = spectra.eval_seed(sq, z, 1e-14).value
        assert abs(val - abs(g) ** 2) < 1e-12

    def test_hermitian_square_needs_integer_spacing(self):
        with pytest.raises(ValueError, match="integer-spaced"):
            spectra.hermitian_square_seed(spectra.builtin_seed("theta3"), order=10)


class TestJsonSeeds:
    def test_holo_roundtrip(self):
        doc = {
            "kind": "holo",
            "name": "toy",
            "weight": 2.0,
            "terms": [[0.5, 1.0, 0.0], [1.5, -2.0, 0.5]],
        }
        seed = spectra.seed_from_json(json.dumps(doc))
        lam, coef = seed.terms(10)
        assert list(lam) == [0.5, 1.5]
        assert coef[1] == -2.0 + 0.5j
        val = spectra.eval_seed(seed, 1.0, 1e-14).value
        expected = math.exp(-math.pi) + (-2.0 + 0.5j) * math.exp(-3.0 * math.pi)
        assert abs(val - expected) < 1e-14

    def test_real_requires_hermitian(self):
        doc = {
            "kind": "real",
            "name": "bad",
            "weight": 0.0,
            "terms": [[1.0, 1, 1.0, 0.5]],
        }
        with pytest.raises(ValueError, match="Hermitian"):
            spectra.seed_from_json(json.dumps(doc))

    def test_real_valid(self):
        doc = {
            "kind": "real",
            "name": "ok",
            "weight": 0.0,
            "terms": [[1.0, 1, 1.0, 0.5], [1.0, -1, 1.0, -0.5], [0.5, 0, 2.0, 0.0]],
        }
        seed = spectra.seed_from_json(json.dumps(doc))
        v = spectra.eval_seed(seed, 1.0 + 0.3j, 1e-14).value
        assert abs(v.imag) < 1e-14
