"""Theta kernel: series oracles, symmetry laws, quasi-periodicity, cubing."""

import cmath
import math
import random

import pytest

from icelab import (EllipticParams, NomeDomainError, PoleError, SeriesConfig,
                    SeriesTruncationError, cubic_factor_D, quasi_period_factor,
                    theta1, theta1_prime_at_zero, theta1_reduced, theta4, zeta,
                    zeta_log_table)

PI = math.pi


# --- independent oracle: direct 20-term summation of the defining series ---

def oracle_theta1(phi, p, terms=20):
    return sum(2 * (-1) ** k * p ** ((k + 0.5) ** 2) * math.sin((2 * k + 1) * phi)
               for k in range(terms))


def oracle_theta4(phi, p, terms=20):
    return 1 + sum(2 * (-1) ** k * p ** (k * k) * math.cos(2 * k * phi)
                   for k in range(1, terms))


def oracle_theta1_prime(p, terms=20):
    return sum(2 * (-1) ** k * (2 * k + 1) * p ** ((k + 0.5) ** 2) for k in range(terms))


# values frozen from the oracle above
GOLDEN_THETA1_HALFPI_P01 = 1.1359306015682802
GOLDEN_THETA1_07_P025 = 0.8346427097673987
GOLDEN_THETA4_0_P01 = 0.8001999980000002
GOLDEN_THETA4_07_P025 = 0.9076590572677845
GOLDEN_THETA1PRIME_P01 = 1.0909477942746564
GOLDEN_ZETA0_L03_P01 = 1.66687846137952
GOLDEN_D_P01 = 0.97000596999994
GOLDEN_D_P02 = 0.8803763190185327


def params(p, lam=0.0):
    return EllipticParams.from_nome(p, lam=lam)


class TestSeriesValues:
    def test_theta1_golden(self):
        assert theta1(PI / 2, params(0.1)) == pytest.approx(GOLDEN_THETA1_HALFPI_P01, rel=1e-14)
        assert theta1(0.7, params(0.25)) == pytest.approx(GOLDEN_THETA1_07_P025, rel=1e-14)
        # and against a fresh oracle run
        assert theta1(PI / 2, params(0.1)) == pytest.approx(oracle_theta1(PI / 2, 0.1), rel=1e-14)

    def test_theta4_golden(self):
        assert theta4(0.0, params(0.1)) == pytest.approx(GOLDEN_THETA4_0_P01, rel=1e-14)
        assert theta4(0.7, params(0.25)) == pytest.approx(GOLDEN_THETA4_07_P025, rel=1e-14)
        assert theta4(0.7, params(0.25)) == pytest.approx(oracle_theta4(0.7, 0.25), rel=1e-14)

    def test_theta1_prime_golden(self):
        assert theta1_prime_at_zero(params(0.1)) == pytest.approx(GOLDEN_THETA1PRIME_P01, rel=1e-14)
        assert theta1_prime_at_zero(params(0.1)) == pytest.approx(oracle_theta1_prime(0.1), rel=1e-14)

    def test_theta1_odd_at_zero(self):
        for p in (0.0, 0.1, 0.4):
            assert theta1(0.0, params(p)) == 0

    def test_theta4_at_p_zero(self):
        for phi in (0.0, 0.3, 2.1):
            assert theta4(phi, params(0.0)) == 1

    def test_theta1_prime_at_p_zero(self):
        assert theta1_prime_at_zero(params(0.0)) == 0

    def test_theta1_reduced_matches_ratio(self):
        # theta1(x)/theta1(y) equals the reduced-series ratio
        pr = params(0.23)
        x, y = 0.61, 1.13
        lhs = theta1(x, pr) / theta1(y, pr)
        rhs = theta1_reduced(x, pr) / theta1_reduced(y, pr)
        assert lhs == pytest.approx(rhs, rel=1e-14)
        assert theta1_reduced(0.7, params(0.0)) == pytest.approx(2 * math.sin(0.7))


class TestDomainErrors:
    def test_nome_outside_disk(self):
        with pytest.raises(NomeDomainError):
            EllipticParams.from_nome(1.0)
        with pytest.raises(NomeDomainError):
            EllipticParams.from_nome(1.3)

    def test_inconsistent_tau(self):
        with pytest.raises(ValueError):
            EllipticParams(p=0.2, tau=0.5j, lam=0.0)

    def test_truncation_error(self):
        tight = SeriesConfig(term_tolerance=1e-16, max_terms=2)
        with pytest.raises(SeriesTruncationError):
            theta1(0.5, params(0.5), tight)

    def test_series_config_validation(self):
        with pytest.raises(ValueError):
            SeriesConfig(term_tolerance=0.0)
        with pytest.raises(ValueError):
            SeriesConfig(max_terms=0)


class TestSymmetryLaws:
    def test_antisymmetry_and_periodicity(self):
        rnd = random.Random(4)
        for _ in range(50):
            p = rnd.uniform(0.01, 0.5)
            phi = rnd.uniform(-2 * PI, 2 * PI)
            pr = params(p)
            t1, t4 = theta1(phi, pr), theta4(phi, pr)
            assert abs(theta1(-phi, pr) + t1) < 1e-12 * (1 + abs(t1))
            assert abs(theta4(-phi, pr) - t4) < 1e-12 * (1 + abs(t4))
            assert abs(theta1(phi + PI, pr) + t1) < 1e-12 * (1 + abs(t1))
            assert abs(theta1(phi - PI, pr) + t1) < 1e-12 * (1 + abs(t1))
            assert abs(theta4(phi + PI, pr) - t4) < 1e-12 * (1 + abs(t4))

    def test_pi_tau_quasi_periodicity(self):
        rnd = random.Random(5)
        for _ in range(50):
            p = rnd.uniform(0.01, 0.5)
            phi = rnd.uniform(0, PI)
            pr = params(p)
            shift = PI * pr.tau
            factor = quasi_period_factor(phi, pr)
            l1 = theta1(phi + shift, pr)
            r1 = factor * theta1(phi, pr)
            assert abs(l1 - r1) < 1e-10 * (1 + abs(r1))
            l4 = theta4(phi + shift, pr)
            r4 = factor * theta4(phi, pr)
            assert abs(l4 - r4) < 1e-10 * (1 + abs(r4))

    def test_theta4_from_theta1_half_period(self):
        rnd = random.Random(6)
        for _ in range(50):
            p = rnd.uniform(0.01, 0.5)
            phi = rnd.uniform(0, PI)
            pr = params(p)
            lhs = theta4(phi, pr)
            rhs = 1j * p ** 0.25 * cmath.exp(-1j * phi) * theta1(phi - PI * pr.tau / 2, pr)
            assert abs(lhs - rhs) < 1e-10 * (1 + abs(lhs))


class TestDerivedQuantities:
    def test_zeta_trivial_at_p_zero(self):
        pr = params(0.0, lam=0.41)
        for r in range(3):
            assert zeta(r, pr) == 1

    def test_zeta_golden(self):
        assert zeta(0, params(0.1, lam=0.3)) == pytest.approx(GOLDEN_ZETA0_L03_P01, rel=1e-13)

    def test_zeta_product_is_one(self):
        rnd = random.Random(7)
        for _ in range(30):
            pr = params(rnd.uniform(0.01, 0.5), lam=rnd.uniform(0.05, PI / 3 - 0.05))
            prod = zeta(0, pr) * zeta(1, pr) * zeta(2, pr)
            assert abs(prod - 1) < 1e-12

    def test_zeta_log_table_sums_to_zero(self):
        pr = params(0.3, lam=0.22)
        table = zeta_log_table(pr)
        assert abs(sum(table)) < 1e-13
        for r in range(3):
            assert cmath.exp(table[r]) == pytest.approx(zeta(r, pr), rel=1e-13)

    def test_zeta_pole_raises(self):
        # theta4 vanishes at pi*tau/2 (mod pi); push lambda onto the zero
        pr = params(0.3, lam=PI * params(0.3).tau / 2)
        with pytest.raises(PoleError):
            zeta(0, pr)

    def test_cubic_factor_golden(self):
        assert cubic_factor_D(params(0.1)) == pytest.approx(GOLDEN_D_P01, rel=1e-13)
        assert cubic_factor_D(params(0.2)) == pytest.approx(GOLDEN_D_P02, rel=1e-13)

    def test_cubic_identity(self):
        rnd = random.Random(8)
        pr = params(0.2)
        D = cubic_factor_D(pr)
        for _ in range(50):
            phi = rnd.uniform(0, PI)
            lhs = (theta1(phi, pr) * theta1(phi + PI / 3, pr)
                   * theta1(phi + 2 * PI / 3, pr))
            rhs = D * theta1(3 * phi, pr.cubed())
            assert abs(lhs - rhs) < 1e-12 * (1 + abs(rhs))

    def test_cubic_factor_approaches_one(self):
        # both sides of the cubing identity collapse to the trigonometric
        # triple product as p -> 0, forcing D -> 1
        assert abs(cubic_factor_D(params(1e-3)) - 1) < 5e-3
        assert abs(cubic_factor_D(params(1e-4)) - 1) < 5e-4
        assert cubic_factor_D(params(0.0)) == pytest.approx(1.0)

    def test_theta1_prime_central_difference(self):
        pr = params(0.17)
        h = 1e-5
        fd = (theta1(h, pr) - theta1(-h, pr)) / (2 * h)
        exact = theta1_prime_at_zero(pr)
        assert abs(fd - exact) < 1e-8 * abs(exact)


def test_params_helpers():
    pr = EllipticParams.from_nome(0.2, lam=0.3)
    assert pr.cubed().p == pytest.approx(0.2 ** 3)
    assert pr.cubed().tau == pytest.approx(3 * pr.tau)
    assert pr.shifted_lambda(2 * PI / 3).lam == pytest.approx(0.3 + 2 * PI / 3)
    roundtrip = EllipticParams.from_tau(pr.tau, lam=0.3)
    assert roundtrip.p == pytest.approx(pr.p, rel=1e-12)
