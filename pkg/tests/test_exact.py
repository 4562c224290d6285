import math

import numpy as np
import pytest
from scipy.integrate import quad

from edgeworth_lab.errors import DomainError, NumericError, UsageError
from edgeworth_lab.exact import (
    McConfig,
    gauss_2f1,
    gauss_2f1_with_terms,
    hotelling_pdf_r,
    log_gamma,
    mc_sample_r,
)
from edgeworth_lab.metrics import cdf_on_grid, ks_distance

from .oracles import euler_2f1

OSETS = [(35, -0.85), (20, 0.0), (50, 0.5)]


# ---------------------------------------------------------------------------
# log gamma
# ---------------------------------------------------------------------------


def test_log_gamma_known_values():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)
    assert log_gamma(34.0) == pytest.approx(math.log(math.factorial(33)), rel=1e-14)


def test_log_gamma_domain():
    with pytest.raises(DomainError):
        log_gamma(0.0)


# ---------------------------------------------------------------------------
# hypergeometric series
# ---------------------------------------------------------------------------


def test_series_at_zero():
    assert gauss_2f1(0.5, 0.5, 34.5, 0.0) == 1.0


def test_series_geometric_identity():
    for x in (0.1, 0.5, 0.9):
        assert gauss_2f1(1.0, 1.0, 1.0, x) == pytest.approx(1 / (1 - x), rel=1e-12)


def test_series_against_euler_integral():
    got = gauss_2f1(0.5, 0.5, 2.5, 0.3)
    want = euler_2f1(0.5, 0.5, 2.5, 0.3)
    assert got == pytest.approx(want, rel=1e-10)


def test_series_against_euler_integral_large_argument():
    got = gauss_2f1(0.5, 0.5, 34.5, 0.95)
    want = euler_2f1(0.5, 0.5, 34.5, 0.95)
    assert got == pytest.approx(want, rel=1e-9)


def test_term_counts_stay_small_on_working_domain():
    worst = 0
    for n in (5, 10, 35, 100, 200):
        for rho in (-0.95, -0.5, 0.5, 0.95):
            for r in (-0.999, -0.5, 0.0, 0.5, 0.999):
                x = 0.5 * (1 + rho * r)
                _, terms = gauss_2f1_with_terms(0.5, 0.5, n - 0.5, x)
                worst = max(worst, terms)
    assert worst < 500


def test_series_non_convergence_raises_with_term_count():
    with pytest.raises(NumericError) as err:
        gauss_2f1(0.5, 0.5, 0.6, 1.0 - 1e-12)
    assert err.value.terms == 100_000


def test_series_domain_checks():
    with pytest.raises(UsageError):
        gauss_2f1(0.5, 0.5, -1.0, 0.3)
    with pytest.raises(DomainError):
        gauss_2f1(0.5, 0.5, 2.5, 1.0)


# ---------------------------------------------------------------------------
# exact density
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n,rho", OSETS)
def test_density_normalizes(n, rho):
    mass, _ = quad(lambda r: hotelling_pdf_r(n, rho, r), -1, 1, limit=300)
    assert mass == pytest.approx(1.0, abs=1e-6)


def test_zero_correlation_reduces_to_symmetric_beta_form():
    n = 20
    r = np.linspace(-0.95, 0.95, 39)
    got = hotelling_pdf_r(n, 0.0, r)
    log_norm = math.lgamma((n - 1) / 2) - math.lgamma(0.5) - math.lgamma((n - 2) / 2)
    want = np.exp(log_norm) * (1 - r**2) ** ((n - 4) / 2)
    np.testing.assert_allclose(got, want, rtol=1e-12)
    np.testing.assert_allclose(got, got[::-1], atol=1e-14)


@pytest.mark.parametrize("n,rho", [(35, -0.85), (12, 0.6)])
def test_reflection_symmetry(n, rho):
    r = np.linspace(-0.99, 0.99, 81)
    left = hotelling_pdf_r(n, rho, r)
    right = hotelling_pdf_r(n, -rho, -r)
    np.testing.assert_allclose(left, right, rtol=1e-12, atol=1e-300)


def test_density_domain_checks():
    with pytest.raises(UsageError):
        hotelling_pdf_r(4, 0.0, 0.0)
    with pytest.raises(DomainError):
        hotelling_pdf_r(35, 0.0, 1.0)


# ---------------------------------------------------------------------------
# Monte Carlo sampler
# ---------------------------------------------------------------------------


def test_sampler_is_deterministic():
    cfg = McConfig(n=35, rho=-0.85, replicates=4096, seed=123)
    first = mc_sample_r(cfg)
    second = mc_sample_r(cfg)
    np.testing.assert_array_equal(first, second)


def test_sampler_values_in_range():
    cfg = McConfig(n=7, rho=0.95, replicates=20000, seed=5)
    r = mc_sample_r(cfg)
    assert np.all(r >= -1.0) and np.all(r <= 1.0)


def test_uncorrelated_sample_mean_is_small():
    cfg = McConfig(n=100, rho=0.0, replicates=100_000, seed=17)
    r = mc_sample_r(cfg)
    assert abs(r.mean()) < 4.0 / math.sqrt(100 * 100_000)


def test_high_correlation_median_band():
    cfg = McConfig(n=50, rho=0.9, replicates=50_000, seed=23)
    r = mc_sample_r(cfg)
    assert 0.8 < np.median(r) < 0.95


@pytest.mark.parametrize("n,rho", OSETS)
def test_sampler_agrees_with_exact_cdf(n, rho):
    cfg = McConfig(n=n, rho=rho, replicates=30_000, seed=71)
    sample = mc_sample_r(cfg)
    reference = cdf_on_grid(lambda r: hotelling_pdf_r(n, rho, r))
    assert ks_distance(sample, reference) < 0.011


def test_config_validation():
    with pytest.raises(UsageError):
        McConfig(n=1, rho=0.0, replicates=10, seed=0)
    with pytest.raises(UsageError):
        McConfig(n=10, rho=1.0, replicates=10, seed=0)
    with pytest.raises(UsageError):
        McConfig(n=10, rho=0.0, replicates=0, seed=0)
    with pytest.raises(UsageError):
        McConfig(n=10, rho=0.0, replicates=10, seed=-1)
