"""Semigroup growth tests."""
import math

import numpy as np
import pytest

from shared.exceptions import InputError
from spectrum.lognorm import lognorm_closed
from spectrum.matcore import NormSpec, spectral_abscissa
from spectrum.semigroup import (
    NormCurve,
    asymptotic_growth,
    default_t_grid,
    growth_envelope_check,
    norm_curve,
    stability_equivalence_check,
    subadditive_limit_check,
)
from spectrum.zoo import make_example


class TestNormCurve:
    """Tests for norm_curve."""

    def test_jordan_closed_form(self, jordan2):
        """Test ||e^{tJ}||_1 = 1 + t."""
        ts = [0.5, 1.0, 2.0]
        curve = norm_curve(jordan2, NormSpec(1.0), 0.0, ts)
        assert curve.values == pytest.approx([1.5, 2.0, 3.0])
        assert not curve.truncated

    def test_skew_hermitian_is_unitary(self):
        """Test a skew-Hermitian generator gives norm 1 at every time."""
        A = make_example("skew_hermitian_random", {"n": 4, "seed": 5}).matrix
        curve = norm_curve(A, NormSpec(2.0))
        assert np.allclose(curve.values, 1.0, atol=1e-9)

    def test_rotation(self):
        """Test the rotated semigroup e^{t e^{-i theta} A}."""
        curve = norm_curve(np.diag([1.0j]), NormSpec(2.0), math.pi / 2, [1.0])
        assert curve.values[0] == pytest.approx(math.e)

    def test_overflow_truncates(self):
        """Test that an overflowing exponential ends the curve."""
        curve = norm_curve(np.diag([800.0]), NormSpec(2.0), 0.0, [0.1, 0.5, 1.0, 2.0])
        assert curve.truncated
        assert curve.ts.tolist() == [0.1, 0.5]

    def test_csv(self, jordan2):
        """Test the CSV layout."""
        lines = norm_curve(jordan2, NormSpec(1.0), 0.0, [1.0, 2.0]).to_csv().splitlines()
        assert lines[0] == "t,norm"
        assert [float(v) for v in lines[2].split(",")] == pytest.approx([2.0, 3.0])

    @pytest.mark.parametrize("grid", [[], [1.0, 0.5], [0.0, 1.0], [1.0, math.inf]])
    def test_invalid_grid(self, jordan2, grid):
        """Test time grid validation."""
        with pytest.raises(InputError):
            norm_curve(jordan2, NormSpec(2.0), 0.0, grid)

    def test_default_grid(self):
        """Test the default log-spaced grid."""
        ts = default_t_grid()
        assert ts[0] == pytest.approx(1e-4)
        assert ts[-1] == pytest.approx(1e2)
        assert ts.size == 60


class TestGrowthChecks:
    """Tests for the envelope and limit checks."""

    def test_envelope_at_support(self, random_matrix):
        """Test ||T(t)|| <= e^{h(0) t} holds and fails just below."""
        A = random_matrix(3, seed=1)
        mu = lognorm_closed(A, 2.0).value
        curve = norm_curve(A, NormSpec(2.0))
        assert growth_envelope_check(curve, mu).passed
        failed = growth_envelope_check(curve, mu - 1e-2)
        assert not failed.passed
        assert failed.worst_ratio > 1.0

    def test_limit_matches_lognorm(self, random_matrix):
        """Test the t -> 0 limit and the supremum of (1/t) log ||T(t)||."""
        A = random_matrix(3, seed=2)
        mu = lognorm_closed(A, 2.0).value
        curve = norm_curve(A, NormSpec(2.0), 0.0, default_t_grid(t_min=1e-7, t_max=1.0))
        check = subadditive_limit_check(curve, reference=mu)
        assert check.max_deviation <= 1e-4
        assert check.sup_value == pytest.approx(mu, abs=1e-4)

    def test_asymptotic_growth_between_bounds(self, random_matrix):
        """Test s(A) <= omega_0 <= h(0)."""
        A = random_matrix(3, seed=3) - 3.0 * np.eye(3)
        curve = norm_curve(A, NormSpec(2.0), 0.0, default_t_grid(t_max=50.0))
        omega0 = asymptotic_growth(curve)
        assert spectral_abscissa(A) - 0.1 <= omega0 <= lognorm_closed(A, 2.0).value + 1e-6

    def test_empty_curve(self):
        """Test the envelope check on an empty curve."""
        curve = NormCurve(0.0, np.zeros(0), np.zeros(0), NormSpec(2.0))
        assert growth_envelope_check(curve, 0.0).passed
        with pytest.raises(InputError):
            asymptotic_growth(curve)


class TestStabilityEquivalence:
    """Tests for stability_equivalence_check."""

    def test_stable_matrix(self, random_matrix):
        """Test both sides hold when mu_2 <= -epsilon."""
        G = random_matrix(4, seed=4)
        A = G - (lognorm_closed(G, 2.0).value + 0.6) * np.eye(4)
        result = stability_equivalence_check(A, NormSpec(2.0), 0.5)
        assert result.envelope_ok and result.pairing_ok

    def test_unstable_matrix(self, random_matrix):
        """Test both sides fail when mu_2 > -epsilon."""
        G = random_matrix(4, seed=4)
        A = G - (lognorm_closed(G, 2.0).value + 0.4) * np.eye(4)
        result = stability_equivalence_check(A, NormSpec(2.0), 0.5)
        assert not result.envelope_ok and not result.pairing_ok

    def test_epsilon_must_be_positive(self, jordan2):
        """Test epsilon validation."""
        with pytest.raises(InputError):
            stability_equivalence_check(jordan2, NormSpec(2.0), 0.0)
