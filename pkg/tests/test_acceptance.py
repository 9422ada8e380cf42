"""End-to-end checks against closed forms and cross-validating estimators."""
import math
import time

import numpy as np
import pytest

from shared.utils import angle_grid
from spectrum import geometry
from spectrum.lognorm import lognorm_closed, lognorm_duality, lognorm_quotient, sample_numrange
from spectrum.matcore import NormSpec
from spectrum.numspec import (
    certify_halfplane,
    check_spectrum_inclusion,
    classify_region,
    numerical_radius,
    numerical_region,
    support_value,
)
from spectrum.renorm import hull_convergence_report
from spectrum.semigroup import (
    default_t_grid,
    growth_envelope_check,
    norm_curve,
    stability_equivalence_check,
    subadditive_limit_check,
)
from spectrum.zoo import jordan_radius, laplacian_eigenvalues, make_example

P_CLOSED = (1.0, 2.0, math.inf)


def _gaussian(n: int, seed: int) -> np.ndarray:
    gen = np.random.default_rng(seed)
    return gen.standard_normal((n, n)) + 1j * gen.standard_normal((n, n))


class TestJordanBlock:
    """Tests for the 2x2 Jordan block."""

    @pytest.mark.parametrize("p", [1.0, math.inf, 2.0, 3.0, 4.0])
    def test_radius(self, jordan2, p):
        """Test the radius against the closed form at 360 angles within ten seconds."""
        started = time.perf_counter()
        region = numerical_region(jordan2, NormSpec(p), 360, seed=0)
        elapsed = time.perf_counter() - started
        assert numerical_radius(region) == pytest.approx(jordan_radius(p), abs=1e-3)
        assert elapsed < 10.0

    def test_certificate_fails_on_right_half_plane(self, jordan2):
        """Test Re lambda > 0 is not a resolvent half-plane."""
        cert = certify_halfplane(jordan2, NormSpec(2.0), 0.0, 0.0)
        assert not cert.passed
        assert cert.worst_ratio >= 1.6


class TestTriangularCone:
    """Tests for [[1, 1], [0, -1]] and its shift under l^1."""

    def test_s_n_zero(self, triangular_pm1):
        """Test s_n^0 = 1."""
        region = numerical_region(triangular_pm1, NormSpec(1.0), 360)
        assert region.s_n_at_zero == pytest.approx(1.0, abs=1e-6)

    def test_shifted_support(self, shifted_cone_b):
        """Test h(0) = 2, h(pi/2) = 1 and h(pi) = 1."""
        norm = NormSpec(1.0)
        assert support_value(shifted_cone_b, norm, 0.0).h == pytest.approx(2.0, abs=1e-9)
        assert support_value(shifted_cone_b, norm, math.pi / 2).h == pytest.approx(1.0, abs=1e-9)
        assert support_value(shifted_cone_b, norm, math.pi).h == pytest.approx(1.0, abs=1e-9)

    def test_shift_moves_region(self, triangular_pm1, shifted_cone_b):
        """Test region(A) = region(A + I) - 1."""
        region_a = numerical_region(triangular_pm1, NormSpec(1.0), 360)
        region_b = numerical_region(shifted_cone_b, NormSpec(1.0), 360)
        assert geometry.hausdorff(region_a.outer_vertices, region_b.outer_vertices - 1.0) <= 1e-6


class TestRandomMatrices:
    """Cross-checks on Gaussian matrices."""

    @pytest.mark.parametrize("seed", range(20))
    def test_region_matches_sampled_range(self, seed):
        """Test the swept region against the hull of sampled pairings."""
        A = _gaussian(4, seed)
        norm = NormSpec(2.0)
        region = numerical_region(A, norm, 360, seed=seed)
        assert region.gap <= 1e-3
        points = np.concatenate([sample_numrange(A, norm, 10000, seed=seed), region.witness_points])
        assert geometry.hausdorff(region.outer_vertices, geometry.convex_hull(points)) <= 2e-2

    @pytest.mark.parametrize("p", P_CLOSED)
    def test_spectrum_inclusion(self, p):
        """Test every eigenvalue lies inside the region."""
        for seed in range(100):
            A = _gaussian(2 + seed % 5, 1000 + seed)
            region = numerical_region(A, NormSpec(p), 90, seed=seed)
            assert min(margin for _, margin in check_spectrum_inclusion(A, region)) >= -1e-6, seed

    def test_certificate_on_supporting_half_planes(self):
        """Test the resolvent certificate just beyond the support."""
        A = _gaussian(3, 77)
        norm = NormSpec(2.0)
        for theta in angle_grid(16):
            h = support_value(A, norm, theta).h
            assert certify_halfplane(A, norm, theta, h + 1e-6).passed, theta

    def test_quotient_matches_closed_forms(self):
        """Test the difference quotient against the closed forms."""
        for seed in range(50):
            A = _gaussian(3, 2000 + seed)
            for p in P_CLOSED:
                closed = lognorm_closed(A, p).value
                quotient = lognorm_quotient(A, NormSpec(p), seed=seed).value
                assert quotient == pytest.approx(closed, abs=1e-5), (seed, p)

    @pytest.mark.parametrize("p", [1.5, 3.0])
    def test_quotient_matches_duality(self, p):
        """Test the two general-p estimators agree."""
        for seed in range(50):
            A = _gaussian(3, 3000 + seed)
            quotient = lognorm_quotient(A, NormSpec(p), seed=seed).value
            duality = lognorm_duality(A, NormSpec(p), seed=seed).value
            assert abs(quotient - duality) <= 1e-3, seed


class TestSemigroupLink:
    """Tests tying the support function to semigroup growth."""

    def test_envelope_and_limit(self):
        """Test ||T_theta(t)|| <= e^{h(theta) t} and the small-time limit."""
        A = _gaussian(3, 41)
        norm = NormSpec(2.0)
        theta = math.pi / 3
        h = support_value(A, norm, theta).h
        curve = norm_curve(A, norm, theta)
        assert growth_envelope_check(curve, h).passed
        assert not growth_envelope_check(curve, h - 1e-2).passed
        fine = norm_curve(A, norm, theta, default_t_grid(t_min=1e-7, t_max=1.0))
        assert subadditive_limit_check(fine, reference=h).max_deviation <= 1e-4

    def test_skew_hermitian_group(self):
        """Test a skew-Hermitian generator gives an isometric group."""
        A = make_example("skew_hermitian_random", {"n": 5, "seed": 11}).matrix
        curve = norm_curve(A, NormSpec(2.0))
        assert np.max(np.abs(curve.values - 1.0)) <= 1e-9
        assert classify_region(numerical_region(A, NormSpec(2.0), 72)).isometric_group

    def test_stability_equivalence(self):
        """Test the envelope and pairing criteria never disagree."""
        epsilon = 0.5
        gen = np.random.default_rng(8)
        for seed in range(50):
            G = _gaussian(4, 4000 + seed)
            delta = gen.uniform(0.05, 1.0) * (1.0 if seed % 2 == 0 else -1.0)
            A = G - (lognorm_closed(G, 2.0).value + epsilon + delta) * np.eye(4)
            result = stability_equivalence_check(A, NormSpec(2.0), epsilon)
            assert result.envelope_ok == result.pairing_ok == (delta > 0), seed


class TestRenormConvergence:
    """Tests for shrinking renormed regions."""

    def test_jordan_shrinks_to_origin(self, jordan2):
        """Test the renormed radius follows omega down to the spectrum."""
        omegas = [1.0, 0.5, 0.25, 0.1]
        report = hull_convergence_report(jordan2, NormSpec(2.0), omegas, seed=0)
        assert report.monotone
        for entry in report.entries:
            assert entry.radius <= entry.omega + 1e-2
        assert report.final_hausdorff <= 0.11

    def test_normal_matrix_reaches_segment(self):
        """Test diag(1, -1) gives the segment [-1, 1]."""
        A = np.diag([1.0, -1.0])
        report = hull_convergence_report(A, NormSpec(2.0), [0.5, 0.1], seed=0)
        assert report.final_hausdorff <= 2e-2


class TestExamples:
    """Tests for catalogue matrices with known regions."""

    @pytest.mark.parametrize("q", ["1, -1, 1j, -1j", "2, -1, 0.5", "1+2j, -1+2j, -1-2j, 1-2j"])
    @pytest.mark.parametrize("p", P_CLOSED)
    def test_diagonal_region_is_hull(self, q, p):
        """Test diagonal regions equal the hull of the diagonal."""
        A = make_example("diag", {"q": q}).matrix
        region = numerical_region(A, NormSpec(p), 360)
        hull = geometry.convex_hull(np.diag(A))
        assert geometry.hausdorff(region.outer_vertices, hull) <= 1e-3

    def test_laplacian_endpoints(self):
        """Test the discrete Dirichlet Laplacian on (0, pi)."""
        A = make_example("dirichlet_laplacian", {"N": 200}).matrix
        norm = NormSpec(2.0)
        right = support_value(A, norm, 0.0).h
        left = -support_value(A, norm, math.pi).h
        assert -1.001 < right < -0.999
        assert left == pytest.approx(laplacian_eigenvalues(200)[0], abs=1e-6)
