"""Planar convex geometry tests."""
import math

import numpy as np
import pytest

from shared.exceptions import GeometryError, InputError
from shared.utils import angle_grid
from spectrum import geometry


class TestHalfplanePolygon:
    """Tests for halfplane_polygon."""

    def test_square(self):
        """Test four unit half-planes give the square with vertices +-1 +-i."""
        poly = geometry.halfplane_polygon(angle_grid(4), np.ones(4))
        assert len(poly) == 4
        assert sorted((round(z.real), round(z.imag)) for z in poly) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
        assert geometry.polygon_area(poly) == pytest.approx(4.0)

    def test_disk_polygon(self):
        """Test constant support gives a circumscribed regular polygon."""
        K = 360
        poly = geometry.halfplane_polygon(angle_grid(K), np.full(K, 2.0))
        assert np.max(np.abs(poly)) == pytest.approx(2.0 / math.cos(math.pi / K), rel=1e-9)
        assert geometry.polygon_area(poly) > 0.0

    def test_segment(self):
        """Test support |cos theta| collapses to the segment [-1, 1]."""
        thetas = angle_grid(360)
        poly = geometry.halfplane_polygon(thetas, np.abs(np.cos(thetas)))
        assert len(poly) == 2
        assert sorted(poly.real) == pytest.approx([-1.0, 1.0], abs=1e-9)
        assert np.allclose(poly.imag, 0.0, atol=1e-9)

    def test_empty_intersection(self):
        """Test contradictory support values."""
        with pytest.raises(GeometryError):
            geometry.halfplane_polygon(angle_grid(4), np.array([-1.0, 1.0, -1.0, 1.0]))

    def test_too_few_samples(self):
        """Test that two half-planes are rejected."""
        with pytest.raises(InputError):
            geometry.halfplane_polygon([0.0, math.pi], [1.0, 1.0])


class TestConvexHull:
    """Tests for convex_hull."""

    def test_interior_point_dropped(self):
        """Test the hull of a square with its center."""
        hull = geometry.convex_hull([0, 1, 1 + 1j, 1j, 0.5 + 0.5j])
        assert len(hull) == 4
        assert geometry.polygon_area(hull) == pytest.approx(1.0)

    def test_collinear_points(self):
        """Test collinear points give the segment endpoints."""
        hull = geometry.convex_hull([-1, 0.5, 0, 1])
        assert sorted(hull.real) == [-1.0, 1.0]

    def test_single_point(self):
        """Test repeated points collapse to one vertex."""
        hull = geometry.convex_hull([2j, 2j, 2j])
        assert hull.tolist() == [2j]


class TestDistances:
    """Tests for distances and supports."""

    @pytest.fixture
    def square(self):
        return np.array([-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j])

    def test_point_distance(self, square):
        """Test distance outside, on an edge and inside."""
        assert geometry.point_polygon_distance(3 + 0j, square) == pytest.approx(2.0)
        assert geometry.point_polygon_distance(2 + 2j, square) == pytest.approx(math.sqrt(2))
        assert geometry.point_polygon_distance(0.5j, square) == 0.0
        assert geometry.contains(square, 1 + 0j)

    def test_distance_to_segment_and_point(self):
        """Test degenerate polygons."""
        assert geometry.point_polygon_distance(1j, np.array([-1, 1], dtype=complex)) == pytest.approx(1.0)
        assert geometry.point_polygon_distance(3 + 4j, np.array([0j])) == pytest.approx(5.0)

    def test_hausdorff(self, square):
        """Test Hausdorff distance to a scaled copy and to a point."""
        assert geometry.hausdorff(square, square) == 0.0
        assert geometry.hausdorff(square, 2 * square) == pytest.approx(math.sqrt(2))
        assert geometry.hausdorff(square, np.array([0j])) == pytest.approx(math.sqrt(2))

    def test_support_and_margin(self, square):
        """Test the support function and the half-plane margin."""
        assert geometry.support(square, 0.0) == pytest.approx(1.0)
        assert geometry.support(square, math.pi / 4) == pytest.approx(math.sqrt(2))
        thetas = angle_grid(4)
        assert geometry.support_margin(0.5 + 0j, thetas, np.ones(4)) == pytest.approx(0.5)
        assert geometry.support_margin(2 + 0j, thetas, np.ones(4)) == pytest.approx(-1.0)
