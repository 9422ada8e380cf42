"""Planar convex geometry on complex points.

Polygons are complex arrays of vertices in counter-clockwise order. A
polygon with one vertex is a point and one with two vertices a segment.
"""
import logging
from collections import deque
from typing import Iterable, Optional

import numpy as np
from scipy.spatial import ConvexHull

try:
    from scipy.spatial import QhullError
except ImportError:  # scipy < 1.10
    from scipy.spatial.qhull import QhullError

from shared.exceptions import GeometryError, InputError

logger = logging.getLogger(__name__)


def _scale(values: np.ndarray) -> float:
    return 1.0 + float(np.max(np.abs(values))) if values.size else 1.0


def _cross(a: complex, b: complex) -> float:
    return a.real * b.imag - a.imag * b.real


def _dedupe_cyclic(vertices: Iterable[complex], tol: float) -> np.ndarray:
    out = []
    for v in vertices:
        if not out or abs(v - out[-1]) > tol:
            out.append(v)
    while len(out) > 1 and abs(out[0] - out[-1]) <= tol:
        out.pop()
    return np.asarray(out, dtype=complex)


def halfplane_polygon(thetas, hs, *, rtol: float = 1e-10) -> np.ndarray:
    """Intersection of the half-planes Re(e^{-i theta_k} z) <= h_k.

    Angles must wrap around the circle so the intersection is bounded.
    Raises GeometryError when the intersection is empty.
    """
    thetas = np.asarray(thetas, dtype=float)
    hs = np.asarray(hs, dtype=float)
    if thetas.shape != hs.shape or thetas.size < 3:
        raise InputError("need at least three support samples with matching angles")
    if not np.all(np.isfinite(hs)):
        raise GeometryError("support values must be finite")

    order = np.argsort(np.mod(thetas, 2.0 * np.pi), kind="stable")
    normals = np.exp(1j * thetas[order])
    offsets = hs[order]
    eps = rtol * _scale(offsets)

    def outside(k: int, z: complex) -> bool:
        return (np.conj(normals[k]) * z).real - offsets[k] > eps

    def meet(a: int, b: int) -> Optional[complex]:
        det = _cross(normals[a], normals[b])
        if abs(det) < 1e-12:
            return None
        # Cramer's rule on n_a . z = h_a, n_b . z = h_b
        x = (offsets[a] * normals[b].imag - offsets[b] * normals[a].imag) / det
        y = (normals[a].real * offsets[b] - normals[b].real * offsets[a]) / det
        return complex(x, y)

    dq: deque = deque()
    for k in range(len(normals)):
        while len(dq) >= 2:
            z = meet(dq[-2], dq[-1])
            if z is not None and outside(k, z):
                dq.pop()
            else:
                break
        while len(dq) >= 2:
            z = meet(dq[0], dq[1])
            if z is not None and outside(k, z):
                dq.popleft()
            else:
                break
        if dq and abs(_cross(normals[dq[-1]], normals[k])) < 1e-12:
            if (np.conj(normals[dq[-1]]) * normals[k]).real < 0.0:
                raise GeometryError("adjacent opposite half-planes: region is unbounded or empty")
            if offsets[k] < offsets[dq[-1]]:
                dq.pop()
                dq.append(k)
            continue
        dq.append(k)

    while len(dq) >= 3:
        z = meet(dq[-2], dq[-1])
        if z is not None and outside(dq[0], z):
            dq.pop()
        else:
            break
    while len(dq) >= 3:
        z = meet(dq[0], dq[1])
        if z is not None and outside(dq[-1], z):
            dq.popleft()
        else:
            break
    if len(dq) < 3:
        raise GeometryError("half-plane intersection is empty")

    lines = list(dq)
    corners = [meet(lines[i], lines[(i + 1) % len(lines)]) for i in range(len(lines))]
    if any(z is None for z in corners):
        raise GeometryError("half-plane intersection is degenerate")
    polygon = _dedupe_cyclic(corners, 1e3 * eps)

    violation = np.max((np.conj(normals)[:, None] * polygon[None, :]).real - offsets[:, None])
    if violation > 1e4 * eps:
        raise GeometryError(f"support data are inconsistent (violation {violation:.3g})")
    return polygon


def convex_hull(points, *, rtol: float = 1e-12) -> np.ndarray:
    """Counter-clockwise convex hull, degenerating to a segment or a point."""
    pts = np.asarray(list(points) if not isinstance(points, np.ndarray) else points, dtype=complex).ravel()
    if pts.size == 0:
        return pts
    center = pts.mean()
    spread = np.column_stack([(pts - center).real, (pts - center).imag])
    sv = np.linalg.svd(spread, compute_uv=False) if pts.size > 1 else np.zeros(2)
    tol = rtol * _scale(pts)
    if sv[0] <= tol:
        return np.array([center])
    if pts.size < 3 or sv[1] <= 1e-10 * sv[0]:
        _, _, vt = np.linalg.svd(spread, full_matrices=False)
        direction = complex(vt[0, 0], vt[0, 1])
        proj = ((pts - center) * np.conj(direction)).real
        return np.array([pts[int(np.argmin(proj))], pts[int(np.argmax(proj))]])
    try:
        hull = ConvexHull(spread)
    except QhullError as e:
        raise GeometryError(f"convex hull failed: {e}")
    # scipy returns 2-D hull vertices counter-clockwise
    return pts[hull.vertices]


def segment_distance(z: complex, a: complex, b: complex) -> float:
    d = b - a
    if d == 0:
        return abs(z - a)
    t = min(1.0, max(0.0, ((z - a) * np.conj(d)).real / abs(d) ** 2))
    return abs(z - (a + t * d))


def contains(polygon: np.ndarray, z: complex, *, tol: float = 1e-12) -> bool:
    """True when z lies in the (closed) convex polygon, up to tol."""
    return point_polygon_distance(z, polygon) <= tol


def point_polygon_distance(z: complex, polygon: np.ndarray) -> float:
    """Euclidean distance from z to a convex polygon (0 inside)."""
    m = len(polygon)
    if m == 0:
        raise InputError("empty polygon")
    if m == 1:
        return abs(z - polygon[0])
    if m >= 3:
        inside = all(
            _cross(polygon[(i + 1) % m] - polygon[i], z - polygon[i]) >= 0.0 for i in range(m)
        )
        if inside:
            return 0.0
    edges = m if m >= 3 else 1
    return min(segment_distance(z, polygon[i], polygon[(i + 1) % m]) for i in range(edges))


def hausdorff(P: np.ndarray, Q: np.ndarray) -> float:
    """Hausdorff distance between two convex polygons."""
    forward = max(point_polygon_distance(v, Q) for v in P)
    backward = max(point_polygon_distance(w, P) for w in Q)
    return float(max(forward, backward))


def support(polygon: np.ndarray, theta: float) -> float:
    """max Re(e^{-i theta} v) over the vertices."""
    return float(np.max((np.exp(-1j * theta) * np.asarray(polygon)).real))


def support_margin(z: complex, thetas, hs) -> float:
    """min_k [h_k - Re(e^{-i theta_k} z)]; non-negative means z satisfies every half-plane."""
    thetas = np.asarray(thetas, dtype=float)
    return float(np.min(np.asarray(hs) - (np.exp(-1j * thetas) * z).real))


def polygon_area(polygon: np.ndarray) -> float:
    if len(polygon) < 3:
        return 0.0
    x, y = polygon.real, polygon.imag
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))
