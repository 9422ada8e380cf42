"""Numerical spectrum of a matrix as a convex region in the complex plane.

The support function h(theta) = mu(e^{-i theta} A) is swept over a uniform
angle grid. The outer polygon is the intersection of the half-planes
Re(e^{-i theta} z) <= h(theta); the inner polygon is the hull of pairing
values <Ax, j(x)> found along the way.
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from shared.config import settings
from shared.exceptions import InputError, NumericalError, SingularityError, SweepError
from shared.utils import angle_grid, derive_seed
from spectrum import geometry
from spectrum.lognorm import LogNormMethod, lognorm_closed, lognorm_duality, lognorm_quotient
from spectrum.matcore import NormSpec, as_matrix, eigenvalues, op_norm, pairing, resolvent_norm_estimate
from spectrum.workers import TaskPool

logger = logging.getLogger(__name__)

_ANGLE_MATCH = 1e-12
_HARD_FAILURE_DISTANCE = 1e-10
# restart multiple and seed stream for the search that follows an estimator disagreement
_WIDER_RESTARTS = 4
_WIDER_STREAM = 31


@dataclass(frozen=True)
class SupportSample:
    """h(theta) at one angle, with the pairing value that supports it."""

    theta: float
    h: float
    witness_point: Optional[complex] = None
    method: str = LogNormMethod.CLOSED.value
    residual: float = 0.0


@dataclass(frozen=True)
class StripBounds:
    """Strip {z: lower <= Re(e^{-i theta} z) <= upper}."""

    theta: float
    lower: float
    upper: float

    @property
    def width(self) -> float:
        # rounding can cross the bounds of a degenerate strip
        return max(0.0, self.upper - self.lower)


@dataclass(frozen=True)
class SectorBounds:
    """Left-opening sector {vertex - w: |arg w| <= delta}."""

    vertex: complex
    delta: float


@dataclass(frozen=True)
class ShapeClass:
    """Which of the standard convex shapes contain the region."""

    strip: StripBounds
    sector: Optional[SectorBounds]
    within_imaginary_axis: bool
    compact: bool = True
    norm_continuous: bool = True

    @property
    def isometric_group(self) -> bool:
        return self.within_imaginary_axis

    @property
    def minimal_strip_width(self) -> float:
        return self.strip.width

    @property
    def flags(self) -> List[str]:
        names = ["compact", "norm_continuous", "within_strip", "group"]
        if self.sector is not None:
            names.append("within_sector")
        if self.within_imaginary_axis:
            names += ["within_imaginary_axis", "isometric_group"]
        return names

    def as_dict(self) -> Dict:
        doc = {
            "flags": self.flags,
            "minimal_strip_width": self.minimal_strip_width,
            "strip": {"theta": self.strip.theta, "lower": self.strip.lower, "upper": self.strip.upper},
            "sector": None,
        }
        if self.sector is not None:
            doc["sector"] = {
                "vertex": [self.sector.vertex.real, self.sector.vertex.imag],
                "delta": self.sector.delta,
            }
        return doc


@dataclass(frozen=True, eq=False)
class Region:
    """Outer and inner polygon approximations of the numerical spectrum."""

    samples: Tuple[SupportSample, ...]
    outer_vertices: np.ndarray
    inner_vertices: np.ndarray
    gap: Optional[float]
    radius: float
    s_n_at_zero: float
    classification: Optional[ShapeClass] = None
    norm_label: str = ""
    diagnostics: Tuple[str, ...] = ()

    @property
    def thetas(self) -> np.ndarray:
        return np.array([s.theta for s in self.samples])

    @property
    def support(self) -> np.ndarray:
        return np.array([s.h for s in self.samples])

    @property
    def witness_points(self) -> np.ndarray:
        return np.array([s.witness_point for s in self.samples if s.witness_point is not None], dtype=complex)

    def is_zero(self, tol: float = 1e-9) -> bool:
        """True when the region is the single point 0."""
        return self.radius <= tol


@dataclass(frozen=True)
class GridSpec:
    """Test points lambda = e^{i theta}(omega + d + i tau) of a rotated half-plane.

    Distances d are log-spaced in [d_min, d_max]; tangential offsets tau are
    linearly spaced in [-span, span] and always include 0.
    """

    d_min: float
    d_max: float
    span: float
    n_distances: int = 40
    n_tangential: int = 10

    def __post_init__(self):
        if not (0.0 < self.d_min <= self.d_max) or self.span < 0.0:
            raise InputError("grid needs 0 < d_min <= d_max and span >= 0")
        if self.n_distances < 1 or self.n_tangential < 1:
            raise InputError("grid needs at least one distance and one offset")

    @classmethod
    def default_for(cls, A, n_distances: int = 40, n_tangential: int = 10) -> "GridSpec":
        scale = 1.0 + op_norm(A, NormSpec(2.0))
        return cls(1e-3 * scale, 1e3 * scale, 2.0 * scale, n_distances, n_tangential)

    def distances(self) -> np.ndarray:
        return np.logspace(math.log10(self.d_min), math.log10(self.d_max), self.n_distances)

    def points(self, theta: float, omega: float) -> np.ndarray:
        d = self.distances()
        tau = np.union1d(np.linspace(-self.span, self.span, self.n_tangential), [0.0])
        local = omega + d[:, None] + 1j * tau[None, :]
        return (np.exp(1j * theta) * local).ravel()


@dataclass(frozen=True, eq=False)
class Certificate:
    """Outcome of checking ||R(lambda, A)|| <= 1/d(lambda) on a grid."""

    theta: float
    omega: float
    grid: np.ndarray
    ratios: np.ndarray
    worst_ratio: float
    worst_lambda: Optional[complex]
    passed: bool
    failures: Tuple[Tuple[complex, float], ...]
    cert_tol: float


def _rotated(A: np.ndarray, theta: float) -> np.ndarray:
    return np.exp(-1j * theta) * A


def _estimate_support(A: np.ndarray, norm: NormSpec, theta: float, seed: int,
                      start: Optional[np.ndarray]) -> Tuple[SupportSample, Optional[np.ndarray]]:
    rotated = _rotated(A, theta)
    if norm.is_renormed:
        res = lognorm_quotient(rotated, norm, seed=seed, start=start)
        sample = SupportSample(theta, res.value, None, res.method.value, res.residual)
        return sample, res.direction

    if norm.is_closed_form:
        res = lognorm_closed(rotated, norm.p)
        point = pairing(A @ res.witness, res.dual)
        return SupportSample(theta, res.value, point, res.method.value, 0.0), None

    dual = lognorm_duality(rotated, norm, seed=seed, starts=[start] if start is not None else None)
    quot = lognorm_quotient(rotated, norm, seed=seed, start=dual.witness)
    if abs(quot.value - dual.value) > settings.duality_xcheck_tol:
        logger.warning(
            f"estimators disagree at theta={theta:.6g}: quotient={quot.value:.10g} duality={dual.value:.10g}; "
            f"retrying with {_WIDER_RESTARTS * settings.restarts} restarts"
        )
        dual = lognorm_duality(rotated, norm, seed=derive_seed(seed, _WIDER_STREAM),
                               restarts=_WIDER_RESTARTS * settings.restarts, starts=[dual.witness, quot.direction])
        quot = lognorm_quotient(rotated, norm, seed=seed, start=dual.witness)
        if abs(quot.value - dual.value) > settings.duality_xcheck_tol:
            logger.warning(f"estimators still disagree at theta={theta:.6g} by {quot.value - dual.value:.3g}")

    discrepancy = quot.value - dual.value
    point = pairing(A @ dual.witness, dual.dual)
    h = max(quot.value, dual.value)
    residual = max(quot.residual, dual.residual, abs(discrepancy))
    return SupportSample(theta, h, point, LogNormMethod.QUOTIENT.value, residual), dual.witness


def support_value(A, norm: NormSpec, theta: float, *, seed: Optional[int] = None,
                  start: Optional[np.ndarray] = None) -> SupportSample:
    """h(theta) = mu(e^{-i theta} A) at a single angle."""
    A = as_matrix(A)
    seed = settings.seed if seed is None else seed
    sample, _ = _estimate_support(A, norm, float(theta), seed, start)
    return sample


def support_sweep(A, norm: NormSpec, K: Optional[int] = None, seed: Optional[int] = None, *,
                  threads: Optional[int] = None) -> List[SupportSample]:
    """Samples of h at theta_k = 2 pi k / K.

    Every angle runs the full restart budget with the seed ``support_value``
    would use, and inside a chunk the neighbour's witness joins the starts,
    so a sweep sample is never below the single-angle estimate. Chunks run
    in parallel and are merged by angle index; the result does not depend
    on the thread count.
    """
    A = as_matrix(A)
    K = settings.default_angles if K is None else int(K)
    if K < 3:
        raise InputError(f"need at least 3 angles, got {K}")
    seed = settings.seed if seed is None else seed
    thetas = angle_grid(K)
    chunks = np.array_split(np.arange(K), min(settings.sweep_chunks, K))

    def run_chunk(indices: np.ndarray) -> List[SupportSample]:
        out = []
        start = None
        for k in indices:
            try:
                sample, start = _estimate_support(A, norm, float(thetas[k]), seed, start)
            except NumericalError as e:
                raise SweepError(int(k), float(thetas[k]), e) from e
            out.append(sample)
        return out

    logger.info(f"support sweep: n={A.shape[0]} norm={norm.label} angles={K}")
    results = TaskPool(threads, name="sweep").map(run_chunk, chunks)
    return [sample for chunk in results for sample in chunk]


def build_region(samples: Sequence[SupportSample], witnesses: Optional[Sequence[complex]] = None, *,
                 norm_label: str = "", diagnostics: Sequence[str] = ()) -> Region:
    """Outer polygon, inner hull, gap, radius and classification from support samples."""
    samples = tuple(sorted(samples, key=lambda s: s.theta))
    if len(samples) < 3:
        raise InputError(f"need at least 3 support samples, got {len(samples)}")
    thetas = np.array([s.theta for s in samples])
    hs = np.array([s.h for s in samples])
    outer = geometry.halfplane_polygon(thetas, hs)

    points = [s.witness_point for s in samples if s.witness_point is not None]
    points.extend(complex(z) for z in (witnesses if witnesses is not None else []))
    inner = geometry.convex_hull(points) if points else np.zeros(0, dtype=complex)
    gap = None
    if inner.size:
        gap = max(geometry.point_polygon_distance(v, inner) for v in outer)
        scale = 1.0 + float(np.max(np.abs(outer)))
        worst = min(geometry.support_margin(z, thetas, hs) for z in inner)
        if worst < -1e-9 * scale:
            logger.warning(f"inner hull leaves the outer polygon by {-worst:.3g}")

    zero = [s.h for s in samples if abs(s.theta) < _ANGLE_MATCH]
    region = Region(
        samples=samples,
        outer_vertices=outer,
        inner_vertices=inner,
        gap=gap,
        radius=float(np.max(np.abs(outer))),
        s_n_at_zero=float(zero[0]) if zero else geometry.support(outer, 0.0),
        norm_label=norm_label,
        diagnostics=tuple(diagnostics),
    )
    return replace(region, classification=classify_region(region))


def numerical_region(A, norm: NormSpec, K: Optional[int] = None, seed: Optional[int] = None, *,
                     threads: Optional[int] = None) -> Region:
    """Sweep and build in one call."""
    samples = support_sweep(A, norm, K, seed, threads=threads)
    return build_region(samples, norm_label=norm.label)


def numerical_radius(region: Region) -> float:
    """r_n: max modulus over the outer polygon."""
    return float(np.max(np.abs(region.outer_vertices)))


def support_at(source: Union[Region, Sequence[SupportSample]], theta: float) -> float:
    """Support value at theta: the sample itself on the grid, the outer polygon's support off it."""
    samples = source.samples if isinstance(source, Region) else tuple(source)
    target = math.fmod(theta, 2.0 * math.pi)
    if target < 0.0:
        target += 2.0 * math.pi
    for s in samples:
        delta = abs(s.theta - target)
        if min(delta, 2.0 * math.pi - delta) < _ANGLE_MATCH:
            return float(s.h)
    if isinstance(source, Region):
        outer = source.outer_vertices
    else:
        outer = geometry.halfplane_polygon([s.theta for s in samples], [s.h for s in samples])
    return geometry.support(outer, target)


def numerical_bounds(samples: Union[Region, Sequence[SupportSample]], theta: float) -> float:
    """s_n^theta(A), which equals h(theta)."""
    return support_at(samples, theta)


def check_spectrum_inclusion(A, region: Region) -> List[Tuple[complex, float]]:
    """(eigenvalue, margin) pairs; margin min_k [h_k - Re(e^{-i theta_k} lambda)] is positive inside."""
    thetas, hs = region.thetas, region.support
    return [(complex(lam), geometry.support_margin(lam, thetas, hs)) for lam in eigenvalues(A)]


def spectrum_hull(A) -> np.ndarray:
    """Convex hull of the eigenvalues."""
    return geometry.convex_hull(eigenvalues(A))


def certify_halfplane(A, norm: NormSpec, theta: float, omega: float, grid_spec: Optional[GridSpec] = None, *,
                      cert_tol: Optional[float] = None, seed: Optional[int] = None) -> Certificate:
    """Check ||R(lambda, A)|| * (Re(e^{-i theta} lambda) - omega) <= 1 over a grid in the half-plane.

    A grid point on the spectrum, or a singular solve, is a hard failure
    recorded with an infinite ratio; it ends the check.
    """
    A = as_matrix(A)
    if not (math.isfinite(theta) and math.isfinite(omega)):
        raise InputError("theta and omega must be finite")
    cert_tol = settings.cert_tol if cert_tol is None else cert_tol
    grid_spec = grid_spec or GridSpec.default_for(A)
    grid = grid_spec.points(theta, omega)
    eigs = eigenvalues(A)
    rotation = np.exp(-1j * theta)

    ratios = np.full(grid.shape, np.nan)
    failures = []
    # maximiser at the previous grid point joins the restarts at the next
    warm = None
    for index, lam in enumerate(grid):
        distance = (rotation * lam).real - omega
        if np.min(np.abs(lam - eigs)) <= _HARD_FAILURE_DISTANCE:
            ratios[index] = math.inf
            failures.append((complex(lam), math.inf))
            logger.info(f"certificate hits the spectrum at lambda={lam}")
            break
        try:
            est = resolvent_norm_estimate(A, lam, norm, seed=seed, eigs=eigs,
                                          starts=[warm] if warm is not None else None)
            warm = est.vector
            ratio = est.value * distance
        except SingularityError:
            ratio = math.inf
        ratios[index] = ratio
        if ratio > 1.0 + cert_tol:
            failures.append((complex(lam), float(ratio)))
        if math.isinf(ratio):
            break

    evaluated = np.where(np.isnan(ratios), -math.inf, ratios)
    worst_index = int(np.argmax(evaluated))
    worst = float(evaluated[worst_index])
    return Certificate(
        theta=float(theta),
        omega=float(omega),
        grid=grid,
        ratios=ratios,
        worst_ratio=worst,
        worst_lambda=complex(grid[worst_index]),
        passed=worst <= 1.0 + cert_tol,
        failures=tuple(failures),
        cert_tol=cert_tol,
    )


def _fit_sector(outer: np.ndarray, right: float, resolution: float, atol: float) -> Optional[SectorBounds]:
    """Left-opening sector with its vertex where the region touches Re z = h(0).

    A compact set fits any sector once the vertex moves far enough right, so
    the vertex is held at the touching point and only the half-opening is
    fitted. An edge lying along the line, or an opening within
    ``resolution`` of pi/2, gives no sector.
    """
    touching = outer[outer.real >= right - atol]
    if np.ptp(touching.imag) > atol:
        return None
    vertex = complex(right, float(np.mean(touching.imag)))
    offsets = vertex - outer
    offsets = offsets[np.abs(offsets) > atol]
    delta = float(np.max(np.abs(np.angle(offsets)), initial=0.0))
    if delta >= math.pi / 2 - resolution:
        return None
    return SectorBounds(vertex, delta)


def classify_region(region: Region, tol: float = 1e-9) -> ShapeClass:
    """Strip, sector and imaginary-axis tests on the support function."""
    scale = 1.0 + region.radius
    atol = tol * scale
    within_axis = support_at(region, 0.0) <= atol and support_at(region, math.pi) <= atol

    outer = region.outer_vertices
    best = None
    for phi in region.thetas[region.thetas < math.pi]:
        upper = geometry.support(outer, phi)
        lower = -geometry.support(outer, phi + math.pi)
        if best is None or upper - lower < best.upper - best.lower - atol:
            best = StripBounds(float(phi), float(lower), float(upper))

    sector = _fit_sector(outer, geometry.support(outer, 0.0), math.pi / len(region.thetas), atol)
    return ShapeClass(strip=best, sector=sector, within_imaginary_axis=within_axis)
