"""Semigroup side: norm curves t -> ||e^{t e^{-i theta} A}|| and the checks built on them."""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from shared.config import settings
from shared.exceptions import ConvergenceError, EquivalenceError, InputError, NumericalError
from shared.utils import format_number
from spectrum.lognorm import lognorm
from spectrum.matcore import NormSpec, as_matrix, mat_exp, op_norm
from spectrum.workers import TaskPool

logger = logging.getLogger(__name__)

_ENVELOPE_RTOL = 1e-9
_PAIRING_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class NormCurve:
    theta: float
    ts: np.ndarray
    values: np.ndarray
    norm: NormSpec
    truncated: bool = False

    @property
    def log_quotients(self) -> np.ndarray:
        """(1/t) log ||T(t)||."""
        return np.log(self.values) / self.ts

    def starts_at_identity(self, generator_norm: float) -> bool:
        """|values[0] - 1| <= 2 ||A|| t_0 whenever ||A|| t_0 < 0.1."""
        t0 = float(self.ts[0])
        if generator_norm * t0 >= 0.1:
            return True
        return abs(float(self.values[0]) - 1.0) <= 2.0 * generator_norm * t0 + 1e-15

    def to_csv(self) -> str:
        rows = ["t,norm"]
        rows.extend(f"{format_number(t)},{format_number(v)}" for t, v in zip(self.ts, self.values))
        return "\n".join(rows) + "\n"


@dataclass(frozen=True)
class EnvelopeCheck:
    passed: bool
    worst_t: float
    worst_ratio: float


@dataclass(frozen=True)
class LimitCheck:
    sup_value: float
    limit_value: float
    max_deviation: float


@dataclass(frozen=True)
class StabilityCheck:
    envelope_ok: bool
    pairing_ok: bool
    lognorm_value: float


def default_t_grid(t_min: Optional[float] = None, t_max: Optional[float] = None,
                   points: Optional[int] = None) -> np.ndarray:
    """Log-spaced times, 1e-4 to 1e2 with 60 points unless overridden."""
    t_min = settings.curve_t_min if t_min is None else t_min
    t_max = settings.curve_t_max if t_max is None else t_max
    points = settings.curve_points if points is None else points
    if not (0.0 < t_min < t_max) or points < 2:
        raise InputError(f"invalid time grid: t_min={t_min}, t_max={t_max}, points={points}")
    return np.logspace(math.log10(t_min), math.log10(t_max), points)


def _validate_grid(t_grid: Sequence[float]) -> np.ndarray:
    ts = np.asarray(t_grid, dtype=float)
    if ts.ndim != 1 or ts.size == 0:
        raise InputError("time grid must be a nonempty list")
    if not np.all(np.isfinite(ts)) or np.any(ts <= 0.0):
        raise InputError("time grid must be positive and finite")
    if np.any(np.diff(ts) <= 0.0):
        raise InputError("time grid must be strictly increasing")
    return ts


def norm_curve(A, norm: NormSpec, theta: float = 0.0, t_grid: Optional[Sequence[float]] = None, *,
               seed: Optional[int] = None, threads: Optional[int] = None) -> NormCurve:
    """Operator norms of e^{t e^{-i theta} A} along the grid.

    An overflowing exponential truncates the curve at the last finite point.
    """
    A = as_matrix(A)
    ts = default_t_grid() if t_grid is None else _validate_grid(t_grid)
    rotated = np.exp(-1j * theta) * A

    def point(t: float) -> Optional[float]:
        try:
            E = mat_exp(rotated, t)
        except ConvergenceError:
            raise
        except NumericalError:
            return None
        return op_norm(E, norm, seed=seed)

    values = TaskPool(threads, name="curve").map(point, ts)
    cut = next((i for i, v in enumerate(values) if v is None or not math.isfinite(v)), len(values))
    truncated = cut < len(values)
    if truncated:
        logger.warning(f"norm curve truncated at t={ts[cut]:.6g} (overflow)")
    curve = NormCurve(float(theta), ts[:cut], np.asarray(values[:cut], dtype=float), norm, truncated)

    if cut and not curve.starts_at_identity(op_norm(A, NormSpec(2.0))):
        logger.warning(f"norm curve starts at {curve.values[0]:.10g}, far from 1 at t={ts[0]:.3g}")
    return curve


def growth_envelope_check(curve: NormCurve, omega: float) -> EnvelopeCheck:
    """Pass iff ||T(t)|| <= e^{omega t} (1 + 1e-9) at every grid point."""
    if curve.ts.size == 0:
        return EnvelopeCheck(True, math.nan, math.nan)
    # compare in log space; e^{omega t} overflows at large t
    excess = np.log(curve.values) - omega * curve.ts
    worst = int(np.argmax(excess))
    return EnvelopeCheck(
        passed=bool(np.all(excess <= math.log1p(_ENVELOPE_RTOL))),
        worst_t=float(curve.ts[worst]),
        worst_ratio=float(math.exp(min(excess[worst], 700.0))),
    )


def subadditive_limit_check(curve: NormCurve, reference: Optional[float] = None,
                            fit_points: int = 10) -> LimitCheck:
    """sup and t -> 0 limit of (1/t) log ||T(t)||.

    The limit comes from a linear fit against t over the smallest times.
    Deviation is measured against ``reference`` (the log norm) when given,
    otherwise between the two estimates.
    """
    if curve.ts.size < 2:
        raise InputError("need at least two curve points")
    quotients = curve.log_quotients
    sup_value = float(np.max(quotients))
    m = min(fit_points, curve.ts.size)
    _, intercept = np.polyfit(curve.ts[:m], quotients[:m], 1)
    limit_value = float(intercept)
    if reference is None:
        deviation = abs(sup_value - limit_value)
    else:
        deviation = max(abs(sup_value - reference), abs(limit_value - reference))
    return LimitCheck(sup_value, limit_value, float(deviation))


def asymptotic_growth(curve: NormCurve) -> float:
    """(1/t) log ||T(t)|| at the largest time, an estimate of the growth bound."""
    if curve.ts.size == 0:
        raise InputError("empty curve")
    return float(np.log(curve.values[-1]) / curve.ts[-1])


def stability_equivalence_check(A, norm: NormSpec, epsilon: float, samples: Optional[int] = None, *,
                                seed: Optional[int] = None) -> StabilityCheck:
    """||T(t)|| <= e^{-eps t} for all t versus Re <Ax, j(x)> <= -eps ||x||^2.

    The two sides are equivalent; a disagreement raises EquivalenceError.
    """
    if not epsilon > 0.0:
        raise InputError(f"epsilon must be positive, got {epsilon}")
    A = as_matrix(A)
    curve = norm_curve(A, norm, 0.0, default_t_grid(points=samples), seed=seed)
    envelope_ok = growth_envelope_check(curve, -epsilon).passed
    mu = lognorm(A, norm, seed=seed).value
    pairing_ok = mu <= -epsilon + _PAIRING_TOL
    if envelope_ok != pairing_ok:
        raise EquivalenceError(
            f"envelope says {envelope_ok} but log norm {mu:.10g} vs -epsilon {-epsilon:.10g} says {pairing_ok}",
            best=mu,
        )
    return StabilityCheck(envelope_ok, pairing_ok, float(mu))
