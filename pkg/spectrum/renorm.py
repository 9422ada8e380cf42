"""Hildebrandt renorming.

For omega above the spectral abscissa of A_theta = e^{-i theta} A,

    |||x||| = sup_{t >= 0} || e^{-omega t} e^{t A_theta} x ||_base

is an equivalent norm in which e^{t A_theta} is omega-contractive. The
supremum runs over a finite grid [0, T]; T is doubled until
M * tail(T) < 1, where M bounds the propagator norms on the grid and
tail(T) = ||e^{-omega T} e^{T A_theta}||. Past T every propagated vector is
then shorter than the vector itself, so truncation loses nothing.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from shared.config import settings
from shared.exceptions import InputError, NumericalError
from shared.utils import angle_grid, derive_seed, make_rng
from spectrum import geometry
from spectrum.lognorm import LogNormMethod, LogNormResult
from spectrum.matcore import NormSpec, OpNormEstimate, as_matrix, lp_norms, op_norm, spectral_abscissa
from spectrum.numspec import (
    Region,
    SupportSample,
    build_region,
    spectrum_hull,
    support_sweep,
    support_value,
)
from spectrum.workers import TaskPool

logger = logging.getLogger(__name__)

_ABSCISSA_MARGIN = 1e-6
_POSTCONDITION_TOL = 1e-3
_POOL_KEEP = 6
_POOL_SPAWN = 6


def _propagators(shifted: np.ndarray, ts: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore", invalid="ignore"):
        stack = scipy.linalg.expm(ts[:, None, None] * shifted[None, :, :])
    if not np.all(np.isfinite(stack)):
        raise NumericalError("propagator grid overflowed")
    return stack


def _stack_norms(stack: np.ndarray, p: float) -> np.ndarray:
    """Operator norms of a stack of matrices; an upper bound for exponents other than 1, 2, inf."""
    mods = np.abs(stack)
    one = mods.sum(axis=1).max(axis=1)
    inf = mods.sum(axis=2).max(axis=1)
    if p == 1.0:
        return one
    if math.isinf(p):
        return inf
    if p == 2.0:
        return np.linalg.norm(stack, ord=2, axis=(1, 2))
    # Riesz-Thorin interpolation between l^1 and l^inf
    return one ** (1.0 / p) * inf ** (1.0 - 1.0 / p)


def _ascent(score: Callable[[np.ndarray], np.ndarray], n: int, rng: np.random.Generator,
            starts: Sequence[np.ndarray], samples: int, rounds: int) -> Tuple[np.ndarray, np.ndarray, float]:
    """Random-direction ascent; returns the best pool (columns), their scores and the last gain."""
    columns = [np.asarray(s, dtype=complex).reshape(n, 1) for s in starts if s is not None and np.any(s)]
    columns.append(np.eye(n, dtype=complex))
    columns.append(rng.standard_normal((n, samples)) + 1j * rng.standard_normal((n, samples)))
    X = np.concatenate(columns, axis=1)
    X = X / np.linalg.norm(X, axis=0)
    values = score(X)
    keep = min(_POOL_KEEP, X.shape[1])
    order = np.argsort(-values, kind="stable")[:keep]
    X, values = X[:, order], values[order]

    step, gain = 0.5, math.inf
    for _ in range(rounds):
        noise = rng.standard_normal((n, keep, _POOL_SPAWN)) + 1j * rng.standard_normal((n, keep, _POOL_SPAWN))
        trial = (X[:, :, None] + step / math.sqrt(2 * n) * noise).reshape(n, keep * _POOL_SPAWN)
        trial = trial / np.linalg.norm(trial, axis=0)
        pooled = np.concatenate([X, trial], axis=1)
        pooled_values = np.concatenate([values, score(trial)])
        order = np.argsort(-pooled_values, kind="stable")[:keep]
        gain = float(pooled_values[order[0]] - values[0])
        X, values = pooled[:, order], pooled_values[order]
        step *= 0.5
    return X, values, gain


@dataclass(frozen=True, eq=False)
class RenormSpec:
    """A validated Hildebrandt renorm on its certified time grid."""

    A: np.ndarray
    theta: float
    omega: float
    base: NormSpec
    t_grid: np.ndarray
    propagators: np.ndarray
    bound: float
    tail: float

    @property
    def horizon(self) -> float:
        return float(self.t_grid[-1])

    @property
    def t_step(self) -> float:
        return float(self.t_grid[1] - self.t_grid[0]) if self.t_grid.size > 1 else 0.0

    def vec_norms(self, X: np.ndarray) -> np.ndarray:
        """|||x||| for a vector, or for each column of a matrix."""
        Y = np.matmul(self.propagators, X)
        return lp_norms(Y, self.base.p, axis=1).max(axis=0)

    def vec_norm(self, x) -> float:
        return float(self.vec_norms(np.asarray(x, dtype=complex)))

    def operator_norm(self, B, *, seed: Optional[int] = None,
                      starts: Optional[Sequence[np.ndarray]] = None) -> OpNormEstimate:
        """Lower bound on the induced norm of B by random-direction ascent."""
        B = as_matrix(B)
        seed = settings.seed if seed is None else seed
        n = B.shape[0]

        def ratio(X: np.ndarray) -> np.ndarray:
            return self.vec_norms(B @ X) / self.vec_norms(X)

        X, values, gain = _ascent(ratio, n, make_rng(seed, 31), starts or [],
                                  settings.renorm_samples, settings.renorm_rounds)
        value = float(values[0])
        return OpNormEstimate(value, gain <= 1e-6 * max(1.0, value), max(gain, 0.0), X[:, 0])

    def lognorm_quotient(self, C, *, seed: Optional[int] = None, start: Optional[np.ndarray] = None,
                         tol: Optional[float] = None, max_level: Optional[int] = None) -> LogNormResult:
        """(|||I + hC||| - 1)/h over h = 2^-k, maximised over a pool of directions.

        The pool comes from an ascent at a small reference step. Products with
        the propagators are cached, so every level costs one pass over the grid.
        """
        C = as_matrix(C)
        seed = settings.seed if seed is None else seed
        tol = settings.quotient_tol if tol is None else tol
        max_level = settings.quotient_max_level if max_level is None else max_level
        n = C.shape[0]
        step = 1e-6 / (1.0 + op_norm(C, NormSpec(2.0)))

        def excess(X: np.ndarray) -> np.ndarray:
            base = self.vec_norms(X)
            return (self.vec_norms(X + step * (C @ X)) - base) / (step * base)

        pool, _, _ = _ascent(excess, n, make_rng(seed, 32), [start] if start is not None else [],
                             settings.renorm_samples, settings.renorm_rounds)
        Y0 = np.matmul(self.propagators, pool)
        Y1 = np.matmul(self.propagators, C @ pool)
        p = self.base.p
        den = lp_norms(Y0, p, axis=1).max(axis=0)

        previous, quotient, decrement, level, best = None, 0.0, math.inf, 0, 0
        for level in range(max_level + 1):
            h = 2.0 ** -level
            num = lp_norms(Y0 + h * Y1, p, axis=1).max(axis=0)
            candidates = (num - den) / (h * den)
            best = int(np.argmax(candidates))
            quotient = float(candidates[best])
            logger.debug(f"renormed quotient level {level}: h={h:.3g} q={quotient:.16g}")
            if previous is not None:
                decrement = previous - quotient
                if abs(decrement) < tol:
                    break
            previous = quotient

        return LogNormResult(
            value=quotient,
            method=LogNormMethod.QUOTIENT,
            residual=float(abs(decrement)),
            converged=abs(decrement) < tol,
            levels=level + 1,
            direction=pool[:, best],
        )


def build_hildebrandt_norm(A, theta: float, omega: float, base: Optional[NormSpec] = None,
                           t_grid: Optional[Sequence[float]] = None, *, t_step: Optional[float] = None,
                           t_max: Optional[float] = None) -> RenormSpec:
    """Renorm making e^{t e^{-i theta} A} omega-contractive.

    Raises InputError unless omega exceeds the spectral abscissa of the
    rotated matrix by 1e-6, and NumericalError when the grid cannot be
    certified before ``t_max``.
    """
    A = as_matrix(A)
    base = NormSpec(2.0) if base is None else base
    if base.is_renormed:
        raise InputError("the base norm must be an l^p norm")
    if not (math.isfinite(theta) and math.isfinite(omega)):
        raise InputError("theta and omega must be finite")
    rotated = np.exp(-1j * theta) * A
    abscissa = spectral_abscissa(rotated)
    if omega <= abscissa + _ABSCISSA_MARGIN:
        raise InputError(f"omega={omega:.10g} must exceed the spectral abscissa {abscissa:.10g}")
    shifted = rotated - omega * np.eye(A.shape[0])

    if t_grid is not None:
        ts = np.asarray(t_grid, dtype=float)
        if ts.ndim != 1 or ts.size < 2 or ts[0] != 0.0 or np.any(np.diff(ts) <= 0.0):
            raise InputError("renorm grid must start at 0 and increase")
        stack = _propagators(shifted, ts)
        norms = _stack_norms(stack, base.p)
        bound, tail = float(norms.max()), float(norms[-1])
        if bound * tail >= 1.0:
            raise NumericalError(f"renorm grid ending at {ts[-1]:.6g} does not certify truncation")
    else:
        step = settings.renorm_t_step if t_step is None else t_step
        cap = settings.renorm_t_max if t_max is None else t_max
        if not (0.0 < step < cap):
            raise InputError(f"invalid renorm grid step {step} for horizon {cap}")
        horizon = min(cap, max(1.0, 4.0 / (omega - abscissa)))
        while True:
            ts = step * np.arange(int(round(horizon / step)) + 1)
            stack = _propagators(shifted, ts)
            norms = _stack_norms(stack, base.p)
            bound, tail = float(norms.max()), float(norms[-1])
            if bound * tail < 1.0:
                break
            if horizon >= cap:
                raise NumericalError(
                    f"renorm tail did not decay by t={cap:g} (bound {bound:.3g}, tail {tail:.3g})",
                    best=bound,
                )
            horizon = min(2.0 * horizon, cap)

    logger.info(
        f"renorm grid: theta={theta:.6g} omega={omega:.6g} T={ts[-1]:.6g} points={ts.size} M={bound:.6g}"
    )
    return RenormSpec(A, float(theta), float(omega), base, ts, stack, bound, tail)


def renormed_region(spec: RenormSpec, K: Optional[int] = None, seed: Optional[int] = None, *,
                    threads: Optional[int] = None) -> Region:
    """Numerical spectrum of A in the renormed norm.

    Unconverged quotients and a missed contractivity check at spec.theta are
    recorded in the region's diagnostics rather than raised.
    """
    norm = NormSpec.renormed(spec)
    samples = support_sweep(spec.A, norm, K, seed, threads=threads)
    diagnostics = []
    unsettled = sum(1 for s in samples if s.residual >= settings.quotient_tol)
    if unsettled:
        diagnostics.append(f"{unsettled} angles with unsettled difference quotients")

    h_theta = support_value(spec.A, norm, spec.theta, seed=seed).h
    if h_theta > spec.omega + _POSTCONDITION_TOL:
        logger.warning(f"renormed support {h_theta:.6g} exceeds omega={spec.omega:.6g} at theta={spec.theta:.6g}")
        diagnostics.append(f"contractivity missed at theta={spec.theta:.6g}: h={h_theta:.6g}")
    return build_region(samples, norm_label=norm.label, diagnostics=diagnostics)


@dataclass(frozen=True, eq=False)
class HullReportEntry:
    omega: float
    region: Region
    radius: float
    hausdorff_to_conv_spectrum: float
    fan: int

    def as_record(self) -> dict:
        return {
            "omega": self.omega,
            "radius": self.radius,
            "hausdorff_to_conv_spectrum": self.hausdorff_to_conv_spectrum,
            "fan": self.fan,
        }


@dataclass(frozen=True, eq=False)
class HullConvergenceReport:
    entries: Tuple[HullReportEntry, ...]
    monotone: bool
    spectrum_hull: np.ndarray

    @property
    def final_hausdorff(self) -> float:
        return self.entries[-1].hausdorff_to_conv_spectrum

    def as_records(self) -> List[dict]:
        return [entry.as_record() for entry in self.entries]


def _fan_cells(K: int, fan: Optional[int]) -> Tuple[np.ndarray, List[List[int]]]:
    thetas = angle_grid(K)
    if fan is None:
        return thetas, [[k] for k in range(K)]
    if fan < 1:
        raise InputError(f"fan size must be positive, got {fan}")
    directions = angle_grid(fan)
    cells: List[List[int]] = [[] for _ in range(fan)]
    for k, theta in enumerate(thetas):
        cells[int(round(theta * fan / (2.0 * math.pi))) % fan].append(k)
    return directions, cells


def hull_convergence_report(A, base: Optional[NormSpec], omega_list: Sequence[float], K: Optional[int] = None, *,
                            fan: Optional[int] = None, seed: Optional[int] = None,
                            threads: Optional[int] = None) -> HullConvergenceReport:
    """Regions from renorms at decreasing omega and their distance to the eigenvalue hull.

    Each fan direction phi_j is renormed at level s(e^{-i phi_j} A) + omega
    and supplies the support values of the sweep angles in its cell; the
    region for one omega intersects all of them.
    """
    A = as_matrix(A)
    base = NormSpec(2.0) if base is None else base
    omegas = [float(w) for w in omega_list]
    if not omegas:
        raise InputError("omega list is empty")
    if any(w <= _ABSCISSA_MARGIN for w in omegas):
        raise InputError("omega values are excesses over the spectral abscissa and must be positive")
    if any(b >= a for a, b in zip(omegas, omegas[1:])):
        raise InputError("omega list must be strictly decreasing")
    K = settings.renorm_angles if K is None else int(K)
    if K < 3:
        raise InputError(f"need at least 3 angles, got {K}")
    fan = settings.renorm_fan if fan is None else fan
    seed = settings.seed if seed is None else seed
    thetas = angle_grid(K)
    directions, cells = _fan_cells(K, fan)
    fan_size = len(directions)
    hull = spectrum_hull(A)

    entries = []
    for index, omega in enumerate(omegas):
        def direction_task(j: int) -> List[SupportSample]:
            if not cells[j]:
                return []
            phi = float(directions[j])
            level = spectral_abscissa(np.exp(-1j * phi) * A) + omega
            norm = NormSpec.renormed(build_hildebrandt_norm(A, phi, level, base))
            out, start = [], None
            for k in cells[j]:
                res = norm.renorm.lognorm_quotient(np.exp(-1j * thetas[k]) * A,
                                                  seed=derive_seed(seed, index, k), start=start)
                start = res.direction
                out.append(SupportSample(float(thetas[k]), res.value, None, res.method.value, res.residual))
            return out

        chunks = TaskPool(threads, name="fan").map(direction_task, range(fan_size))
        samples = [s for chunk in chunks for s in chunk]
        label = f"hildebrandt(p={base.label}, omega={omega:.6g}, fan={fan_size})"
        region = build_region(samples, norm_label=label)
        distance = geometry.hausdorff(region.outer_vertices, hull)
        logger.info(f"hull report: omega={omega:.6g} radius={region.radius:.6g} hausdorff={distance:.6g}")
        entries.append(HullReportEntry(omega, region, region.radius, distance, fan_size))

    monotone = all(b.radius <= a.radius + _POSTCONDITION_TOL for a, b in zip(entries, entries[1:]))
    if not monotone:
        logger.warning("renormed radii did not shrink monotonically")
    return HullConvergenceReport(tuple(entries), monotone, hull)
