"""Logarithmic norms (matrix measures) mu(A) for l^p and renormed norms.

Three estimators:
  - closed forms for l^1, l^2 and l^inf,
  - the one-sided difference quotient (||I + hA|| - 1)/h for h = 2^-k,
  - the duality formula sup Re <Ax, j(x)> over unit x.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np
import scipy.linalg
import scipy.optimize

from shared.config import settings
from shared.exceptions import InputError
from shared.utils import angle_grid, make_rng
from spectrum.matcore import (
    NormSpec,
    as_matrix,
    as_vector,
    dual_witness,
    lp_dual,
    lp_norms,
    op_norm,
    pairing,
    power_iterate_batch,
)

logger = logging.getLogger(__name__)

# full enumeration of l^1 edges and l^inf phase patterns up to this size
_ENUMERATION_MAX_N = 8
_VERTEX_SAMPLES = 4096
_QUOTIENT_ITERATIONS = 50
# batched gradient steps before the best starts are polished by BFGS
_ASCENT_STEPS = 40
_POLISHED = 2
_BFGS_MAX_ITER = 500
_PHASES = np.array([1.0, 1j, -1.0, -1j])


class LogNormMethod(str, Enum):
    """Estimator that produced a log-norm value."""
    CLOSED = "closed"
    QUOTIENT = "quotient"
    DUALITY = "duality"


@dataclass(frozen=True, eq=False)
class LogNormResult:
    """mu(A) with the estimator used and its diagnostics.

    ``witness`` is a unit vector and ``dual`` the member of its duality set
    with Re <A witness, dual> = ``value``. ``residual`` is the convergence
    diagnostic: the last decrement of a quotient estimate, the stationarity
    gradient norm of a duality search. ``direction`` is the best direction
    a quotient estimate found, kept for warm-starting neighbouring estimates.
    """

    value: float
    method: LogNormMethod
    witness: Optional[np.ndarray] = None
    dual: Optional[np.ndarray] = None
    residual: float = 0.0
    converged: bool = True
    levels: int = 0
    direction: Optional[np.ndarray] = None


def _normalize_phase(x: np.ndarray, f: Optional[np.ndarray] = None):
    """Rotate so the largest-modulus coordinate of x is real positive."""
    k = int(np.argmax(np.abs(x)))
    if x[k] == 0:
        return x, f
    phase = x[k] / abs(x[k])
    x = x / phase
    if f is not None:
        f = f * phase
    return x, f


def pairing_value(A, x, j=None, *, norm: NormSpec = NormSpec()) -> complex:
    """<Ax, j> with j defaulting to the canonical duality witness of x.

    For unit x the result is a point of the numerical range. Passing j
    selects another member of a multivalued duality set (p in {1, inf}).
    """
    A = as_matrix(A)
    x = as_vector(x)
    if j is None:
        j = dual_witness(x, norm)
    return pairing(A @ x, j)


def lognorm_closed(A, p: float) -> LogNormResult:
    """Exact mu_p(A) for p in {1, 2, inf}, with an attaining witness pair."""
    A = as_matrix(A)
    n = A.shape[0]
    if p == 2.0:
        H = 0.5 * (A + A.conj().T)
        w, V = scipy.linalg.eigh(H)
        x, _ = _normalize_phase(V[:, -1])
        return LogNormResult(float(w[-1]), LogNormMethod.CLOSED, x, np.conj(x))

    mods = np.abs(A)
    diag = np.diag(A)
    if p == 1.0:
        # Re a_jj + sum_{i != j} |a_ij|, attained at e_j
        col = diag.real + mods.sum(axis=0) - np.abs(diag)
        j = int(np.argmax(col))
        f = np.conj(np.divide(A[:, j], mods[:, j], out=np.ones(n, dtype=complex), where=mods[:, j] > 0))
        f[j] = 1.0
        x = np.zeros(n, dtype=complex)
        x[j] = 1.0
        return LogNormResult(float(col[j]), LogNormMethod.CLOSED, x, f)
    if math.isinf(p):
        row = diag.real + mods.sum(axis=1) - np.abs(diag)
        i = int(np.argmax(row))
        x = np.conj(np.divide(A[i], mods[i], out=np.ones(n, dtype=complex), where=mods[i] > 0))
        x[i] = 1.0
        f = np.zeros(n, dtype=complex)
        f[i] = 1.0
        return LogNormResult(float(row[i]), LogNormMethod.CLOSED, x, f)
    raise InputError(f"no closed form for p={p:g}")


def lognorm_quotient(A, norm: NormSpec, *, seed: Optional[int] = None, start: Optional[np.ndarray] = None,
                     tol: Optional[float] = None, max_level: Optional[int] = None) -> LogNormResult:
    """mu(A) as the limit of (||I + hA|| - 1)/h along h = 2^-k.

    Stops once successive quotients differ by less than ``tol`` or at
    ``max_level``; the residual is the last decrement.
    """
    A = as_matrix(A)
    seed = settings.seed if seed is None else seed
    tol = settings.quotient_tol if tol is None else tol
    max_level = settings.quotient_max_level if max_level is None else max_level
    if norm.is_renormed:
        return norm.renorm.lognorm_quotient(A, seed=seed, start=start, tol=tol, max_level=max_level)

    n = A.shape[0]
    eye = np.eye(n, dtype=complex)
    hs = 2.0 ** -np.arange(max_level + 1)
    batch, x = None, None
    if not norm.is_closed_form:
        x0 = start if start is not None else lognorm_duality(A, norm, seed=seed).witness
        # all levels iterate together, each from x0
        X0 = np.repeat(np.asarray(x0, dtype=complex)[:, None], len(hs), axis=1)
        batch = power_iterate_batch(A, norm.p, X0, h=hs, rtol=1e-15, max_iter=_QUOTIENT_ITERATIONS)

    previous, quotient, decrement, level = None, 0.0, math.inf, 0
    for level in range(max_level + 1):
        h = float(hs[level])
        if batch is None:
            nb = op_norm(eye + h * A, norm)
        else:
            nb, x = float(batch.values[level]), batch.vectors[:, level]
        quotient = (nb - 1.0) / h
        logger.debug(f"quotient level {level}: h={h:.3g} q={quotient:.16g}")
        if previous is not None:
            decrement = previous - quotient
            if abs(decrement) < tol:
                break
        previous = quotient

    converged = abs(decrement) < tol
    if not converged:
        logger.warning(f"difference quotient did not settle (last decrement {decrement:.3g})")
    return LogNormResult(
        value=float(quotient),
        method=LogNormMethod.QUOTIENT,
        residual=float(abs(decrement)),
        converged=converged,
        levels=level + 1,
        direction=x,
    )


def lognorm_duality(A, norm: NormSpec, *, seed: Optional[int] = None, restarts: Optional[int] = None,
                    starts: Optional[Sequence[np.ndarray]] = None, max_iter: Optional[int] = None) -> LogNormResult:
    """mu(A) = sup Re <Ax, j(x)> over unit x, with the attaining witness.

    Smooth exponents climb from every start at once by gradient ascent over
    C^n viewed as R^2n, then polish the given starts and the best restarts
    with BFGS; ``max_iter`` caps both stages. For p in {1, inf} the supremum
    sits on vertices and edges of the unit ball, which are enumerated for
    small n and sampled beyond.
    """
    A = as_matrix(A)
    if norm.is_renormed:
        raise InputError("duality formula needs an l^p norm")
    seed = settings.seed if seed is None else seed
    restarts = settings.restarts if restarts is None else restarts
    max_iter = _BFGS_MAX_ITER if max_iter is None else max_iter
    if max_iter < 1:
        raise InputError(f"max_iter must be positive, got {max_iter}")
    if norm.is_smooth:
        return _smooth_duality(A, norm.p, make_rng(seed, 21), restarts, starts, max_iter)
    return _vertex_duality(A, norm.p, make_rng(seed, 22))


def _pairing_batch(X: np.ndarray, A: np.ndarray, p: float):
    """F(x) = Re <Ax, w(x)> / ||x||_p^p with w = |x|^(p-2) conj(x) for each column, and G = dF/dx.

    G is the Wirtinger gradient, d F = Re sum_k G_k dx_k, so conj(G) is the
    ascent direction.
    """
    mods = np.abs(X)
    N = np.sum(mods ** p, axis=0)
    N = np.where(N > 0, N, 1.0)
    nonzero = mods > 0
    safe = np.where(nonzero, mods, 1.0)
    mp2 = np.where(nonzero, safe ** (p - 2.0), 0.0)
    w = mp2 * np.conj(X)
    C = A @ X
    F = np.sum(C * w, axis=0).real / N

    mp4 = np.where(nonzero, safe ** (p - 4.0), 0.0)
    a = 0.5 * (p - 2.0) * mp4 * np.conj(X) ** 2
    b = 0.5 * p * mp2
    G = (A.T @ w + C * a + np.conj(C * b) - F * p * w) / N
    return F, G


def _pairing_objective(v: np.ndarray, A: np.ndarray, p: float):
    """F and its gradient in the real coordinates (Re x, Im x)."""
    n = A.shape[0]
    F, G = _pairing_batch((v[:n] + 1j * v[n:])[:, None], A, p)
    G = G[:, 0]
    return float(F[0]), np.concatenate([G.real, -G.imag])


def _ascend(A: np.ndarray, p: float, X: np.ndarray, steps: int):
    """Gradient ascent on every column with a per-column step that doubles on success and halves otherwise."""
    X = X / lp_norms(X, p)
    F, G = _pairing_batch(X, A, p)
    step = np.full(X.shape[1], 1.0 / (1.0 + float(np.max(np.abs(A).sum(axis=0)))))
    with np.errstate(divide="ignore", invalid="ignore"):
        for _ in range(steps):
            Y = X + step * np.conj(G)
            Y = Y / lp_norms(Y, p)
            F_new, G_new = _pairing_batch(Y, A, p)
            better = F_new >= F
            X = np.where(better, Y, X)
            F = np.where(better, F_new, F)
            G = np.where(better, G_new, G)
            step = np.where(better, 2.0 * step, 0.5 * step)
    return X, F


def _smooth_duality(A: np.ndarray, p: float, rng: np.random.Generator, restarts: int,
                    starts: Optional[Sequence[np.ndarray]], max_iter: int) -> LogNormResult:
    n = A.shape[0]
    fixed = [np.asarray(s, dtype=complex) for s in (starts or []) if s is not None and np.any(s)]
    # plus the closed-form l^2 witness
    candidates = fixed + [lognorm_closed(A, 2.0).witness]
    for _ in range(restarts):
        candidates.append(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    X, F = _ascend(A, p, np.stack(candidates, axis=1), min(_ASCENT_STEPS, max_iter))
    # given starts are always polished
    ranked = [int(k) for k in np.argsort(-F, kind="stable") if k >= len(fixed)]
    polished = list(range(len(fixed))) + ranked[:_POLISHED]

    def objective(v):
        F, grad = _pairing_objective(v, A, p)
        return -F, -grad

    best = None
    for k in polished:
        x0 = X[:, k]
        v0 = np.concatenate([x0.real, x0.imag])
        res = scipy.optimize.minimize(objective, v0, jac=True, method="BFGS",
                                      options={"gtol": 1e-10, "maxiter": max_iter})
        x = res.x[:n] + 1j * res.x[n:]
        nx = lp_norms(x, p)
        if not np.isfinite(nx) or nx == 0:
            continue
        x = x / nx
        f = lp_dual(x, p)
        x, f = _normalize_phase(x, f)
        value = pairing(A @ x, f).real
        if best is None or value > best[0]:
            _, grad = _pairing_objective(np.concatenate([x.real, x.imag]), A, p)
            best = (value, x, f, float(np.linalg.norm(grad)))

    if best is None:
        raise InputError("no usable start vector for the duality optimiser")
    value, x, f, gnorm = best
    converged = gnorm < 1e-6
    if not converged:
        logger.warning(f"duality optimiser stopped with gradient norm {gnorm:.3g}")
    return LogNormResult(value, LogNormMethod.DUALITY, x, f, residual=gnorm, converged=converged)


def _l1_candidates(n: int, rng: np.random.Generator) -> np.ndarray:
    columns = [np.eye(n, dtype=complex)]
    if n <= _ENUMERATION_MAX_N:
        for i, j in itertools.combinations(range(n), 2):
            block = np.zeros((n, len(_PHASES)), dtype=complex)
            block[i] = 0.5
            block[j] = 0.5 * _PHASES
            columns.append(block)
    else:
        X = np.zeros((n, _VERTEX_SAMPLES), dtype=complex)
        cols = np.arange(_VERTEX_SAMPLES)
        i = rng.integers(n, size=_VERTEX_SAMPLES)
        j = rng.integers(n, size=_VERTEX_SAMPLES)
        t = rng.uniform(size=_VERTEX_SAMPLES)
        X[i, cols] = t
        X[j, cols] += (1.0 - t) * _PHASES[rng.integers(4, size=_VERTEX_SAMPLES)]
        columns.append(X)
    X = np.concatenate(columns, axis=1)
    return X[:, lp_norms(X, 1.0) > 0]


def _linf_candidates(A: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    n = A.shape[0]
    mods = np.abs(A)
    aligned = np.conj(np.divide(A, mods, out=np.ones_like(A), where=mods > 0))
    np.fill_diagonal(aligned, 1.0)
    columns = [aligned.T]
    if 1 < n <= _ENUMERATION_MAX_N:
        patterns = np.array(list(itertools.product(range(4), repeat=n - 1)), dtype=int)
        X = np.ones((n, patterns.shape[0]), dtype=complex)
        X[1:] = _PHASES[patterns].T
        columns.append(X)
    elif n > _ENUMERATION_MAX_N:
        columns.append(_PHASES[rng.integers(4, size=(n, _VERTEX_SAMPLES))])
    return np.concatenate(columns, axis=1)


def _vertex_duality(A: np.ndarray, p: float, rng: np.random.Generator) -> LogNormResult:
    n = A.shape[0]
    if p == 1.0:
        X = _l1_candidates(n, rng)
        X = X / lp_norms(X, 1.0)
        C = A @ X
        phase_x = np.conj(np.divide(X, np.abs(X), out=np.zeros_like(X), where=np.abs(X) > 0))
        phase_c = np.conj(np.divide(C, np.abs(C), out=np.zeros_like(C), where=np.abs(C) > 0))
        # coordinates off the support are free in the unit disk; align them with Ax
        F = np.where(X != 0, phase_x, phase_c)
        values = np.sum(C * F, axis=0).real
        s = int(np.argmax(values))
        x, f = _normalize_phase(X[:, s], F[:, s])
        return LogNormResult(float(values[s]), LogNormMethod.DUALITY, x, f)

    X = _linf_candidates(A, rng)
    C = A @ X
    # every coordinate is active on a vertex; pick the best e_k conj(x_k)
    G = (C * np.conj(X)).real
    k = np.argmax(G, axis=0)
    values = G[k, np.arange(X.shape[1])]
    s = int(np.argmax(values))
    x = X[:, s]
    f = np.zeros(n, dtype=complex)
    f[k[s]] = np.conj(x[k[s]])
    x, f = _normalize_phase(x, f)
    return LogNormResult(float(values[s]), LogNormMethod.DUALITY, x, f)


def lognorm(A, norm: NormSpec, *, seed: Optional[int] = None) -> LogNormResult:
    """Best available estimate: closed form when one exists, the quotient otherwise."""
    if norm.is_closed_form:
        return lognorm_closed(A, norm.p)
    return lognorm_quotient(A, norm, seed=seed)


def sample_numrange(A, norm: NormSpec, count: int, *, seed: Optional[int] = None,
                    witness_angles: int = 8) -> np.ndarray:
    """Points <Ax, j> of the numerical range.

    ``count`` random unit vectors (with random duality members where the
    duality set is not a singleton), followed by the duality witnesses of
    e^{-i phi} A at ``witness_angles`` angles phi.
    """
    A = as_matrix(A)
    if norm.is_renormed:
        raise InputError("numerical range sampling needs an l^p norm")
    if count < 0:
        raise InputError(f"sample count must be non-negative, got {count}")
    seed = settings.seed if seed is None else seed
    rng = make_rng(seed, 23)
    n = A.shape[0]
    p = norm.p

    X = rng.standard_normal((n, count)) + 1j * rng.standard_normal((n, count))
    if p == 1.0:
        # half the samples on low-dimensional faces of the ball
        sparse = rng.uniform(size=(n, count)) < 0.5
        sparse[:, : count // 2] = False
        keep = rng.integers(n, size=count)
        sparse[keep, np.arange(count)] = False
        X[sparse] = 0.0
        X = X / lp_norms(X, 1.0)
        radius = np.sqrt(rng.uniform(size=(n, count)))
        free = radius * np.exp(2j * math.pi * rng.uniform(size=(n, count)))
        F = np.where(X != 0, lp_dual(X, 1.0), free)
    elif math.isinf(p):
        mods = rng.uniform(size=(n, count))
        mods[rng.uniform(size=(n, count)) < 0.3] = 1.0
        mods[rng.integers(n, size=count), np.arange(count)] = 1.0
        X = mods * np.exp(2j * math.pi * rng.uniform(size=(n, count)))
        active = mods == 1.0
        weights = np.where(active, rng.exponential(size=(n, count)), 0.0)
        weights = weights / weights.sum(axis=0)
        F = weights * np.conj(X)
    else:
        X = X / lp_norms(X, p)
        F = lp_dual(X, p)
    points = np.sum((A @ X) * F, axis=0) if count else np.zeros(0, dtype=complex)

    extra = []
    for phi in angle_grid(witness_angles) if witness_angles else []:
        rotated = np.exp(-1j * phi) * A
        if norm.is_closed_form:
            res = lognorm_closed(rotated, p)
        else:
            res = lognorm_duality(rotated, norm, seed=seed, restarts=4)
        extra.append(pairing(A @ res.witness, res.dual))
    return np.concatenate([points, np.asarray(extra, dtype=complex)])
