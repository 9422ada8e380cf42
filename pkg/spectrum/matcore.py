"""Dense complex linear algebra and l^p norm primitives.

Matrices and vectors are plain complex numpy arrays. The duality pairing is
bilinear, <y, f> = sum_k y_k f_k; conjugation lives inside the duality map.
"""
import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Sequence, Union

import numpy as np
import scipy.linalg

from shared.config import settings
from shared.exceptions import ConvergenceError, InputError, NumericalError, SingularityError
from shared.utils import make_rng, parse_p

if TYPE_CHECKING:
    from spectrum.renorm import RenormSpec

logger = logging.getLogger(__name__)

# residual below which a power-method restart counts as converged
_ACCEPT_RESIDUAL = 1e-8
_SINGULAR_RTOL = 1e-10


@dataclass(frozen=True)
class NormSpec:
    """Norm carried by C^n: an l^p norm or a Hildebrandt renorm."""

    p: float = 2.0
    renorm: Optional["RenormSpec"] = None

    def __post_init__(self):
        if math.isnan(self.p) or self.p < 1.0:
            raise InputError(f"exponent p must lie in [1, inf], got {self.p!r}")

    @classmethod
    def lp(cls, p: Union[str, float]) -> "NormSpec":
        return cls(p=parse_p(p))

    @classmethod
    def renormed(cls, spec: "RenormSpec") -> "NormSpec":
        return cls(p=spec.base.p, renorm=spec)

    @property
    def is_renormed(self) -> bool:
        return self.renorm is not None

    @property
    def is_closed_form(self) -> bool:
        """True for l^1, l^2 and l^inf."""
        return not self.is_renormed and (self.p in (1.0, 2.0) or math.isinf(self.p))

    @property
    def is_smooth(self) -> bool:
        return not self.is_renormed and 1.0 < self.p < math.inf

    @property
    def conjugate(self) -> float:
        if self.p == 1.0:
            return math.inf
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)

    @property
    def label(self) -> str:
        base = "inf" if math.isinf(self.p) else format(self.p, "g")
        if self.renorm is None:
            return base
        return f"renormed(p={base}, theta={self.renorm.theta:.6g}, omega={self.renorm.omega:.6g})"


@dataclass(frozen=True, eq=False)
class OpNormEstimate:
    """Operator norm value with its convergence diagnostics."""

    value: float
    converged: bool
    residual: float
    vector: Optional[np.ndarray] = None


def as_matrix(A) -> np.ndarray:
    """Validate and convert to a square, finite complex matrix."""
    try:
        arr = np.asarray(A, dtype=complex)
    except (TypeError, ValueError) as e:
        raise InputError(f"not a numeric matrix: {e}")
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InputError(f"matrix must be square and nonempty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("matrix has non-finite entries")
    return arr


def as_vector(x) -> np.ndarray:
    """Validate and convert to a finite complex vector."""
    try:
        arr = np.asarray(x, dtype=complex)
    except (TypeError, ValueError) as e:
        raise InputError(f"not a numeric vector: {e}")
    if arr.ndim != 1 or arr.shape[0] == 0:
        raise InputError(f"vector must be one-dimensional and nonempty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("vector has non-finite entries")
    return arr


def lp_norms(X: np.ndarray, p: float, axis: int = 0) -> np.ndarray:
    """l^p norms along an axis (columns by default)."""
    return np.linalg.norm(X, ord=p, axis=axis)


def vec_norm(x, norm: NormSpec) -> float:
    """||x|| in the given norm."""
    x = as_vector(x)
    if norm.is_renormed:
        return float(norm.renorm.vec_norm(x))
    return float(np.linalg.norm(x, ord=norm.p))


def _phase_conj(X: np.ndarray) -> np.ndarray:
    mods = np.abs(X)
    unit = np.divide(X, mods, out=np.zeros_like(X), where=mods > 0)
    return np.conj(unit)


def lp_dual(X: np.ndarray, p: float) -> np.ndarray:
    """Duality map of l^p applied to a vector or to each column of a matrix.

    Returns j with <x, j> = ||x||_p^2 and ||j||_q = ||x||_p. For p = 1 the
    coordinates where x vanishes get 0; for p = inf the mass sits on the
    first coordinate of maximal modulus.
    """
    if p == 2.0:
        return np.conj(X)
    mods = np.abs(X)
    nrm = lp_norms(X, p)
    if p == 1.0:
        return nrm * _phase_conj(X)
    if math.isinf(p):
        idx = np.argmax(mods, axis=0)
        out = np.zeros_like(X)
        if X.ndim == 1:
            out[idx] = nrm * _phase_conj(X[idx])
        else:
            cols = np.arange(X.shape[1])
            out[idx, cols] = nrm * _phase_conj(X[idx, cols])
        return out
    safe = np.where(nrm > 0, nrm, 1.0)
    return safe ** (2.0 - p) * mods ** (p - 1.0) * _phase_conj(X)


def dual_witness(x, norm: NormSpec) -> np.ndarray:
    """One member j(x) of the duality set of x."""
    x = as_vector(x)
    if norm.is_renormed:
        raise InputError("duality witnesses are only defined for l^p norms")
    if not np.any(x):
        raise InputError("duality witness of the zero vector is undefined")
    return lp_dual(x, norm.p)


def pairing(y, f) -> complex:
    """Bilinear pairing <y, f> = sum_k y_k f_k."""
    return complex(np.sum(np.asarray(y) * np.asarray(f)))


def op_norm(A, norm: NormSpec, *, seed: Optional[int] = None, restarts: Optional[int] = None,
            starts: Optional[Sequence[np.ndarray]] = None) -> float:
    """Induced operator norm of A."""
    return op_norm_estimate(A, norm, seed=seed, restarts=restarts, starts=starts).value


def op_norm_estimate(A, norm: NormSpec, *, seed: Optional[int] = None, restarts: Optional[int] = None,
                     starts: Optional[Sequence[np.ndarray]] = None, rtol: float = 1e-13,
                     max_iter: int = 2000) -> OpNormEstimate:
    """Operator norm with diagnostics.

    Closed forms for l^1, l^2 and l^inf. Other exponents use the p-norm
    power method with restarts, which returns a lower bound. Renormed norms
    delegate to the renorm's random-direction ascent.
    """
    A = as_matrix(A)
    seed = settings.seed if seed is None else seed
    if norm.is_renormed:
        return norm.renorm.operator_norm(A, seed=seed, starts=starts)

    p = norm.p
    n = A.shape[0]
    if not np.any(A):
        return OpNormEstimate(0.0, True, 0.0, np.eye(n, dtype=complex)[0])

    mods = np.abs(A)
    if p == 1.0:
        col = mods.sum(axis=0)
        j = int(np.argmax(col))
        return OpNormEstimate(float(col[j]), True, 0.0, np.eye(n, dtype=complex)[j])
    if math.isinf(p):
        row = mods.sum(axis=1)
        i = int(np.argmax(row))
        x = _phase_conj(A[i])
        x[x == 0] = 1.0
        return OpNormEstimate(float(row[i]), True, 0.0, x)
    if p == 2.0:
        try:
            _, s, vh = scipy.linalg.svd(A)
        except np.linalg.LinAlgError as e:
            raise NumericalError(f"singular value decomposition failed: {e}")
        return OpNormEstimate(float(s[0]), True, 0.0, np.conj(vh[0]))

    restarts = settings.restarts if restarts is None else restarts
    return _lp_power_method(A, p, make_rng(seed, 11), restarts, starts, rtol, max_iter)


def _lp_power_method(A: np.ndarray, p: float, rng: np.random.Generator, restarts: int,
                     starts: Optional[Sequence[np.ndarray]], rtol: float, max_iter: int) -> OpNormEstimate:
    n = A.shape[0]
    candidates = [np.asarray(s, dtype=complex) for s in (starts or []) if s is not None]
    for _ in range(restarts):
        candidates.append(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    if not candidates:
        candidates.append(np.ones(n, dtype=complex))

    batch = power_iterate_batch(A, p, np.stack(candidates, axis=1), rtol=rtol, max_iter=max_iter)
    for index in range(len(candidates)):
        logger.debug(
            f"power method restart {index}: value={batch.values[index]:.16g} residual={batch.residuals[index]:.3g}"
        )
    best = batch.column(int(np.argmax(batch.values)))

    if best.residual > _ACCEPT_RESIDUAL:
        raise ConvergenceError(
            f"p-norm power method did not converge (p={p:g}, residual={best.residual:.3g})",
            best=best.value,
        )
    return best


@dataclass(frozen=True, eq=False)
class PowerBatch:
    """Per-column outcome of a batched power iteration."""

    values: np.ndarray
    residuals: np.ndarray
    converged: np.ndarray
    vectors: np.ndarray

    def column(self, k: int) -> OpNormEstimate:
        return OpNormEstimate(float(self.values[k]), bool(self.converged[k]), float(self.residuals[k]),
                              self.vectors[:, k])


def power_iterate_batch(A: np.ndarray, p: float, X0: np.ndarray, *, h: Optional[np.ndarray] = None,
                        rtol: float = 1e-13, max_iter: int = 2000) -> PowerBatch:
    """p-norm power iteration (1 < p < inf) on every column of X0 at once.

    Column k iterates on A, or on I + h[k] A when ``h`` is given. A column
    stops at its own convergence, so each one follows the same path as a
    single-vector run. The values are lower bounds.
    """
    q = p / (p - 1.0)
    n, m = X0.shape
    X = np.array(X0, dtype=complex)
    nx = lp_norms(X, p)
    X[:, nx == 0] = n ** (-1.0 / p)
    X = X / np.where(nx > 0, nx, 1.0)
    scale = None if h is None else np.asarray(h, dtype=float)

    values = np.zeros(m)
    residuals = np.full(m, math.inf)
    converged = np.zeros(m, dtype=bool)
    active = np.arange(m)
    for _ in range(max_iter):
        x = X[:, active]
        y = A @ x
        if scale is not None:
            y = x + scale[active] * y
        ny = lp_norms(y, p)
        live = ny > 0
        active, y, ny = active[live], y[:, live], ny[live]
        if active.size == 0:
            break
        values[active] = ny
        w = lp_dual(y, p)
        z = A.T @ w
        if scale is not None:
            z = w + scale[active] * z
        nz = lp_norms(z, q)
        # nz / ny >= ||A x_next|| >= ny; equality marks a stationary point
        res = np.maximum(0.0, (nz / ny - ny) / ny)
        residuals[active] = res
        done = res <= rtol
        converged[active[done]] = True
        active, z, nz = active[~done], z[:, ~done], nz[~done]
        if active.size == 0:
            break
        X[:, active] = lp_dual(z, q) / nz
    return PowerBatch(values, residuals, converged, X)


def mat_exp(A, t: float = 1.0) -> np.ndarray:
    """e^{tA} by scaling and squaring with Pade approximation."""
    A = as_matrix(A)
    if not math.isfinite(t):
        raise InputError(f"time must be finite, got {t!r}")
    with np.errstate(over="ignore", invalid="ignore"):
        E = scipy.linalg.expm(t * A)
    if not np.all(np.isfinite(E)):
        raise NumericalError(f"matrix exponential overflowed at t={t:g}")
    return E


def eigenvalues(A) -> np.ndarray:
    """Eigenvalues with multiplicity, sorted by real then imaginary part."""
    A = as_matrix(A)
    try:
        w = scipy.linalg.eigvals(A)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericalError(f"eigenvalue iteration failed: {e}")
    order = np.lexsort((w.imag, w.real))
    return w[order]


def spectral_abscissa(A) -> float:
    """max Re lambda over the spectrum."""
    return float(np.max(eigenvalues(A).real))


def resolvent(A, lam: complex, *, eigs: Optional[np.ndarray] = None) -> np.ndarray:
    """(lambda - A)^{-1}; raises SingularityError when lambda is in the spectrum."""
    A = as_matrix(A)
    lam = complex(lam)
    if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
        raise InputError(f"lambda must be finite, got {lam!r}")
    eigs = eigenvalues(A) if eigs is None else eigs
    gap = float(np.min(np.abs(lam - eigs)))
    if gap <= _SINGULAR_RTOL * (1.0 + abs(lam)):
        raise SingularityError(f"lambda={lam} lies in the spectrum (distance {gap:.3g})")
    n = A.shape[0]
    try:
        return scipy.linalg.solve(lam * np.eye(n) - A, np.eye(n, dtype=complex))
    except np.linalg.LinAlgError as e:
        raise SingularityError(f"resolvent solve failed at lambda={lam}: {e}")


def resolvent_norm_estimate(A, lam: complex, norm: NormSpec, *, seed: Optional[int] = None,
                            eigs: Optional[np.ndarray] = None,
                            starts: Optional[Sequence[np.ndarray]] = None) -> OpNormEstimate:
    """||R(lambda, A)|| with its maximising vector; ``starts`` join the power-method restarts."""
    return op_norm_estimate(resolvent(A, lam, eigs=eigs), norm, seed=seed, starts=starts)


def resolvent_norm(A, lam: complex, norm: NormSpec, *, seed: Optional[int] = None,
                   eigs: Optional[np.ndarray] = None) -> float:
    """||R(lambda, A)|| in the given norm."""
    return resolvent_norm_estimate(A, lam, norm, seed=seed, eigs=eigs).value
