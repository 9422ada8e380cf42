"""Catalogue of worked example matrices and closed-form expectations for them."""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np

from shared.exceptions import InputError
from shared.utils import make_rng, parse_p
from spectrum import geometry

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ExampleDescriptor:
    name: str
    params: Dict[str, Any]
    matrix: np.ndarray
    notes: str


@dataclass(frozen=True, eq=False)
class ExampleOracle:
    """Expected quantities for an example; None where no closed form is known."""

    name: str
    p: float
    radius: Optional[float] = None
    s_n_at_zero: Optional[float] = None
    support: Optional[Callable[[float], float]] = None
    hull: Optional[np.ndarray] = None
    segment: Optional[Tuple[float, float]] = None


@dataclass(frozen=True)
class _Entry:
    builder: Callable[[Dict[str, Any]], np.ndarray]
    notes: str
    params: Dict[str, str] = field(default_factory=dict)


def _int_param(params: Mapping[str, Any], key: str, default: Optional[int] = None, minimum: int = 1) -> int:
    value = params.get(key, default)
    if value is None:
        raise InputError(f"missing parameter {key!r}")
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise InputError(f"parameter {key!r} must be an integer, got {value!r}")
    if number < minimum or (isinstance(value, float) and value != number):
        raise InputError(f"parameter {key!r} must be an integer >= {minimum}, got {value!r}")
    return number


def _float_param(params: Mapping[str, Any], key: str, default: float) -> float:
    value = params.get(key, default)
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise InputError(f"parameter {key!r} must be a number, got {value!r}")
    if not math.isfinite(number) or number <= 0.0:
        raise InputError(f"parameter {key!r} must be positive and finite, got {value!r}")
    return number


def _symbol(params: Mapping[str, Any]) -> np.ndarray:
    raw = params.get("q")
    if raw is None:
        raise InputError("diag needs the symbol samples 'q'")
    if isinstance(raw, str):
        raw = [item for item in raw.replace(";", ",").split(",") if item.strip()]
    values = []
    for item in raw:
        try:
            if isinstance(item, (list, tuple)) and len(item) == 2:
                values.append(complex(float(item[0]), float(item[1])))
            elif isinstance(item, str):
                values.append(complex(item.strip().replace(" ", "").replace("i", "j")))
            else:
                values.append(complex(item))
        except (TypeError, ValueError):
            raise InputError(f"invalid symbol sample {item!r}")
    q = np.asarray(values, dtype=complex)
    if q.size == 0 or not np.all(np.isfinite(q)):
        raise InputError("symbol samples must be a nonempty list of finite numbers")
    return q


def _laplacian(params: Mapping[str, Any]) -> np.ndarray:
    N = _int_param(params, "N", 16)
    L = _float_param(params, "L", math.pi)
    h = L / (N + 1)
    return (np.diag(-2.0 * np.ones(N)) + np.diag(np.ones(N - 1), 1) + np.diag(np.ones(N - 1), -1)) / h ** 2


def _random(params: Mapping[str, Any]) -> np.ndarray:
    n = _int_param(params, "n", 4)
    rng = make_rng(_int_param(params, "seed", 0, minimum=0))
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def _skew_hermitian(params: Mapping[str, Any]) -> np.ndarray:
    G = _random(params)
    return 0.5 * (G - G.conj().T)


_CATALOGUE: Dict[str, _Entry] = {
    "jordan2": _Entry(
        lambda params: np.array([[0, 1], [0, 0]], dtype=complex),
        "nilpotent 2x2 Jordan block; its numerical spectrum is a disk about 0",
    ),
    "triangular_pm1": _Entry(
        lambda params: np.array([[1, 1], [0, -1]], dtype=complex),
        "upper triangular with eigenvalues 1 and -1; s_n^0 = 1 under l^1",
    ),
    "shifted_cone_B": _Entry(
        lambda params: np.array([[2, 1], [0, 0]], dtype=complex),
        "triangular_pm1 + I; l^1 numerical spectrum is a cone with vertex 2",
    ),
    "diag": _Entry(
        lambda params: np.diag(_symbol(params)),
        "multiplication by the sampled symbol q; numerical spectrum is conv{q}",
        {"q": "comma-separated complex samples, e.g. 1+1j,-1"},
    ),
    "dirichlet_laplacian": _Entry(
        _laplacian,
        "(1/h^2) tridiag(1, -2, 1) with h = L/(N+1); spectrum in [lambda_min, lambda_max], lambda_max -> -1 for L = pi",
        {"N": "interior grid points (default 16)", "L": "interval length (default pi)"},
    ),
    "skew_hermitian_random": _Entry(
        _skew_hermitian,
        "(G - G^*)/2 for complex Gaussian G; generates a unitary group",
        {"n": "dimension (default 4)", "seed": "generator seed (default 0)"},
    ),
    "random": _Entry(
        _random,
        "complex Gaussian matrix",
        {"n": "dimension (default 4)", "seed": "generator seed (default 0)"},
    ),
}


def list_examples() -> List[Tuple[str, str, Dict[str, str]]]:
    """(name, notes, parameter docs) for every example."""
    return [(name, entry.notes, dict(entry.params)) for name, entry in _CATALOGUE.items()]


def make_example(name: str, params: Optional[Mapping[str, Any]] = None) -> ExampleDescriptor:
    entry = _CATALOGUE.get(name)
    if entry is None:
        raise InputError(f"unknown example {name!r}; known: {', '.join(_CATALOGUE)}")
    params = dict(params or {})
    unknown = set(params) - set(entry.params)
    if unknown:
        raise InputError(f"example {name!r} takes no parameter(s) {', '.join(sorted(unknown))}")
    matrix = entry.builder(params)
    return ExampleDescriptor(name, params, matrix, entry.notes)


def jordan_radius(p: float) -> float:
    """Numerical radius of the 2x2 Jordan block under l^p."""
    if p == 1.0 or math.isinf(p):
        return 1.0
    return ((p - 1.0) / p) ** (1.0 - 1.0 / p) * (1.0 / p) ** (1.0 / p)


def laplacian_eigenvalues(N: int, L: float = math.pi) -> np.ndarray:
    """-(4/h^2) sin^2(k pi / (2(N+1))), k = 1..N, in increasing order."""
    h = L / (N + 1)
    k = np.arange(N, 0, -1)
    return -(4.0 / h ** 2) * np.sin(k * math.pi / (2.0 * (N + 1))) ** 2


def _polygon_support(points: np.ndarray) -> Callable[[float], float]:
    return lambda theta: float(np.max((np.exp(-1j * theta) * points).real))


def oracle(name: str, params: Optional[Mapping[str, Any]] = None) -> ExampleOracle:
    """Closed-form expectations; ``params`` may carry the exponent under 'p' (default 2)."""
    params = dict(params or {})
    p = parse_p(params.pop("p", 2.0))
    descriptor = make_example(name, params)

    if name == "jordan2":
        r = jordan_radius(p)
        return ExampleOracle(name, p, radius=r, s_n_at_zero=r, support=lambda theta: r,
                             hull=np.zeros(1, dtype=complex))
    if name in ("triangular_pm1", "shifted_cone_B"):
        shift = -1.0 if name == "triangular_pm1" else 0.0
        hull = np.array([-1.0 + 0j, 1.0 + 0j]) if shift else np.array([0j, 2.0 + 0j])
        if p != 1.0:
            return ExampleOracle(name, p, hull=hull)

        # mu_1 of e^{-i theta} B is max(2 cos theta, 1); A = B - I shifts by -cos theta
        def support(theta: float) -> float:
            return max(2.0 * math.cos(theta), 1.0) + shift * math.cos(theta)

        return ExampleOracle(name, p, radius=None, s_n_at_zero=support(0.0), support=support, hull=hull)
    if name == "diag":
        q = np.diag(descriptor.matrix)
        hull = geometry.convex_hull(q)
        return ExampleOracle(name, p, radius=float(np.max(np.abs(q))), s_n_at_zero=float(np.max(q.real)),
                             support=_polygon_support(q), hull=hull)
    if name == "dirichlet_laplacian":
        N = _int_param(params, "N", 16)
        lam = laplacian_eigenvalues(N, _float_param(params, "L", math.pi))
        segment = (float(lam[0]), float(lam[-1]))
        hull = np.array([segment[0], segment[1]], dtype=complex)
        if p != 2.0:
            return ExampleOracle(name, p, hull=hull, segment=segment)
        return ExampleOracle(name, p, radius=abs(segment[0]), s_n_at_zero=segment[1],
                             support=_polygon_support(hull), hull=hull, segment=segment)
    if name == "skew_hermitian_random":
        eigs = np.linalg.eigvals(descriptor.matrix)
        hull = geometry.convex_hull(eigs)
        if p != 2.0:
            return ExampleOracle(name, p, hull=hull)
        return ExampleOracle(name, p, radius=float(np.max(np.abs(eigs))), s_n_at_zero=0.0,
                             support=_polygon_support(eigs), hull=hull)
    return ExampleOracle(name, p)
