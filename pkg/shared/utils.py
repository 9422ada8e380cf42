"""Shared utility functions."""
import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, List, Union

import numpy as np

from shared.exceptions import InputError


def make_rng(seed: int, *streams: int) -> np.random.Generator:
    """Seeded generator; extra stream indices give independent child streams."""
    return np.random.default_rng([seed, *streams])


def angle_grid(count: int) -> np.ndarray:
    """Uniform angles 2*pi*k/count, k = 0..count-1."""
    if count < 1:
        raise InputError(f"angle count must be positive, got {count}")
    return 2.0 * math.pi * np.arange(count) / count


def parse_p(value: Union[str, float, int]) -> float:
    """Parse an l^p exponent; 'inf' spells infinity."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "∞"):
            return math.inf
        try:
            value = float(text)
        except ValueError:
            raise InputError(f"invalid exponent p: {value!r}")
    p = float(value)
    if math.isnan(p) or p < 1.0:
        raise InputError(f"exponent p must lie in [1, inf], got {value!r}")
    return p


def format_p(p: float) -> Union[str, float]:
    """JSON form of an exponent."""
    return "inf" if math.isinf(p) else p


def format_number(value: float) -> str:
    """Decimal with 17 significant digits."""
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"cannot emit non-finite number {value!r}")
    return format(value, ".17g")


def complex_pair(z: complex) -> List[float]:
    """[re, im] pair for a complex number."""
    return [float(np.real(z)), float(np.imag(z))]


def complex_pairs(points: Iterable[complex]) -> List[List[float]]:
    """List of [re, im] pairs."""
    return [complex_pair(z) for z in points]


def to_json(obj: Any) -> str:
    """Deterministic JSON with every float written to 17 significant digits."""
    return _encode(obj) + "\n"


def _encode(obj: Any) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            return "null"
        return format_number(value)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def atomic_write_text(path: Union[str, Path], text: str) -> Path:
    """Write text to a sibling temp file, then rename it over the target."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return target


def derive_seed(seed: int, *streams: int) -> int:
    """Child seed for an independent sub-task (one sweep angle, one fan direction)."""
    return int(make_rng(seed, *streams).integers(2**31 - 1))
