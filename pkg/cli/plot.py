"""SVG rendering of a region."""
import io
import logging
from pathlib import Path
from typing import Optional, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from shared.utils import atomic_write_text  # noqa: E402

logger = logging.getLogger(__name__)


def _closed(vertices: np.ndarray) -> np.ndarray:
    return np.append(vertices, vertices[:1])


def render_region_svg(region, eigs: Optional[np.ndarray] = None, title: str = "") -> str:
    """Outer polygon, inner hull, eigenvalues and the axes through 0."""
    fig, ax = plt.subplots(figsize=(6, 6))
    try:
        outer = _closed(region.outer_vertices)
        ax.fill(outer.real, outer.imag, color="tab:blue", alpha=0.15, label="outer")
        ax.plot(outer.real, outer.imag, color="tab:blue", linewidth=1.2)
        if region.inner_vertices.size:
            inner = _closed(region.inner_vertices)
            ax.plot(inner.real, inner.imag, color="tab:orange", linestyle="--", linewidth=1.0, label="inner")
        if eigs is not None and len(eigs):
            ax.plot(np.real(eigs), np.imag(eigs), "kx", markersize=8, label="eigenvalues")
        ax.axhline(0.0, color="grey", linewidth=0.6)
        ax.axvline(0.0, color="grey", linewidth=0.6)
        ax.set_aspect("equal", adjustable="datalim")
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
        if title:
            ax.set_title(title)
        ax.legend(loc="best")

        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", bbox_inches="tight")
        return buffer.getvalue()
    finally:
        plt.close(fig)


def write_region_svg(path: Union[str, Path], region, eigs: Optional[np.ndarray] = None, title: str = "") -> Path:
    logger.info(f"writing SVG to {path}")
    return atomic_write_text(path, render_region_svg(region, eigs, title))
