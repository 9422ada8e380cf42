"""Wire documents shared by the CLI artifacts and the HTTP API."""
import math
from typing import Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from shared.utils import complex_pair, complex_pairs, format_p


class MatrixFile(BaseModel):
    """Square complex matrix as rows of [re, im] pairs."""
    n: int = Field(..., ge=1, description="Matrix dimension")
    entries: List[List[List[float]]] = Field(..., description="n rows of n [re, im] pairs")

    @model_validator(mode="after")
    def check_shape(self) -> "MatrixFile":
        if len(self.entries) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.entries)}")
        for i, row in enumerate(self.entries):
            if len(row) != self.n:
                raise ValueError(f"row {i} has {len(row)} entries, expected {self.n}")
            for j, pair in enumerate(row):
                if len(pair) != 2:
                    raise ValueError(f"entry ({i}, {j}) must be a [re, im] pair")
                if not all(math.isfinite(v) for v in pair):
                    raise ValueError(f"entry ({i}, {j}) is not finite")
        return self

    def to_array(self) -> np.ndarray:
        arr = np.asarray(self.entries, dtype=float)
        return arr[..., 0] + 1j * arr[..., 1]

    @classmethod
    def from_array(cls, A: np.ndarray) -> "MatrixFile":
        A = np.asarray(A, dtype=complex)
        return cls(n=A.shape[0], entries=[[complex_pair(z) for z in row] for row in A])


class SupportEntry(BaseModel):
    theta: float
    h: float
    witness: Optional[List[float]] = Field(default=None, description="Pairing value [re, im] supporting h")


class RegionDocument(BaseModel):
    """Region artifact."""
    model_config = ConfigDict(populate_by_name=True)

    p: Union[float, str] = Field(..., description="Exponent, 'inf' for the maximum norm")
    norm: str = Field(..., description="Norm label")
    angles: int
    support: List[SupportEntry]
    outer: List[List[float]]
    inner: List[List[float]]
    gap: Optional[float] = None
    radius: float
    s_n_zero: float
    classification: Dict = Field(default_factory=dict, alias="class")
    diagnostics: List[str] = Field(default_factory=list)

    @classmethod
    def from_region(cls, region, p: float) -> "RegionDocument":
        return cls(
            p=format_p(p),
            norm=region.norm_label,
            angles=len(region.samples),
            support=[
                SupportEntry(
                    theta=s.theta,
                    h=s.h,
                    witness=None if s.witness_point is None else complex_pair(s.witness_point),
                )
                for s in region.samples
            ],
            outer=complex_pairs(region.outer_vertices),
            inner=complex_pairs(region.inner_vertices),
            gap=region.gap,
            radius=region.radius,
            s_n_zero=region.s_n_at_zero,
            classification=region.classification.as_dict() if region.classification else {},
            diagnostics=list(region.diagnostics),
        )


class FailureEntry(BaseModel):
    lam: List[float] = Field(..., description="Grid point [re, im]")
    ratio: Optional[float] = Field(None, description="||R|| d; null for a hard failure")


class CertificateDocument(BaseModel):
    """Outcome of a half-plane resolvent certificate."""
    theta: float
    omega: float
    grid_points: int
    worst_ratio: Optional[float]
    worst_lambda: Optional[List[float]]
    passed: bool
    cert_tol: float
    failures: List[FailureEntry]

    @classmethod
    def from_certificate(cls, cert, max_failures: int = 20) -> "CertificateDocument":
        return cls(
            theta=cert.theta,
            omega=cert.omega,
            grid_points=len(cert.grid),
            worst_ratio=cert.worst_ratio if math.isfinite(cert.worst_ratio) else None,
            worst_lambda=None if cert.worst_lambda is None else complex_pair(cert.worst_lambda),
            passed=cert.passed,
            cert_tol=cert.cert_tol,
            failures=[
                FailureEntry(lam=complex_pair(lam), ratio=ratio if math.isfinite(ratio) else None)
                for lam, ratio in cert.failures[:max_failures]
            ],
        )


class HildebrandtEntry(BaseModel):
    omega: float
    radius: float
    hausdorff_to_conv_spectrum: float
    fan: int = Field(..., description="Number of renormed rotation directions")


class CurveDocument(BaseModel):
    theta: float
    p: Union[float, str]
    t: List[float]
    norm: List[float]
    truncated: bool = False

    @classmethod
    def from_curve(cls, curve) -> "CurveDocument":
        return cls(
            theta=curve.theta,
            p=format_p(curve.norm.p),
            t=[float(t) for t in curve.ts],
            norm=[float(v) for v in curve.values],
            truncated=curve.truncated,
        )
