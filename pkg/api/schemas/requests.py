"""Request schemas for API endpoints."""
import math
from typing import List, Optional, Union

from pydantic import BaseModel, Field, field_validator

from shared.exceptions import InputError
from shared.schemas import MatrixFile
from shared.utils import parse_p


class MatrixRequest(BaseModel):
    """Matrix and norm shared by every analysis request."""
    matrix: MatrixFile = Field(..., description="Square complex matrix as rows of [re, im] pairs")
    p: Union[float, str] = Field(default=2.0, description="Exponent in [1, inf]; 'inf' for the maximum norm")
    seed: Optional[int] = Field(default=None, ge=0, description="Random seed (default NUMSPEC_SEED)")

    @field_validator('p')
    @classmethod
    def validate_p(cls, v: Union[float, str]) -> float:
        """Normalize the exponent."""
        try:
            return parse_p(v)
        except InputError as e:
            raise ValueError(str(e))


class RegionRequest(MatrixRequest):
    """Request schema for a full support sweep."""
    angles: Optional[int] = Field(default=None, ge=3, le=20000, description="Number of sweep angles K")
    svg: bool = Field(default=False, description="Include an SVG rendering of the region")


class RadiusRequest(MatrixRequest):
    angles: Optional[int] = Field(default=None, ge=3, le=20000)


class BoundsRequest(MatrixRequest):
    theta: float = Field(..., description="Rotation angle in radians")

    @field_validator('theta')
    @classmethod
    def validate_theta(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError('theta must be finite')
        return v


class CertifyRequest(BoundsRequest):
    """Request schema for a half-plane resolvent certificate."""
    omega: float = Field(..., description="Half-plane offset: Re(e^{-i theta} lambda) > omega")
    n_distances: int = Field(default=40, ge=1, le=400, description="Log-spaced distances from the boundary")
    n_tangential: int = Field(default=10, ge=1, le=400, description="Offsets along the boundary")


class CurveRequest(MatrixRequest):
    """Request schema for the semigroup norm curve."""
    theta: float = Field(default=0.0)
    t_min: Optional[float] = Field(default=None, gt=0.0)
    t_max: Optional[float] = Field(default=None, gt=0.0)
    points: Optional[int] = Field(default=None, ge=2, le=2000)


class HildebrandtRequest(MatrixRequest):
    """Request schema for the renorm hull convergence report."""
    omegas: List[float] = Field(..., min_length=1, max_length=20,
                                description="Excesses over the directional spectral abscissa, strictly decreasing")
    angles: Optional[int] = Field(default=None, ge=3, le=2000)
    fan: Optional[int] = Field(default=None, ge=1, description="Renormed directions (default: one per angle)")

    @field_validator('omegas')
    @classmethod
    def validate_decreasing(cls, v: List[float]) -> List[float]:
        """Validate that omegas decrease strictly."""
        if any(b >= a for a, b in zip(v, v[1:])):
            raise ValueError('omegas must be strictly decreasing')
        return v
