"""Response schemas for API endpoints."""
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from shared.schemas import HildebrandtEntry, MatrixFile, RegionDocument


class RegionResponse(RegionDocument):
    """Region artifact, optionally with its SVG rendering."""
    svg: Optional[str] = Field(None, description="SVG document when requested")


class RadiusResponse(BaseModel):
    radius: float = Field(..., description="max |z| over the numerical spectrum")
    angles: int = Field(..., description="Number of sweep angles used")


class BoundsResponse(BaseModel):
    theta: float
    value: float = Field(..., description="Support value s_n^theta")


class HildebrandtResponse(BaseModel):
    """Response schema for the renorm hull convergence report."""
    entries: List[HildebrandtEntry]
    monotone: bool = Field(..., description="Whether regions shrink as omega decreases")
    final_hausdorff: float = Field(..., description="Distance to conv(spectrum) at the smallest omega")


class ZooEntry(BaseModel):
    name: str
    notes: str
    params: Dict[str, str] = Field(default_factory=dict, description="Accepted parameters and their meaning")


class ZooMatrixResponse(BaseModel):
    name: str
    notes: str
    params: Dict[str, str]
    matrix: MatrixFile


class ErrorResponse(BaseModel):
    """Schema for error responses."""
    error: str = Field(..., description="Error message")
    detail: Optional[str] = Field(None, description="Detailed error information")
