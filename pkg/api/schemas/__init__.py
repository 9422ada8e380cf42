# Schemas module
from .requests import (
    BoundsRequest,
    CertifyRequest,
    CurveRequest,
    HildebrandtRequest,
    MatrixRequest,
    RadiusRequest,
    RegionRequest,
)
from .responses import (
    BoundsResponse,
    ErrorResponse,
    HildebrandtResponse,
    RadiusResponse,
    RegionResponse,
    ZooEntry,
    ZooMatrixResponse,
)

__all__ = [
    "BoundsRequest",
    "CertifyRequest",
    "CurveRequest",
    "HildebrandtRequest",
    "MatrixRequest",
    "RadiusRequest",
    "RegionRequest",
    "BoundsResponse",
    "ErrorResponse",
    "HildebrandtResponse",
    "RadiusResponse",
    "RegionResponse",
    "ZooEntry",
    "ZooMatrixResponse",
]
