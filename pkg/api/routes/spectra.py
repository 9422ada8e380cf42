"""Spectra routes for the REST API."""
from fastapi import APIRouter, Depends
from fastapi.concurrency import run_in_threadpool

from api.schemas.requests import (
    BoundsRequest,
    CertifyRequest,
    CurveRequest,
    HildebrandtRequest,
    RadiusRequest,
    RegionRequest,
)
from api.schemas.responses import BoundsResponse, ErrorResponse, HildebrandtResponse, RadiusResponse, RegionResponse
from api.services.analysis import AnalysisService
from shared.schemas import CertificateDocument, CurveDocument


router = APIRouter(prefix="/spectra", tags=["spectra"], responses={400: {"model": ErrorResponse}})


def get_service() -> AnalysisService:
    return AnalysisService()


@router.post("/region", response_model=RegionResponse)
async def region(request: RegionRequest, service: AnalysisService = Depends(get_service)):
    """
    Sweep the support function and build the region.

    - Outer polygon from the supporting half-planes
    - Inner hull from the duality witnesses
    - Shape classification and optional SVG
    """
    return await run_in_threadpool(service.region, request)


@router.post("/radius", response_model=RadiusResponse)
async def radius(request: RadiusRequest, service: AnalysisService = Depends(get_service)):
    """Numerical radius from a support sweep."""
    return await run_in_threadpool(service.radius, request)


@router.post("/bounds", response_model=BoundsResponse)
async def bounds(request: BoundsRequest, service: AnalysisService = Depends(get_service)):
    """Support value at a single angle."""
    return await run_in_threadpool(service.bounds, request)


@router.post("/certify", response_model=CertificateDocument)
async def certify(request: CertifyRequest, service: AnalysisService = Depends(get_service)):
    """Resolvent bound on a rotated half-plane; a failed check is a normal 200 response."""
    return await run_in_threadpool(service.certify, request)


@router.post("/curve", response_model=CurveDocument)
async def curve(request: CurveRequest, service: AnalysisService = Depends(get_service)):
    return await run_in_threadpool(service.curve, request)


@router.post("/hildebrandt", response_model=HildebrandtResponse)
async def hildebrandt(request: HildebrandtRequest, service: AnalysisService = Depends(get_service)):
    """Regions under renorms at decreasing omega and their distance to the eigenvalue hull."""
    return await run_in_threadpool(service.hildebrandt, request)
