"""Example catalogue routes."""
from typing import List

from fastapi import APIRouter, Request

from api.schemas.responses import ErrorResponse, ZooEntry, ZooMatrixResponse
from api.services.analysis import AnalysisService


router = APIRouter(prefix="/zoo", tags=["zoo"], responses={400: {"model": ErrorResponse}})


@router.get("", response_model=List[ZooEntry])
async def list_zoo():
    """Names, notes and parameters of the example matrices."""
    return AnalysisService.zoo_entries()


@router.get("/{name}", response_model=ZooMatrixResponse)
async def get_example(name: str, request: Request):
    """Build an example; parameters come from the query string, e.g. /zoo/diag?q=1,2j."""
    return AnalysisService.zoo_matrix(name, dict(request.query_params))
