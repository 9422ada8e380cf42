"""Analysis service shared by the spectra routes.

Methods are synchronous and CPU bound; routes run them in the threadpool.
"""
import logging
from typing import List, Optional

from api.schemas.requests import (
    BoundsRequest,
    CertifyRequest,
    CurveRequest,
    HildebrandtRequest,
    RadiusRequest,
    RegionRequest,
)
from api.schemas.responses import (
    BoundsResponse,
    HildebrandtResponse,
    RadiusResponse,
    RegionResponse,
    ZooEntry,
    ZooMatrixResponse,
)
from cli.plot import render_region_svg
from shared.config import settings
from shared.schemas import (
    CertificateDocument,
    CurveDocument,
    HildebrandtEntry,
    MatrixFile,
    RegionDocument,
)
from spectrum.matcore import NormSpec, eigenvalues
from spectrum.numspec import (
    GridSpec,
    build_region,
    certify_halfplane,
    numerical_bounds,
    numerical_radius,
    support_sweep,
    support_value,
)
from spectrum.renorm import hull_convergence_report
from spectrum.semigroup import default_t_grid, norm_curve
from spectrum.zoo import list_examples, make_example

logger = logging.getLogger(__name__)


class AnalysisService:
    """Runs spectrum computations for API requests."""

    def __init__(self, threads: Optional[int] = None):
        self.threads = settings.threads if threads is None else threads

    def region(self, request: RegionRequest) -> RegionResponse:
        A = request.matrix.to_array()
        norm = NormSpec.lp(request.p)
        samples = support_sweep(A, norm, request.angles, request.seed, threads=self.threads)
        region = build_region(samples, norm_label=norm.label)
        doc = RegionDocument.from_region(region, norm.p)
        svg = render_region_svg(region, eigenvalues(A), title=f"p = {norm.label}") if request.svg else None
        logger.info(f"region: n={A.shape[0]} norm={norm.label} angles={len(samples)}")
        return RegionResponse(**doc.model_dump(), svg=svg)

    def radius(self, request: RadiusRequest) -> RadiusResponse:
        A = request.matrix.to_array()
        samples = support_sweep(A, NormSpec.lp(request.p), request.angles, request.seed, threads=self.threads)
        return RadiusResponse(radius=numerical_radius(build_region(samples)), angles=len(samples))

    def bounds(self, request: BoundsRequest) -> BoundsResponse:
        sample = support_value(request.matrix.to_array(), NormSpec.lp(request.p), request.theta, seed=request.seed)
        return BoundsResponse(theta=request.theta, value=numerical_bounds([sample], request.theta))

    def certify(self, request: CertifyRequest) -> CertificateDocument:
        A = request.matrix.to_array()
        grid = GridSpec.default_for(A, request.n_distances, request.n_tangential)
        cert = certify_halfplane(A, NormSpec.lp(request.p), request.theta, request.omega, grid, seed=request.seed)
        logger.info(f"certify: theta={request.theta} omega={request.omega} passed={cert.passed}")
        return CertificateDocument.from_certificate(cert)

    def curve(self, request: CurveRequest) -> CurveDocument:
        ts = default_t_grid(request.t_min, request.t_max, request.points)
        curve = norm_curve(request.matrix.to_array(), NormSpec.lp(request.p), request.theta, ts,
                           seed=request.seed, threads=self.threads)
        return CurveDocument.from_curve(curve)

    def hildebrandt(self, request: HildebrandtRequest) -> HildebrandtResponse:
        report = hull_convergence_report(
            request.matrix.to_array(), NormSpec.lp(request.p), request.omegas, request.angles,
            fan=request.fan, seed=request.seed, threads=self.threads,
        )
        return HildebrandtResponse(
            entries=[HildebrandtEntry(**record) for record in report.as_records()],
            monotone=report.monotone,
            final_hausdorff=report.final_hausdorff,
        )

    @staticmethod
    def zoo_entries() -> List[ZooEntry]:
        return [ZooEntry(name=name, notes=notes, params=params) for name, notes, params in list_examples()]

    @staticmethod
    def zoo_matrix(name: str, params: dict) -> ZooMatrixResponse:
        example = make_example(name, params)
        return ZooMatrixResponse(
            name=example.name,
            notes=example.notes,
            params={key: str(value) for key, value in example.params.items()},
            matrix=MatrixFile.from_array(example.matrix),
        )
