"""Main FastAPI application."""
import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from api.routes import spectra_router, zoo_router
from shared.config import settings
from shared.exceptions import InputError, NumericalError
from spectrum.workers import resolve_threads


logging.basicConfig(
    level=settings.log_level.upper(),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan manager."""
    logger.info(f"Numerical spectrum API starting: threads={resolve_threads(settings.threads)}")
    yield
    logger.info("Numerical spectrum API stopped")


# Create FastAPI app
app = FastAPI(
    title="Numerical Spectrum Service",
    description="Numerical spectra, resolvent certificates and semigroup growth of complex matrices",
    version="1.0.0",
    lifespan=lifespan
)

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(InputError)
async def input_error_handler(request: Request, exc: InputError):
    return JSONResponse(status_code=400, content={"error": "Invalid input", "detail": str(exc)})


@app.exception_handler(NumericalError)
async def numerical_error_handler(request: Request, exc: NumericalError):
    logger.warning(f"{request.url.path}: {exc}")
    return JSONResponse(status_code=422, content={"error": "Numerical failure", "detail": str(exc)})


# Exception handler
@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    """Global exception handler."""
    logger.exception(f"{request.url.path}: unexpected error")
    return JSONResponse(
        status_code=500,
        content={"error": "Internal server error", "detail": str(exc)}
    )


# Include routers
app.include_router(spectra_router)
app.include_router(zoo_router)


# Health check endpoint
@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy"}


@app.get("/")
async def root():
    """Root endpoint with API info."""
    return {
        "name": "Numerical Spectrum Service",
        "version": "1.0.0",
        "docs": "/docs",
        "health": "/health"
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "api.main:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=settings.api_debug
    )
