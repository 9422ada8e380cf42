# Routes module
from .spectra import router as spectra_router
from .zoo import router as zoo_router

__all__ = ["spectra_router", "zoo_router"]
