# Services module
from .analysis import AnalysisService

__all__ = ["AnalysisService"]
