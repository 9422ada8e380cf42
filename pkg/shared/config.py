"""Shared configuration for the library, the CLI and the API."""
from typing import Optional
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Settings loaded from NUMSPEC_* environment variables."""

    # Parallelism (None means hardware count)
    threads: Optional[int] = None

    # Sweep defaults
    default_angles: int = 360
    seed: int = 0
    restarts: int = 16
    sweep_chunks: int = 8

    # Estimator tolerances
    quotient_tol: float = 1e-7
    quotient_max_level: int = 40
    duality_xcheck_tol: float = 1e-3
    cert_tol: float = 1e-8

    # Semigroup curves
    curve_t_min: float = 1e-4
    curve_t_max: float = 1e2
    curve_points: int = 60

    # Hildebrandt renorming
    renorm_t_step: float = 1e-2
    renorm_t_max: float = 400.0
    renorm_fan: Optional[int] = None
    renorm_angles: int = 64
    renorm_samples: int = 64
    renorm_rounds: int = 6

    # Logging
    log_level: str = "INFO"

    # API Configuration
    api_host: str = "0.0.0.0"
    api_port: int = 8000
    api_debug: bool = False

    class Config:
        env_prefix = "NUMSPEC_"
        env_file = ".env"
        case_sensitive = False


settings = Settings()
