"""
Configuration settings for periodic-seirs
"""

import json
from typing import Union
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from functools import lru_cache


class Settings(BaseSettings):
    """Application settings"""

    PROJECT_NAME: str = "periodic-seirs"

    # Integrator
    REL_TOL: float = 1e-9
    ABS_TOL: float = 1e-12
    NEGATIVE_SLACK: float = 1e-12  # undershoot clamped to zero below this magnitude

    # Periodic coefficients
    EXTREMA_GRID: int = 4096
    EXTREMA_TOL: float = 1e-9

    # Incidence hypotheses
    HYPOTHESIS_GRID: int = 64
    CUSTOM_SATURATION_GRID: int = 64
    BOX_COLLAPSE_MARGIN: float = 0.05

    # Reproduction ratio
    R0_BISECTION_TOL: float = 1e-8
    BISECTION_REL_TOL: float = 1e-10
    R0_MAX_BRACKET: float = 2.0 ** 16
    CRITICAL_BAND: float = 1e-6

    # Endemic analysis
    ROOT_TOL: float = 1e-12
    DET_ZERO_TOL: float = 1e-10
    M0_MARGIN: float = 1.0
    PERSISTENCE_SAFETY: float = 0.9
    DEGENERATE_FLOOR: float = 1e-10
    DECAY_RATIO: float = 0.5

    # Shooting
    NEWTON_MAX_ITER: int = 20
    ORBIT_RESIDUAL_TOL: float = 1e-8
    SINGULAR_TOL: float = 1e-12
    PRERUN_PERIODS: int = 200
    ORBIT_SAMPLES: int = 256

    # Runs
    DEFAULT_SEED: int = 20240531
    JOBS: int = 1
    OUTPUT_DIRECTORY: str = "./out"
    LOG_LEVEL: str = "INFO"

    # HTTP app
    BACKEND_CORS_ORIGINS: list[str] = [
        "http://localhost:3000",
        "http://localhost:8080",
    ]

    @field_validator('BACKEND_CORS_ORIGINS', mode='before')
    @classmethod
    def parse_cors_origins(cls, v: Union[str, list]) -> list:
        """Parse CORS origins from string or list"""
        if isinstance(v, str):
            try:
                parsed = json.loads(v)
                if isinstance(parsed, list):
                    return parsed
            except json.JSONDecodeError:
                pass
            return [origin.strip() for origin in v.split(",") if origin.strip()]
        return v

    model_config = SettingsConfigDict(
        env_prefix="SEIRS_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
