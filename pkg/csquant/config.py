import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from csquant.errors import ConfigError

# Load environment variables from .env file
load_dotenv()


class Settings(BaseModel):
    """Runtime knobs, read from CSQ_* environment variables"""

    max_l: int = Field(16, ge=0)
    adaptive_tol: float = Field(1e-10, gt=0)
    max_doublings: int = Field(20, ge=1)
    max_nodes: int = Field(4_000_000, ge=1)
    jacobi_max_sweeps: int = Field(60, ge=1)
    gram_tol: float = Field(1e-8, gt=0)
    hermitian_tol: float = Field(1e-10, gt=0)
    log_level: str = "WARNING"
    artifacts_dir: str = "artifacts"


_ENV_KEYS = {
    "max_l": "CSQ_MAX_L",
    "adaptive_tol": "CSQ_ADAPTIVE_TOL",
    "max_doublings": "CSQ_MAX_DOUBLINGS",
    "max_nodes": "CSQ_MAX_NODES",
    "jacobi_max_sweeps": "CSQ_JACOBI_MAX_SWEEPS",
    "log_level": "CSQ_LOG_LEVEL",
    "artifacts_dir": "CSQ_ARTIFACTS_DIR",
}


def get_settings() -> Settings:
    """Build settings from the environment; unset variables keep their defaults"""
    values = {}
    for field, key in _ENV_KEYS.items():
        raw = os.getenv(key)
        if raw is not None and raw != "":
            values[field] = raw
    try:
        return Settings(**values)
    except ValidationError as e:
        raise ConfigError(f"Invalid CSQ_* environment configuration: {e}") from e
