import os
from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


class Settings:
    """Application settings"""

    # API Settings
    API_V1_STR: str = "/api/v1"
    PROJECT_NAME: str = os.getenv("APP_NAME", "GF(2^n) Differential Uniformity Toolkit")
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Sampling
    DEFAULT_SEED: int = _int_env("DEFAULT_SEED", 20240601)
    DEFAULT_SAMPLES: int = _int_env("DEFAULT_SAMPLES", 4096)

    # Field representation
    TABLE_MAX_N: int = _int_env("TABLE_MAX_N", 16)
    SCAN_ROOTS_MAX_N: int = _int_env("SCAN_ROOTS_MAX_N", 20)

    # Resource guards (overridable per call)
    ROW_MAX_N: int = _int_env("ROW_MAX_N", 24)
    DELTA_MAX_N: int = _int_env("DELTA_MAX_N", 14)
    SWEEP_FULL_MAX_N: int = _int_env("SWEEP_FULL_MAX_N", 20)
    SWEEP_CAP: int = _int_env("SWEEP_CAP", 65536)

    # Parallel alpha loops
    WORKERS: int = _int_env("WORKERS", 4)

    # CORS Settings
    BACKEND_CORS_ORIGINS: list = ["http://localhost:3000", "http://localhost:3001"]


settings = Settings()
