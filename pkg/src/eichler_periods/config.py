"""
Configuration management for Eichler Periods
"""

import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Settings:
    """Numerical defaults loaded from environment variables"""

    def __init__(self):
        # Truncation orders
        self.qseries_n: int = int(os.getenv("EICHLER_QSERIES_N", "40"))
        self.poincare_cmax: int = int(os.getenv("EICHLER_POINCARE_CMAX", "200"))
        self.lehner_cmax: int = int(os.getenv("EICHLER_LEHNER_CMAX", "200"))
        self.kloosterman_cmax: int = int(os.getenv("EICHLER_KLOOSTERMAN_CMAX", "300"))
        self.trapezoid_points: int = int(os.getenv("EICHLER_TRAPEZOID_POINTS", "64"))

        # Tolerances and quadrature
        self.tol: float = float(os.getenv("EICHLER_TOL", "1e-10"))
        self.quad_limit: int = int(os.getenv("EICHLER_QUAD_LIMIT", "200"))
        self.fd_step: float = float(os.getenv("EICHLER_FD_STEP", "1e-3"))

        # Redis configuration
        self.redis_host: str = os.getenv("REDIS_HOST", "localhost")
        self.redis_port: int = int(os.getenv("REDIS_PORT", "6379"))
        self.redis_db: int = int(os.getenv("REDIS_DB", "0"))

        # Coefficient cache
        self.use_redis: bool = os.getenv("EICHLER_USE_REDIS", "false").lower() == "true"
        self.cache_path: str = os.getenv("EICHLER_CACHE_PATH", ".eichler_cache.json")

        # Output
        self.json_pretty: bool = os.getenv("EICHLER_JSON_PRETTY", "false").lower() == "true"

    @property
    def redis_url(self) -> str:
        """Get Redis connection URL"""
        return f"redis://{self.redis_host}:{self.redis_port}/{self.redis_db}"

    def get_truncation_params(self) -> dict:
        """Get default truncation orders"""
        return {
            "N": self.qseries_n,
            "poincare_cmax": self.poincare_cmax,
            "lehner_cmax": self.lehner_cmax,
            "kloosterman_cmax": self.kloosterman_cmax,
            "trapezoid_points": self.trapezoid_points,
        }

    def get_tolerance_params(self) -> dict:
        """Get default tolerances"""
        return {
            "tol": self.tol,
            "quad_limit": self.quad_limit,
            "fd_step": self.fd_step,
        }


# Global settings instance
settings = Settings()
