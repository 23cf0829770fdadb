"""
Configuration management for the annulus-bk solver.
"""
import os
from typing import Optional
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_value(name: str, default: str) -> str:
    """Read an environment variable and strip trailing comments."""
    value = os.getenv(name, default)
    if "#" in value:
        value = value.split("#")[0].strip()
    return value


class Config:
    """Configuration class for the application."""

    # Application Settings
    DEBUG: bool = os.getenv("DEBUG", "False").lower() in ("true", "1", "t")
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Numerical defaults
    LIN_TOL: float = float(_env_value("ANNULUS_LIN_TOL", "1e-10"))
    SOLVER_TOL: float = float(_env_value("ANNULUS_SOLVER_TOL", "1e-10"))
    MAX_ITER: int = int(_env_value("ANNULUS_MAX_ITER", "500"))
    SAMPLE_LATTICE: int = int(_env_value("ANNULUS_SAMPLE_LATTICE", "32"))
    # 0 means "as many hole rings as annulus ring intervals"
    HOLE_RINGS: int = int(_env_value("ANNULUS_HOLE_RINGS", "0"))

    @classmethod
    def validate(cls) -> Optional[str]:
        """
        Validate the configuration.

        Returns:
            Optional[str]: Error message if validation fails, None otherwise.
        """
        if not cls.LIN_TOL > 0:
            return "ANNULUS_LIN_TOL must be positive."
        if not cls.SOLVER_TOL > 0:
            return "ANNULUS_SOLVER_TOL must be positive."
        if cls.MAX_ITER < 1:
            return "ANNULUS_MAX_ITER must be at least 1."
        if cls.SAMPLE_LATTICE < 2:
            return "ANNULUS_SAMPLE_LATTICE must be at least 2."
        if cls.HOLE_RINGS < 0:
            return "ANNULUS_HOLE_RINGS must be nonnegative."

        return None


# Create a singleton instance
config = Config()
