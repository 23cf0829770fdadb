"""
Utility modules for the annulus-bk solver.
"""
from .config import config
from .logger import setup_logger

__all__ = ["config", "setup_logger"]
