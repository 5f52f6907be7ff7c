"""Configuration module for periodic-seirs"""

from .settings import Settings, get_settings

__all__ = ["Settings", "get_settings"]
