"""
Command-line interface: TOML run configuration, subcommands and file writers
"""

from .config import RunConfig, load_config
from .commands import COMMANDS, analysis_document
from .main import main

__version__ = "1.0.0"

__all__ = [
    "RunConfig",
    "load_config",
    "COMMANDS",
    "analysis_document",
    "main",
]
