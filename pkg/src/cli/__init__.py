"""
Command-line front end: argument parsing, run configuration, commands
and report writers.
"""

from .config import RunConfig, parse_config_file
from .main import build_parser, main

__all__ = ["RunConfig", "parse_config_file", "build_parser", "main"]
