"""
Run configuration for the command-line front end.

Precedence: command-line flags > flat key/value config file > defaults
from config.settings.Config. PF_SEED, when set, overrides --seed.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

from config.settings import Config
from src.core.constants import OutputFormat, UnitSystem
from src.core.exceptions import ConfigurationError, MissingConfigError

logger = logging.getLogger(__name__)

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}

# Keys that never come from a config file
_RESERVED = {"command", "config", "handler"}


def parse_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """
    Read a flat `key = value` file.

    Blank lines and lines starting with '#' are skipped; keys are
    normalized to flag destinations ('grid-size' and 'grid_size' agree).

    Raises:
        ConfigurationError: If the file is missing or a line is malformed
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"Config file not found: {path}", config_key="config")

    values: Dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(
                f"{path}:{lineno}: expected 'key = value'",
                config_key="config",
                details={"line": raw},
            )
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if not key:
            raise ConfigurationError(f"{path}:{lineno}: empty key", config_key="config")
        values[key] = value
    logger.debug(f"Read {len(values)} settings from {path}")
    return values


def parse_bool(key: str, value: str) -> bool:
    """Boolean config-file value."""
    lowered = value.strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ConfigurationError(f"Expected a boolean for '{key}', got {value!r}", config_key=key)


def resolve_seed(flag_seed: Optional[int]) -> int:
    """PF_SEED wins over --seed; Config.SEED is the fallback."""
    env_seed = Config.env_seed()
    if env_seed is not None:
        if flag_seed is not None and flag_seed != env_seed:
            logger.info(f"PF_SEED={env_seed} overrides --seed {flag_seed}")
        return env_seed
    return flag_seed if flag_seed is not None else Config.SEED


@dataclass
class RunConfig:
    """
    Fully resolved configuration of one command.

    Every run is reproducible from to_dict(); JSON reports embed it.
    """
    command: str
    units: UnitSystem = UnitSystem.NATURAL
    output_format: OutputFormat = OutputFormat.CSV
    output: Optional[str] = None
    seed: int = 0
    progress: bool = False
    params: Dict[str, Any] = field(default_factory=dict)

    def get(self, key: str, default: Any = None) -> Any:
        value = self.params.get(key)
        return default if value is None else value

    def require(self, key: str) -> Any:
        """
        Parameter that must be present.

        Raises:
            MissingConfigError: If neither a flag nor the config file set it
        """
        value = self.params.get(key)
        if value is None:
            raise MissingConfigError(key, details={"flag": "--" + key.replace("_", "-")})
        return value

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "command": self.command,
            "units": self.units.value,
            "format": self.output_format.value,
            "seed": self.seed,
            "params": {k: v for k, v in sorted(self.params.items()) if v is not None},
        }

    @classmethod
    def from_namespace(cls, args) -> "RunConfig":
        """Build from parsed arguments (config file already merged in)."""
        data = dict(vars(args))
        command = data.pop("command")
        for key in _RESERVED | {"units", "format", "output", "seed", "verbose", "quiet"}:
            data.pop(key, None)
        try:
            units = UnitSystem.from_string(args.units or Config.UNITS)
            output_format = OutputFormat((args.format or Config.OUTPUT_FORMAT).lower())
        except ValueError as e:
            raise ConfigurationError(str(e), config_key="units/format")
        return cls(
            command=command,
            units=units,
            output_format=output_format,
            output=args.output,
            seed=resolve_seed(args.seed),
            progress=False,
            params=data,
        )
