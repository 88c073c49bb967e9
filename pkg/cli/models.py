"""Pydantic models for the command surface"""

from enum import Enum
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from core.config import settings
from services.aggregation import SimulationMode


class Command(str, Enum):
    COMPILE = "compile"
    QUOTIENT = "quotient"
    CHECK = "check"
    AGGREGATE = "aggregate"
    SIMULATE = "simulate"
    EXPORT_DOT = "export-dot"


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"
    DOT = "dot"


LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class RunConfig(BaseModel):
    """One CLI invocation; flags override settings, settings override defaults"""

    model_config = ConfigDict(frozen=True)

    command: Command
    input: Path
    output_dir: Path = Field(default_factory=lambda: Path(settings.OUTPUT_DIR))
    horizon: int = Field(default_factory=lambda: settings.DEFAULT_HORIZON, ge=0)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0, lt=2**64)
    size_cap: int = Field(default_factory=lambda: settings.SIZE_CAP, ge=1)
    mode: SimulationMode = SimulationMode.BOOLEAN_NONDET
    format: OutputFormat = OutputFormat.JSON
    strict: bool = Field(default_factory=lambda: settings.STRICT_AGGREGATION)
    # unset keeps the level configured in main.py from FVN_LOG_LEVEL
    log_level: Optional[LogLevel] = None
    # simulate only: comma-separated control words such as "111,121", "-" for an autonomous step
    inputs: Optional[str] = None
    # simulate only: one digit per aggregated state node
    initial: Optional[str] = None

    @property
    def stem(self) -> str:
        name = self.input.name
        for suffix in (".aggregated.json", ".json", ".net", ".ts"):
            if name.endswith(suffix):
                return name[: -len(suffix)]
        return self.input.stem
