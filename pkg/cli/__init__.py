"""Command-line surface

Usage:
    python main.py compile fixtures/six_nodes.net --output-dir artifacts --format dot
    python main.py simulate artifacts/tcell.aggregated.json --inputs 111,121 --mode probabilistic --seed 7
"""

from .commands import COMMANDS, load_assr, load_network, load_source, run
from .main import build_parser, main
from .models import Command, OutputFormat, RunConfig

__all__ = [
    "COMMANDS",
    "Command",
    "OutputFormat",
    "RunConfig",
    "build_parser",
    "load_assr",
    "load_network",
    "load_source",
    "main",
    "run",
]
