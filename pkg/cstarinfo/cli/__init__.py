"""Command line interface: experiment configs, the commands and their artifacts"""

from ._config import (ExperimentConfig, LlnParams, AepParams, CodeParams, ChannelInfoParams, CapacityParams,
                      CodingParams, parse_grid, parse_weights, parse_state, parse_channel, load_config_file,
                      resolve_config)
from ._commands import CommandResult, COMMANDS, run, render
from ._main import build_parser, main

__all__ = [
    "ExperimentConfig",
    "LlnParams",
    "AepParams",
    "CodeParams",
    "ChannelInfoParams",
    "CapacityParams",
    "CodingParams",
    "parse_grid",
    "parse_weights",
    "parse_state",
    "parse_channel",
    "load_config_file",
    "resolve_config",
    "CommandResult",
    "COMMANDS",
    "run",
    "render",
    "build_parser",
    "main",
    ]
