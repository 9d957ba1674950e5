"""Bundled channel and state fixtures, and the reader for CSV artifacts"""

from ._base import load_json_data, channel_names, state_names, load_channel, load_state
from ._base import load_csv_data, load_csv_config, DATA_MODULE

__all__ = [
    "load_json_data",
    "channel_names",
    "state_names",
    "load_channel",
    "load_state",
    "load_csv_data",
    "load_csv_config",
    "DATA_MODULE",
    ]
