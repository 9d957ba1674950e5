"""Base data loading code for the bundled fixtures and the CLI artifacts

"""
import csv
import json
from typing import Dict, List, Tuple

import numpy as np

from ..channel import Channel
from ..probability import State
from ..utils._resources import _open_text

DATA_MODULE = "cstarinfo.datasets.data"
CHANNELS_FILENAME = "channels.json"
STATES_FILENAME = "states.json"
CONFIG_PREFIX = "config="

_CSV_LITERALS = {'true': 1.0, 'false': 0.0, '': np.nan, 'null': np.nan, 'none': np.nan}


def load_json_data(data_file_name, *, data_module=DATA_MODULE) -> Dict:
    """
    Loads `data_file_name` from `data_module` with `importlib.resources`.

    Examples:
        >>> from cstarinfo.datasets import load_json_data
        >>> sorted(load_json_data('states.json'))[:2]
        ['bernoulli_0.1', 'bernoulli_0.3']

    Args:
        data_file_name (str): Name of json file to be loaded from `data_module/data_file_name`.
        data_module (str or module):  Module where data lives. The default is `'cstarinfo.datasets.data'`

    Returns:
        The decoded json document
    """
    with _open_text(data_module, data_file_name) as f:
        return json.load(f)


def channel_names() -> List[str]:
    """Names of the bundled channels."""
    return sorted(load_json_data(CHANNELS_FILENAME))


def state_names() -> List[str]:
    """Names of the bundled states."""
    return sorted(load_json_data(STATES_FILENAME))


def load_channel(name: str) -> Channel:
    """Loads a bundled channel by name.

    Examples:
        >>> from cstarinfo.datasets import load_channel
        >>> load_channel('bsc_0.11').matrix.tolist()
        [[0.89, 0.11], [0.11, 0.89]]

    Args:
        name (str): one of [cstarinfo.datasets.channel_names][]

    Returns:
        [cstarinfo.channel.Channel][]
    """
    channels = load_json_data(CHANNELS_FILENAME)
    try:
        data = channels[name]
    except KeyError:
        raise ValueError(f'Unknown channel {name!r}; available: {", ".join(sorted(channels))}')
    return Channel.from_dict(data)


def load_state(name: str) -> State:
    """Loads a bundled state by name.

    Examples:
        >>> from cstarinfo.datasets import load_state
        >>> load_state('dyadic_3').weights.tolist()
        [0.5, 0.25, 0.25]
    """
    states = load_json_data(STATES_FILENAME)
    try:
        data = states[name]
    except KeyError:
        raise ValueError(f'Unknown state {name!r}; available: {", ".join(sorted(states))}')
    return State.from_dict(data)


def load_csv_data(csv_file_path) -> Tuple[np.ndarray, List[str]]:
    """Reads a CSV table written by the command line interface.

    Lines starting with `#` are header lines: the first one names the columns, a
    line `# config=...` carries the resolved configuration (see `load_csv_config`).
    Booleans become 1.0/0.0 and empty or null cells become nan.

    Args:
        csv_file_path (str): path of the file

    Returns:
        data (Ndarray): A 2D array of data with headers excluded. Shape (n_samples, n_columns)
        header (List): Column names or empty strings. Shape (n_columns)
    """
    header: List[str] = []
    rows = []
    with open(csv_file_path, 'r', newline='') as csv_file:
        for line_number, line in enumerate(csv_file):
            if line.startswith('#'):
                if line_number == 0:
                    header = [entry.strip() for entry in next(csv.reader([line[1:]]))]
                continue
            if line.strip():
                rows.append([_parse_cell(cell) for cell in next(csv.reader([line]))])

    n_features = len(rows[0]) if rows else len(header)
    if not header:
        header = [''] * n_features
    if any(len(row) != n_features for row in rows):
        raise ValueError(f'Rows of {csv_file_path} have different lengths')
    data = np.array(rows, dtype=np.float64).reshape(len(rows), n_features)
    return data, header


def load_csv_config(csv_file_path) -> Dict:
    """The resolved configuration embedded in a CSV artifact, or an empty dict."""
    with open(csv_file_path, 'r', newline='') as csv_file:
        for line in csv_file:
            if not line.startswith('#'):
                break
            if line[1:].strip().startswith(CONFIG_PREFIX):
                return json.loads(line[1:].strip()[len(CONFIG_PREFIX):])
    return {}


def _parse_cell(cell: str) -> float:
    key = cell.strip().lower()
    if key in _CSV_LITERALS:
        return _CSV_LITERALS[key]
    try:
        return float(cell)
    except ValueError:
        raise ValueError(f'Non-numeric cell {cell!r}')
