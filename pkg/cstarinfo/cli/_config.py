"""Experiment configuration models and parsers for the command line"""
import json
import os
import re
import tomllib
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing_extensions import Literal

from .. import channel as channels
from ..channel import Channel
from ..datasets import load_channel, load_state, channel_names, state_names
from ..probability import State

COMMANDS = ('lln', 'aep', 'code', 'channel-info', 'capacity', 'coding-experiment')

_CONSTRUCTOR = re.compile(r'^\s*(bsc|bec|identity|useless)\s*\(([^)]*)\)\s*$')


def parse_grid(value: Union[str, int, List[int]]) -> List[int]:
    """Parses a grid of integers: `4:20` (inclusive), `4:20:2` or `1,2,4`.

    Examples:
        >>> from cstarinfo.cli import parse_grid
        >>> parse_grid('4:8'), parse_grid('1,2,4'), parse_grid('2:10:4')
        ([4, 5, 6, 7, 8], [1, 2, 4], [2, 6, 10])
    """
    if isinstance(value, int):
        return [value]
    if not isinstance(value, str):
        return [int(v) for v in value]
    if ':' in value:
        parts = [int(p) for p in value.split(':')]
        if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] < 1):
            raise ValueError(f'Invalid grid {value!r}')
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) == 3 else 1
        return list(range(start, stop + 1, step))
    return [int(v) for v in value.split(',') if v.strip()]


def parse_weights(value: Union[str, List[float]]) -> List[float]:
    if isinstance(value, str):
        return [float(v) for v in value.split(',') if v.strip()]
    return [float(v) for v in value]


def parse_state(value: Union[str, List[float], Dict]) -> State:
    """A state from comma separated weights, a bundled state name, a JSON file or a dict.

    Examples:
        >>> from cstarinfo.cli import parse_state
        >>> parse_state('0.9,0.1').weights.tolist(), parse_state('dyadic_3').dim
        ([0.9, 0.1], 3)
    """
    if isinstance(value, dict):
        return State.from_dict(value)
    if isinstance(value, str) and value in state_names():
        return load_state(value)
    if isinstance(value, str) and os.path.isfile(value):
        with open(value, 'r') as f:
            return State.from_dict(json.load(f))
    weights = parse_weights(value)
    return State(len(weights), weights)


def parse_channel(value: Union[str, Dict]) -> Channel:
    """A channel from a constructor call (`bsc(0.11)`, `bec(0.2)`, `identity(3)`,
    `useless(0.3,0.7)`), a bundled channel name, a JSON file or a dict.

    Examples:
        >>> from cstarinfo.cli import parse_channel
        >>> parse_channel('bsc(0.1)').matrix.tolist()
        [[0.9, 0.1], [0.1, 0.9]]
        >>> parse_channel('identity(3)').input_dim
        3
    """
    if isinstance(value, dict):
        return Channel.from_dict(value)
    match = _CONSTRUCTOR.match(value)
    if match:
        name, args = match.group(1), parse_weights(match.group(2))
        if name == 'useless':
            return channels.useless(args)
        if len(args) != 1:
            raise ValueError(f'{name} takes one argument, got {value!r}')
        return channels.identity(int(args[0])) if name == 'identity' else getattr(channels, name)(args[0])
    if value in channel_names():
        return load_channel(value)
    if os.path.isfile(value):
        with open(value, 'r') as f:
            return Channel.from_dict(json.load(f))
    raise ValueError(f'Cannot interpret channel {value!r}')


class _Params(BaseModel):
    model_config = ConfigDict(extra='forbid')


class _GridParams(_Params):
    n: List[int] = Field(default_factory=lambda: list(range(1, 21)))

    @field_validator('n', mode='before')
    @classmethod
    def _grid(cls, value):
        return parse_grid(value)

    @field_validator('n')
    @classmethod
    def _positive(cls, value):
        if not value or min(value) < 1:
            raise ValueError('block lengths must be positive')
        return value


class LlnParams(_GridParams):
    p: Union[str, List[float]] = '0.5,0.5'
    values: Optional[List[float]] = None
    eps: float = Field(0.1, gt=0)
    k: int = Field(4, ge=1, le=8)
    method: Literal['pushforward', 'dense'] = 'pushforward'
    n_max: int = Field(500, ge=1)

    @field_validator('values', mode='before')
    @classmethod
    def _values(cls, value):
        return None if value is None else parse_weights(value)


class AepParams(_GridParams):
    p: Union[str, List[float]] = '0.9,0.1'
    eps: float = Field(0.2, gt=0)
    method: Literal['enumerate', 'types'] = 'enumerate'


class CodeParams(_Params):
    state: Union[str, List[float]] = '0.5,0.25,0.25'
    huffman: bool = False
    lengths: Optional[List[int]] = None
    words: Optional[List[str]] = None
    alphabet: int = Field(2, ge=2, le=36)

    @field_validator('lengths', mode='before')
    @classmethod
    def _lengths(cls, value):
        return None if value is None else parse_grid(value)

    @field_validator('words', mode='before')
    @classmethod
    def _words(cls, value):
        return value.split(',') if isinstance(value, str) else value


class ChannelInfoParams(_Params):
    channel: str = 'bsc(0.11)'
    state: Optional[Union[str, List[float]]] = None


class CapacityParams(_Params):
    channel: str = 'bsc(0.11)'
    tol: float = Field(1e-9, gt=0)
    max_iter: int = Field(10_000, ge=0)


class CodingParams(_Params):
    channel: str = 'bsc(0.05)'
    state: Optional[Union[str, List[float]]] = None
    rate: float = Field(0.4, gt=0)
    ks: List[int] = Field(default_factory=lambda: [4, 8, 12])
    trials: int = Field(20, ge=1)

    @field_validator('ks', mode='before')
    @classmethod
    def _grid(cls, value):
        return parse_grid(value)


PARAMS_MODELS = {
    'lln': LlnParams,
    'aep': AepParams,
    'code': CodeParams,
    'channel-info': ChannelInfoParams,
    'capacity': CapacityParams,
    'coding-experiment': CodingParams,
}


class ExperimentConfig(BaseModel):
    """Resolved configuration of one command line run.

    Attributes:
        command (str): one of `lln`, `aep`, `code`, `channel-info`, `capacity`, `coding-experiment`
        params (dict): command specific parameters, validated against the command's model
        seed (int): seed of stochastic commands
        output_path (str or None): artifact path, standard output when None
        format (str): `json` or `csv`
        guard_override (bool): lift the enumeration guards

    Examples:
        >>> from cstarinfo.cli import ExperimentConfig
        >>> config = ExperimentConfig(command='aep', params={'n': '4:6'})
        >>> config.typed_params().n
        [4, 5, 6]
    """
    model_config = ConfigDict(extra='forbid')

    command: Literal['lln', 'aep', 'code', 'channel-info', 'capacity', 'coding-experiment']
    params: Dict[str, Any] = Field(default_factory=dict)
    seed: int = 0
    output_path: Optional[str] = None
    format: Literal['json', 'csv'] = 'json'
    guard_override: bool = False

    @model_validator(mode='after')
    def _validate_params(self):
        self.params = PARAMS_MODELS[self.command].model_validate(self.params).model_dump()
        return self

    def typed_params(self):
        return PARAMS_MODELS[self.command].model_validate(self.params)


def load_config_file(path: str) -> Dict[str, Any]:
    """Reads a TOML or JSON configuration file into a plain dict."""
    extension = os.path.splitext(path)[1].lower()
    if extension == '.toml':
        with open(path, 'rb') as f:
            return tomllib.load(f)
    if extension == '.json':
        with open(path, 'r') as f:
            return json.load(f)
    raise ValueError(f'Unsupported configuration format {extension!r}; use .toml or .json')


def resolve_config(file_values: Optional[Dict[str, Any]] = None, **overrides) -> ExperimentConfig:
    """Merges file values with command line overrides (None means not given) and validates.

    Parameters given on the command line replace single keys of the file's `params`.
    """
    values = dict(file_values or {})
    params = dict(values.get('params', {}))
    params.update({key: value for key, value in overrides.pop('params', {}).items() if value is not None})
    values.update({key: value for key, value in overrides.items() if value is not None})
    values['params'] = params
    return ExperimentConfig(**values)
