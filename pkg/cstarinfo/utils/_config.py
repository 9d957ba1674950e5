"""Global numerical settings"""
import contextlib
import os
from typing import Iterator

from pydantic import BaseModel, ConfigDict, Field

from ._constants import TAU_EQ, TAU_ZERO, TAU_RANK, ENUMERATION_BITS, THREADS_ENV_VAR


def _threads_from_env() -> int:
    value = os.environ.get(THREADS_ENV_VAR, '')
    try:
        return max(1, int(value))
    except ValueError:
        return 1


class Settings(BaseModel):
    """Tolerances and limits shared by every module.

    Attributes:
        tau_eq (float): tolerance of equality, positivity and projection predicates
        tau_zero (float): coefficients with smaller modulus are dropped after arithmetic
        tau_rank (float): relative singular value cutoff used for the numerical rank
        enumeration_bits (int): at most `2**enumeration_bits` strings are enumerated
            unless the caller overrides the guard
        threads (int): worker threads for parallel experiments
    """
    model_config = ConfigDict(extra='forbid', frozen=True, validate_assignment=True)

    tau_eq: float = Field(TAU_EQ, gt=0)
    tau_zero: float = Field(TAU_ZERO, gt=0)
    tau_rank: float = Field(TAU_RANK, gt=0)
    enumeration_bits: int = Field(ENUMERATION_BITS, ge=1)
    threads: int = Field(default_factory=_threads_from_env, ge=1)


_settings = Settings()


def get_settings() -> Settings:
    """Returns the active settings.

    Examples:
        >>> from cstarinfo.utils import get_settings
        >>> get_settings().tau_eq
        1e-09
    """
    return _settings


def set_settings(**changes) -> Settings:
    """Replaces the active settings, validating the changed fields.

    Args:
        **changes: fields of [cstarinfo.utils.Settings][] to change

    Returns:
        The new settings
    """
    global _settings
    _settings = Settings(**{**_settings.model_dump(), **changes})
    return _settings


@contextlib.contextmanager
def settings(**changes) -> Iterator[Settings]:
    """Context manager that applies `changes` and restores the previous settings on exit.

    Examples:
        >>> from cstarinfo.utils import settings, get_settings
        >>> with settings(tau_eq=1e-6):
        ...     get_settings().tau_eq
        1e-06
        >>> get_settings().tau_eq
        1e-09
    """
    global _settings
    previous = _settings
    try:
        yield set_settings(**changes)
    finally:
        _settings = previous


def check_enumeration(bits: float, guard_override: bool = False) -> None:
    """Raises [cstarinfo.utils.GuardExceededError][] when `2**bits` strings exceed the guard."""
    from ._errors import GuardExceededError

    limit = _settings.enumeration_bits
    if not guard_override and bits > limit + 1e-12:
        raise GuardExceededError(bits, limit)
