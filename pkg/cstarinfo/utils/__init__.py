"""Settings, constants and exceptions shared by all modules"""

from ._constants import TAU_EQ, TAU_ZERO, TAU_RANK, ENUMERATION_BITS, THREADS_ENV_VAR
from ._config import Settings, get_settings, set_settings, settings, check_enumeration
from ._errors import AlgebraMismatchError, DomainError, GuardExceededError, NotConvergedError, UselessChannelError

__all__ = [
    "TAU_EQ",
    "TAU_ZERO",
    "TAU_RANK",
    "ENUMERATION_BITS",
    "THREADS_ENV_VAR",
    "Settings",
    "get_settings",
    "set_settings",
    "settings",
    "check_enumeration",
    "AlgebraMismatchError",
    "DomainError",
    "GuardExceededError",
    "NotConvergedError",
    "UselessChannelError",
    ]
