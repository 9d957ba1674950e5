__version__ = "0.1.0"

from . import utils
from . import algebra
from . import probability
from . import information
from . import channel
from . import datasets
from . import cli

__all__ = [
    "utils",
    "algebra",
    "probability",
    "information",
    "channel",
    "datasets",
    "cli"
]
