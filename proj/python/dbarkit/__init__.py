"""Weighted Bergman spaces, their moment sequences and the canonical dbar solution operator."""

from ._core import *  # noqa: F401,F403
from ._core import ball, nd

__version__ = "0.1.0"
