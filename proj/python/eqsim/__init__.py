"""Adaptive-filter channel equalization experiments.

Thin package wrapper over the C++ core; see the project README for the
experiment CLI of the same name.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
