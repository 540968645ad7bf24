"""SWIPE' pitch estimation with a trainable Toeplitz encoder."""

from swipepitch._core import *  # noqa: F401,F403
from swipepitch._core import __doc__  # noqa: F401

__version__ = "0.1.0"
