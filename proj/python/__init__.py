"""Constants of motion for forced one-dimensional linear systems."""

from ._comotion import *  # noqa: F401,F403
from ._comotion import __doc__  # noqa: F401
