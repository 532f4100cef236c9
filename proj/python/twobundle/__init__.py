"""Finite 2-categories, Duskin nerves and principal 2-bundles."""

from ._core import *  # noqa: F401,F403
from ._core import Error, __doc__  # noqa: F401
