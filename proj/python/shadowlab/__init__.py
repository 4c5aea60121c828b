"""Pseudo-orbit shadowing, chain dynamics and hyperbolicity estimation.

The compiled core lives in `_shadowlab`; this package re-exports it.
"""
from _shadowlab import *  # noqa: F401,F403
from _shadowlab import __version__  # noqa: F401
