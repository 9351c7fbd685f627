"""Numerical laboratory for rapidly oscillating multiplier symbols.

Thin re-export of the native module built from the C++ core.
"""

try:
    from ._oscillint import *  # noqa: F401,F403
    from ._oscillint import __version__  # noqa: F401
except ImportError:  # running against a build tree on PYTHONPATH
    from _oscillint import *  # noqa: F401,F403
    from _oscillint import __version__  # noqa: F401
