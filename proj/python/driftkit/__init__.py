"""Python bindings for the driftkit C++ core."""
from ._driftkit import *  # noqa: F401,F403
from ._driftkit import __doc__  # noqa: F401
