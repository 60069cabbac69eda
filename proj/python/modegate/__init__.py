"""Design toolkit for mode-engineered Molmer-Sorensen gates in ion chains.

Everything lives in the compiled extension; this package just re-exports it.
"""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
