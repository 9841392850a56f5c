"""Positive-definite denoising, extension and pole analysis of sampled
response functions. Thin re-export of the compiled module."""

from ._posdef import *  # noqa: F401,F403
from ._posdef import __doc__  # noqa: F401

__version__ = "0.1.0"
