"""Duality ratios in Gaussian-weighted holomorphic L^p spaces."""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
