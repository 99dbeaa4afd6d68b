"""LCEN classification pipeline, diffMCC loss, metrics, and benchmark harness."""

from ._lcenclf import *  # noqa: F401,F403
from ._lcenclf import __doc__  # noqa: F401
