"""Numerical workbench for Markovian cocycle perturbations of the shift flow."""

from ._cocycle_lab import *  # noqa: F401,F403
from ._cocycle_lab import __version__  # noqa: F401
