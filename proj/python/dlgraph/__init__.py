"""Diestel-Leader graphs: growth, spectra, Cayley structure, cells, walks."""

from dlgraph._core import *  # noqa: F401,F403
from dlgraph._core import __version__  # noqa: F401
