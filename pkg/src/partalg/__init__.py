"""Exact diagram algebras on set partitions, with a generic parameter x."""

__version__ = "0.1.0"

from .errors import PartalgError

__all__ = ["PartalgError", "__version__"]
