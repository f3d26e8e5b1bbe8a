"""Utility modules for hyperadia."""

from .output_formatter import OutputFormatter
from .reference import ReferenceData, ReferenceEntry, compare, load_reference

__all__ = ["OutputFormatter", "ReferenceData", "ReferenceEntry", "compare", "load_reference"]
