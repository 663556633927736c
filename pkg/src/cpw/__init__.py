"""Exact computations in crossed products of function algebras by Z."""

from .crossed import CrossedElement, format_element, parse_element
from .dynsys import CircleRotation, FinitePermutation, IntegerShift, model_from_config
from .exactnum import GaussianRational

__version__ = "0.1.0"

__all__ = [
    "CircleRotation",
    "CrossedElement",
    "FinitePermutation",
    "GaussianRational",
    "IntegerShift",
    "format_element",
    "model_from_config",
    "parse_element",
]
