"""Exact classification toolkit for highest weight modules of twisted Yangians
attached to orthogonal and symplectic symmetric pairs."""

from .drinfeld import (DrinfeldTuple, HighestWeight, SymPoly, Verdict, associate,
                       classify_finite_dim, synthesize)
from .errors import TwYangianError
from .exactalg import RatFunc, UniPoly
from .tensorrep import SymmetricPair, build_pair, parse_pair

__version__ = "0.1.0"

__all__ = [
    "DrinfeldTuple", "HighestWeight", "SymPoly", "Verdict", "associate",
    "classify_finite_dim", "synthesize", "TwYangianError", "RatFunc", "UniPoly",
    "SymmetricPair", "build_pair", "parse_pair",
]
