"""Finite-scale duality between non-Archimedean uniform spaces and subdirect
powers of the full clone, with executable checks of its theorems."""

from .clone_algebra import FinAlgebra, Labeling, OpTable, PartCongruence, SpectrumPoint
from .duality import AlgHom
from .finspace import FinSpace, UniformMap
from .partition import Partition
from .tower import LevelCongruence, SubTree, Tower

__all__ = [
    "AlgHom",
    "FinAlgebra",
    "FinSpace",
    "Labeling",
    "LevelCongruence",
    "OpTable",
    "PartCongruence",
    "Partition",
    "SpectrumPoint",
    "SubTree",
    "Tower",
    "UniformMap",
]

__version__ = "0.1.0"
