"""Exact computation with evolution algebras and their subalgebra lattices."""

from .algebra import EvolutionAlgebra
from .errors import EvolabError
from .field import GF, QQ, FieldSpec
from .lattice import Lattice, build_lattice
from .linalg import Subspace
from .subalgebras import SubalgebraSet, enumerate_subalgebras
from .verdict import Verdict

__all__ = [
    "EvolutionAlgebra",
    "EvolabError",
    "FieldSpec",
    "GF",
    "QQ",
    "Lattice",
    "Subspace",
    "SubalgebraSet",
    "Verdict",
    "build_lattice",
    "enumerate_subalgebras",
]

__version__ = "0.1.0"
