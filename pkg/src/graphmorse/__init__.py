"""Morse persistence of graph multivector fields built from relation matrices."""

from .conley import ConleyIndex, conley_index
from .metrics import acc_features, bottleneck, check_stability
from .morse import MGraph, MorseDecomposition, MorseSet, build_mgraph, morse_decomposition
from .multivector import MultivectorField, build_mvf, refines
from .persistence import (FiltrationScan, PersistenceDiagram, PersistencePoint, enriched_diagram,
                          morse_persistence, scan_filtration, slice_diagram)
from .relation import (BooleanRelation, RelationMatrix, critical_values, perturb, sup_distance,
                       threshold)
from .space import Cell, GraphSpace, edge, vertex

__all__ = [
    "BooleanRelation", "Cell", "ConleyIndex", "FiltrationScan", "GraphSpace", "MGraph",
    "MorseDecomposition", "MorseSet", "MultivectorField", "PersistenceDiagram",
    "PersistencePoint", "RelationMatrix", "acc_features", "bottleneck", "build_mgraph",
    "build_mvf", "check_stability", "conley_index", "critical_values", "edge",
    "enriched_diagram", "morse_decomposition", "morse_persistence", "perturb", "refines",
    "scan_filtration", "slice_diagram", "sup_distance", "threshold", "vertex",
]
