"""
Catalogue of the rolling and Monge constructions: coframes, systems, maps and constants.
"""

from .catalogue import (
    ModelEntry,
    ModelParameters,
    build,
    constant_tables,
    constants,
    dump,
    get_entry,
    list_models,
)
from .monge import DerivedF, MongeData, derive_F, monge_data, monge_F, sl2_pair_F
from .named import NamedCoframe, Relation

__all__ = [
    "ModelEntry",
    "ModelParameters",
    "build",
    "constant_tables",
    "constants",
    "dump",
    "get_entry",
    "list_models",
    "DerivedF",
    "MongeData",
    "derive_F",
    "monge_data",
    "monge_F",
    "sl2_pair_F",
    "NamedCoframe",
    "Relation",
]
