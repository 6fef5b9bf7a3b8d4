"""Exact intersection lattices, augmentations and generic unions of line arrangements."""

__version__ = "0.1.0"

from .field import QA, QG, QQ, FieldDescriptor, FieldElement, parse_element, format_element  # noqa: E402
from .geometry import Arrangement, ProjLine, ProjPoint, compute_lattice, lattice_of  # noqa: E402
from .combin import automorphism_group, isomorphisms, ordered_isomorphic  # noqa: E402
from .construct import augment, make_generic, ordered_union, theorem_main_construction  # noqa: E402
from .arrfile import parse_arrangement_file, read_arrangement, write_arrangement  # noqa: E402

__all__ = [
    "QQ", "QA", "QG", "FieldDescriptor", "FieldElement", "parse_element", "format_element",
    "Arrangement", "ProjLine", "ProjPoint", "compute_lattice", "lattice_of",
    "automorphism_group", "isomorphisms", "ordered_isomorphic",
    "augment", "make_generic", "ordered_union", "theorem_main_construction",
    "parse_arrangement_file", "read_arrangement", "write_arrangement",
]
