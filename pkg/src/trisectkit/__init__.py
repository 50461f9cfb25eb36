"""Trisection diagrams of 3- and 4-manifolds and surfaces inside them."""

from .census import CatalogEntry, enumerate_triheeg
from .errors import TrisectError
from .fileformat import DiagramFile, parse, read_file, serialize, write_file
from .homology import AbelianGroup, ChainComplex, homology, smith_normal_form
from .links import Laurent, LinkDiagram, SectorLift, intersection_pairing, jones, kauffman_bracket, linking_number
from .ptri import (
    PseudoTrisectionDiagram,
    TrisectionIndices4,
    band_stabilize,
    boundary_connect_sum_4,
    boundary_stab_shift,
    indices_4,
    torus_stabilize,
    validate_ptri,
)
from .shadow import (
    PseudoShadowDiagram,
    boundary_link,
    orientability,
    surface_euler_characteristic,
    validate_shadow,
)
from .surfmap import CombinatorialSurface, Curve, CurveSystem, classify_surface
from .triheeg import (
    TripleHeegaardDiagram,
    TrisectionIndices3,
    connected_sum_3,
    handleslide_3,
    heegaard_stabilize_3,
    indices_3,
    realize_homology_3,
    stabilize_3,
    validate_triheeg,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "CatalogEntry",
    "ChainComplex",
    "CombinatorialSurface",
    "Curve",
    "CurveSystem",
    "DiagramFile",
    "Laurent",
    "LinkDiagram",
    "PseudoShadowDiagram",
    "PseudoTrisectionDiagram",
    "SectorLift",
    "TripleHeegaardDiagram",
    "TrisectError",
    "TrisectionIndices3",
    "TrisectionIndices4",
    "band_stabilize",
    "boundary_connect_sum_4",
    "boundary_link",
    "boundary_stab_shift",
    "classify_surface",
    "connected_sum_3",
    "enumerate_triheeg",
    "handleslide_3",
    "heegaard_stabilize_3",
    "homology",
    "indices_3",
    "indices_4",
    "intersection_pairing",
    "jones",
    "kauffman_bracket",
    "linking_number",
    "orientability",
    "parse",
    "read_file",
    "realize_homology_3",
    "serialize",
    "smith_normal_form",
    "stabilize_3",
    "surface_euler_characteristic",
    "torus_stabilize",
    "validate_ptri",
    "validate_shadow",
    "validate_triheeg",
    "write_file",
]
