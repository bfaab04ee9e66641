"""Point-line geometry of the n-qubit real Pauli group.

Points are the nonidentity Pauli operators (as vectors of GF(2)^2n), lines
are commuting triples ``{a, b, a+b}``.  The package enumerates hyperplanes
and Veldkamp lines, applies the symplectic group and extracts Mermin
squares, ovoids and GQ(2, 4).
"""
__version__ = "0.1.0"

from .gf2core import (N_MAX, DimensionError, PauliVector, QubitRangeError, arf, q0, qp,
                      symplectic_form, transvect)
from .pauli_codec import SignedPauli, decode, encode, multiply, product
from .geometry import Geometry, build_geometry
from .hyperplanes import (Hyperplane, HyperplaneFamily, HyperplaneKind, Kind, classify,
                          enumerate_hyperplanes, perp_hyperplane, quadric_hyperplane)
from .veldkamp import VeldkampLine, VeldkampLineType, census, classify_line, veldkamp_line
from .group_action import SymplecticMap, Transvection, find_swap, hyperplane_orbits
from .subgeometries import (MerminSquare, check_gq, extract_grid, extract_ovoid,
                            wootters_selfdual)

__all__ = [
    "N_MAX", "DimensionError", "PauliVector", "QubitRangeError", "arf", "q0", "qp",
    "symplectic_form", "transvect", "SignedPauli", "decode", "encode", "multiply", "product",
    "Geometry", "build_geometry", "Hyperplane", "HyperplaneFamily", "HyperplaneKind", "Kind",
    "classify", "enumerate_hyperplanes", "perp_hyperplane", "quadric_hyperplane",
    "VeldkampLine", "VeldkampLineType", "census", "classify_line", "veldkamp_line",
    "SymplecticMap", "Transvection", "find_swap", "hyperplane_orbits", "MerminSquare",
    "check_gq", "extract_grid", "extract_ovoid", "wootters_selfdual",
]
