from .geometries import (
    CARPET_CELLS,
    CantorGeometry,
    CarpetGeometry,
    GasketGeometry,
    KochGeometry,
    SigmaGeometry,
)
from .orbits import center_orbit
from .spaces import (
    SPACE_FACTORIES,
    make_cantor,
    make_carpet,
    make_gasket,
    make_koch,
    make_sigma,
    space_by_name,
)
from .tent_map import carpet_tent, carpet_tent_vectorized, tent_coordinate, tent_vectorized

__all__ = [
    "CARPET_CELLS",
    "CantorGeometry",
    "CarpetGeometry",
    "GasketGeometry",
    "KochGeometry",
    "SigmaGeometry",
    "center_orbit",
    "SPACE_FACTORIES",
    "make_cantor",
    "make_carpet",
    "make_gasket",
    "make_koch",
    "make_sigma",
    "space_by_name",
    "carpet_tent",
    "carpet_tent_vectorized",
    "tent_coordinate",
    "tent_vectorized",
]
