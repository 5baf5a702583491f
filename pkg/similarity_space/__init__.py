from .checks import (
    DiameterReport,
    SeparationReport,
    SeparationWitness,
    SimilarityCertificate,
    check_diameter_condition,
    check_separation,
    enumerate_words,
    verify_similarity_identity,
)
from .distance import koch_distance, polygon_distance, set_distance
from .regions import (
    AxisRectangle,
    Bracket,
    CellSet,
    Cylinder,
    Interval,
    OrientedTriangle,
    PolylineHull,
)
from .space import Geometry, SpaceDescriptor, address_of, depth_for_tolerance, point_of, subset_region

__all__ = [
    "DiameterReport",
    "SeparationReport",
    "SeparationWitness",
    "SimilarityCertificate",
    "check_diameter_condition",
    "check_separation",
    "enumerate_words",
    "verify_similarity_identity",
    "koch_distance",
    "polygon_distance",
    "set_distance",
    "AxisRectangle",
    "Bracket",
    "CellSet",
    "Cylinder",
    "Interval",
    "OrientedTriangle",
    "PolylineHull",
    "Geometry",
    "SpaceDescriptor",
    "address_of",
    "depth_for_tolerance",
    "point_of",
    "subset_region",
]
