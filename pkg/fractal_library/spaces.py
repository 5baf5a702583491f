from fractions import Fraction

from symbolic_core.exact import Surd
from similarity_space.space import SpaceDescriptor
from fractal_library.geometries import (
    CantorGeometry,
    CarpetGeometry,
    GasketGeometry,
    KochGeometry,
    SigmaGeometry,
)


def make_cantor():
    """Middle-third Cantor set from the unit segment; children C1 (left), C2 (right)."""
    return SpaceDescriptor(
        name="cantor",
        branching=2,
        metric="euclidean-1d",
        geometry=CantorGeometry(),
        separation_degree=1,
        separation_constant=Fraction(1, 3),
        boundary_agreement="none",
    )


def make_carpet():
    """Sierpinski carpet on the unit square; eight children S1..S8."""
    return SpaceDescriptor(
        name="carpet",
        branching=8,
        metric="euclidean-2d",
        geometry=CarpetGeometry(),
        separation_degree=1,
        separation_constant=Fraction(1, 3),
        boundary_agreement="left-lower",
    )


def make_gasket():
    """
    Sierpinski gasket in the unit equilateral triangle.

    First-order subsets all touch, so separation only holds from degree 2.
    """
    return SpaceDescriptor(
        name="gasket",
        branching=3,
        metric="euclidean-2d",
        geometry=GasketGeometry(),
        separation_degree=2,
        separation_constant=Surd(Fraction(1, 8), 3),
        boundary_agreement="left-lower",
    )


def make_koch():
    return SpaceDescriptor(
        name="koch",
        branching=4,
        metric="euclidean-2d",
        geometry=KochGeometry(),
        separation_degree=1,
        separation_constant=Surd(Fraction(1, 9), 7),
        boundary_agreement="right-endpoint",
    )


def make_sigma():
    """Binary strings with d(s, t) = sum |s_k - t_k| / 2^(k-1)."""
    return SpaceDescriptor(
        name="sigma",
        branching=2,
        metric="sigma",
        geometry=SigmaGeometry(),
        separation_degree=1,
        separation_constant=Fraction(1),
        boundary_agreement="none",
        display_offset=0,
    )


SPACE_FACTORIES = {
    "cantor": make_cantor,
    "carpet": make_carpet,
    "gasket": make_gasket,
    "koch": make_koch,
    "sigma": make_sigma,
}


def space_by_name(name):
    try:
        return SPACE_FACTORIES[name]()
    except KeyError:
        raise KeyError(f"Unknown space {name!r}; choose from {sorted(SPACE_FACTORIES)}") from None
