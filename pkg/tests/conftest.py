import pytest

from dass_builder import MapSpec, escape_time_tree
from fractal_library import make_cantor, make_carpet, make_gasket, make_koch, make_sigma

# the carpet index string whose shift orbit is plotted as a trajectory of centers
FIG4_INDEX = "27731137313277182431515822461784764852656358462545627125423317216244"

FIG9A_START = (0.044608921784357, 0.287657531506301)
FIG9B_START = (0.910182036407281, 0.329865973194639)

SMALL_H = 2.0**-9


@pytest.fixture(scope="session")
def cantor():
    return make_cantor()


@pytest.fixture(scope="session")
def carpet():
    return make_carpet()


@pytest.fixture(scope="session")
def gasket():
    return make_gasket()


@pytest.fixture(scope="session")
def koch():
    return make_koch()


@pytest.fixture(scope="session")
def sigma():
    return make_sigma()


@pytest.fixture(scope="session")
def separable_spec():
    """Uncoupled 2-D logistic map with r = (4.2, 4.3)."""
    return MapSpec(r=(4.2, 4.3), mu=(0.0, 0.0))


@pytest.fixture(scope="session")
def perturbed_spec():
    """Cross-coupled logistic map with r = (4.2, 4.5) and mu = (0.03, -0.05)."""
    return MapSpec(r=(4.2, 4.5), mu=(0.03, -0.05))


@pytest.fixture(scope="session")
def separable_tree(separable_spec):
    return escape_time_tree(separable_spec, 3, SMALL_H)


@pytest.fixture(scope="session")
def perturbed_tree(perturbed_spec):
    return escape_time_tree(perturbed_spec, 3, SMALL_H)
