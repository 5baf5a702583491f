import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from similarity_space import (
    AxisRectangle,
    CellSet,
    Interval,
    OrientedTriangle,
    PolylineHull,
    address_of,
    check_diameter_condition,
    check_separation,
    enumerate_words,
    point_of,
    set_distance,
    subset_region,
    verify_similarity_identity,
)
from symbolic_core import Address, ConstantDigit, RepeatingBlock, Surd
from utils.errors import DigitRangeError, NotInSetError, OutsideRegionError, ResourceCapError

SQRT7_9 = math.sqrt(7) / 9


def test_subset_region_cantor(cantor):
    assert subset_region(cantor, []) == Interval(Fraction(0), Fraction(1))
    assert subset_region(cantor, [0]) == Interval(Fraction(0), Fraction(1, 3))


def test_subset_region_carpet_two_levels(carpet):
    region = subset_region(carpet, [7, 0])
    assert region == AxisRectangle(Fraction(2, 3), Fraction(7, 9), Fraction(2, 3), Fraction(7, 9))
    assert region.x_hi - region.x_lo == Fraction(1, 9)


def test_subset_region_rejects_bad_digit(carpet):
    with pytest.raises(DigitRangeError):
        subset_region(carpet, [8])


def test_regions_nest_to_depth_four(carpet, gasket, koch, cantor):
    for space in (cantor, gasket, koch):
        for word in itertools.product(range(space.branching), repeat=3):
            parent = subset_region(space, word)
            for j in range(space.branching):
                assert parent.contains_region(subset_region(space, word + (j,)))
    for word in itertools.product(range(8), repeat=2):
        parent = subset_region(carpet, word)
        for j in range(8):
            assert parent.contains_region(subset_region(carpet, word + (j,)))


def test_point_of_converges_to_cantor_endpoints(cantor):
    assert float(point_of(cantor, Address(2, (), ConstantDigit(0)), 1e-9)) == pytest.approx(0.0, abs=1e-9)
    assert float(point_of(cantor, Address(2, (), ConstantDigit(1)), 1e-9)) == pytest.approx(1.0, abs=1e-9)


def test_point_of_carpet_corner(carpet):
    x, y = point_of(carpet, Address(8, (), RepeatingBlock((7,))), 1e-6)
    assert float(x) == pytest.approx(1.0, abs=1e-6)
    assert float(y) == pytest.approx(1.0, abs=1e-6)


def test_address_of_carpet_boundary_agreement(carpet):
    """Shared vertical edges go to the left square, horizontal ones to the lower square."""
    assert address_of(carpet, (Fraction(1, 3), Fraction(1, 10)), 1) == [0]
    assert address_of(carpet, (Fraction(1, 5), Fraction(1, 3)), 1) == [0]
    assert address_of(carpet, (Fraction(2, 3), Fraction(5, 6)), 1) == [6]


def test_address_of_errors(carpet, cantor):
    with pytest.raises(NotInSetError):
        address_of(cantor, 0.5, 1)
    with pytest.raises(NotInSetError):
        address_of(carpet, (0.5, 0.5), 1)
    with pytest.raises(OutsideRegionError):
        address_of(carpet, (1.5, 0.5), 1)


@pytest.mark.parametrize("name", ["cantor", "carpet", "gasket", "koch", "sigma"])
def test_address_of_inverts_point_of(name, request):
    space = request.getfixturevalue(name)
    rng = np.random.default_rng(5)
    n = 4
    for _ in range(40):
        digits = tuple(int(d) for d in rng.integers(0, space.branching, size=n + 2))
        a = Address(space.branching, digits, ConstantDigit(0))
        point = point_of(space, a, float(space.diameter_law(n + 1)) / 2)
        assert address_of(space, point, n) == list(digits[:n])


def test_address_of_koch_shared_endpoint_goes_right(koch):
    assert address_of(koch, (1 / 3, 0.0), 1) == [1]
    assert address_of(koch, (0.0, 0.0), 2) == [0, 0]


def test_set_distance_cantor_first_level(cantor):
    bracket = set_distance(subset_region(cantor, [0]), subset_region(cantor, [1]))
    assert bracket.lower == Fraction(1, 3)
    assert bracket.upper == Fraction(1, 3)


def test_set_distance_of_a_region_to_itself(carpet):
    region = subset_region(carpet, [3, 5])
    bracket = set_distance(region, region)
    assert bracket.lower == 0
    assert bracket.upper == 0


def test_set_distance_carpet_diagonal_is_exact(carpet):
    bracket = set_distance(subset_region(carpet, [0]), subset_region(carpet, [7]))
    assert bracket.lower == Surd(Fraction(1, 3), 2)


def test_koch_distance_brackets_sqrt7_over_9(koch):
    bracket = set_distance(subset_region(koch, [0]), subset_region(koch, [2]), refine=8)
    assert bracket.lower <= SQRT7_9 <= bracket.upper
    assert bracket.width < 1e-4


def test_set_distance_rejects_mixed_regions(carpet, cantor):
    with pytest.raises(TypeError):
        set_distance(subset_region(carpet, []), subset_region(cantor, []))


def test_cellset_distance_uses_cell_centers():
    a = CellSet(np.array([[0, 0]]), 0.1)
    b = CellSet(np.array([[0, 3]]), 0.1)
    bracket = set_distance(a, b)
    assert bracket.upper == pytest.approx(0.3)
    assert bracket.lower == pytest.approx(0.3 - 0.1 * math.sqrt(2))


def test_diameter_condition_carpet(carpet):
    report = check_diameter_condition(carpet, 3)
    assert report.values == [Surd(Fraction(1, 3**n), 2) for n in (1, 2, 3)]
    assert report.passed


@pytest.mark.parametrize(
    "name, expected",
    [("gasket", [Fraction(1, 2), Fraction(1, 4)]), ("koch", [Fraction(1, 3), Fraction(1, 9)])],
)
def test_diameter_condition_laws(name, expected, request):
    report = check_diameter_condition(request.getfixturevalue(name), 2)
    assert report.values == expected
    assert report.passed


@pytest.mark.parametrize("name", ["cantor", "carpet", "gasket", "koch", "sigma"])
def test_diameter_condition_to_depth_eight(name, request):
    assert check_diameter_condition(request.getfixturevalue(name), 8).passed


def test_separation_carpet(carpet):
    report = check_separation(carpet, 1)
    assert report.epsilon == Fraction(1, 3)
    assert report.passed
    assert all(w.bracket.lower >= report.epsilon for w in report.witnesses)


def test_separation_cantor_and_sigma(cantor, sigma):
    assert check_separation(cantor, 1).epsilon == Fraction(1, 3)
    report = check_separation(sigma, 1)
    assert report.epsilon == 1
    assert report.passed


def test_separation_gasket_needs_degree_two(gasket):
    first = check_separation(gasket, 1)
    assert not first.passed
    assert len(first.unseparated) == 3
    second = check_separation(gasket, 2)
    assert float(second.epsilon) == pytest.approx(math.sqrt(3) / 8, abs=1e-9)
    assert second.passed


def test_separation_koch(koch):
    report = check_separation(koch, 1)
    assert float(report.epsilon) <= SQRT7_9 <= float(report.epsilon_upper)
    assert float(report.epsilon_upper) - float(report.epsilon) < 1e-6
    assert report.passed


def test_separation_respects_cap(carpet):
    with pytest.raises(ResourceCapError):
        check_separation(carpet, 5)


def test_similarity_identity_carpet_child(carpet):
    certificate = verify_similarity_identity(carpet, [4], 1)
    assert certificate.passed
    assert sorted(image for _, image, _ in certificate.mapping) == [(d,) for d in range(8)]


def test_similarity_identity_small_cases(cantor, koch):
    assert verify_similarity_identity(koch, [], 1).passed
    certificate = verify_similarity_identity(cantor, [0, 1], 2)
    assert certificate.passed
    assert len(certificate.mapping) == 4


@pytest.mark.parametrize("name", ["cantor", "carpet", "gasket", "koch", "sigma"])
def test_similarity_identity_for_all_short_prefixes(name, request):
    space = request.getfixturevalue(name)
    for length in range(4):
        for prefix in enumerate_words(space.branching, length):
            assert verify_similarity_identity(space, prefix, 1).passed


def test_similarity_report_schema(carpet):
    report = verify_similarity_identity(carpet, [0], 1).to_dict()
    assert set(report) == {"space", "check", "depth", "values", "witnesses", "pass"}


def _corners(region):
    if isinstance(region, AxisRectangle):
        return [(x, y) for x in (region.x_lo, region.x_hi) for y in (region.y_lo, region.y_hi)]
    if isinstance(region, OrientedTriangle):
        return list(region.vertices)
    if isinstance(region, PolylineHull):
        return [region.start, region.end]
    if isinstance(region, Interval):
        return [region.lo, region.hi]
    return []


def _word_pairs(words, sample, rng):
    pairs = list(itertools.combinations(words, 2))
    if sample is None or len(pairs) <= sample:
        return pairs
    return [pairs[i] for i in rng.choice(len(pairs), size=sample, replace=False)]


@pytest.mark.parametrize("name", ["cantor", "carpet", "gasket", "koch", "sigma"])
@pytest.mark.parametrize("depth, sample", [(1, None), (2, None), (3, 100)])
def test_distinct_subsets_meet_only_at_agreed_boundaries(name, depth, sample, request):
    """Same-depth subsets are either apart or share boundary points that address_of assigns to one of them."""
    space = request.getfixturevalue(name)
    rng = np.random.default_rng(depth)
    words = list(itertools.product(range(space.branching), repeat=depth))
    regions = {w: subset_region(space, w) for w in words}
    for u, v in _word_pairs(words, sample, rng):
        ru, rv = regions[u], regions[v]
        shared = [p for p in _corners(ru) if rv.contains_point(p)] + [p for p in _corners(rv) if ru.contains_point(p)]
        if not shared:
            assert set_distance(ru, rv, refine=2).lower > 0
            continue
        for point in shared:
            holders = {w for w, region in regions.items() if region.contains_point(point)}
            assert {u, v} <= holders
            assert tuple(address_of(space, point, depth)) in holders
