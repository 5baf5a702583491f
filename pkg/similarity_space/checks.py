import itertools
import logging
import math
from dataclasses import dataclass, field

from symbolic_core.address import Address, ConstantDigit
from symbolic_core.exact import exact_str
from similarity_space.distance import DEFAULT_REFINE, set_distance
from similarity_space.space import subset_region
from utils.errors import ResourceCapError

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 4096
_DIAMETER_REL_TOL = 1e-9


def enumerate_words(m, n, cap=DEFAULT_ENUMERATION_CAP):
    if m**n > cap:
        raise ResourceCapError(f"{m}^{n} words exceed the enumeration cap of {cap}")
    return list(itertools.product(range(m), repeat=n))


def _digits_text(word):
    return "".join(str(d) for d in word)


@dataclass
class DiameterReport:
    space: str
    depth: int
    values: list
    measured: list
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {
            "space": self.space,
            "check": "diameter",
            "depth": self.depth,
            "values": [exact_str(v) for v in self.values],
            "measured": [exact_str(v) for v in self.measured],
            "witnesses": self.violations,
            "pass": self.passed,
        }


def _close(measured, law):
    if not isinstance(measured, float) and not isinstance(law, float):
        if measured == law:
            return True
    return math.isclose(float(measured), float(law), rel_tol=_DIAMETER_REL_TOL, abs_tol=1e-300)


def check_diameter_condition(space, N, cap=DEFAULT_ENUMERATION_CAP):
    """
    Diameters d_1, ..., d_N from the closed-form law, checked against the regions.

    Region diameters are measured over every depth-n subset while m^n stays
    under ``cap`` and on the all-zeros subset beyond it.

    Returns:
        DiameterReport: Law values, measured values and any violations
            (non-decreasing step or law/measurement mismatch).
    """
    if N < 1:
        raise ValueError(f"depth must be at least 1, got {N}")

    values = [space.diameter_law(n) for n in range(1, N + 1)]
    measured = []
    violations = []
    for n in range(1, N + 1):
        if space.branching**n <= cap:
            regions = (subset_region(space, w) for w in itertools.product(range(space.branching), repeat=n))
            value = max((r.diameter() for r in regions), key=float)
        else:
            value = subset_region(space, (0,) * n).diameter()
        measured.append(value)
        if not _close(value, values[n - 1]):
            violations.append({"depth": n, "kind": "mismatch", "measured": exact_str(value), "law": exact_str(values[n - 1])})

    for n in range(1, N):
        if not values[n] < values[n - 1]:
            violations.append({"depth": n + 1, "kind": "not-decreasing"})

    logger.info("%s diameter check to depth %d: %d violations", space.name, N, len(violations))
    return DiameterReport(space.name, N, values, measured, violations)


@dataclass(frozen=True)
class SeparationWitness:
    word: tuple
    partner: tuple
    bracket: object

    def to_dict(self):
        return {
            "word": _digits_text(self.word),
            "partner": _digits_text(self.partner),
            **self.bracket.to_dict(),
        }


@dataclass
class SeparationReport:
    space: str
    degree: int
    epsilon: object
    epsilon_upper: object
    witnesses: list
    unseparated: list
    declared: object = None

    @property
    def table(self):
        return {w.word: w for w in self.witnesses}

    @property
    def matches_declared(self):
        if self.declared is None or self.epsilon is None:
            return self.declared is None
        exact = not isinstance(self.epsilon, float) and not isinstance(self.epsilon_upper, float)
        if exact:
            return self.epsilon <= self.declared <= self.epsilon_upper
        slack = 1e-9
        return float(self.epsilon) - slack <= float(self.declared) <= float(self.epsilon_upper) + slack

    @property
    def passed(self):
        return not self.unseparated and self.epsilon is not None and self.matches_declared

    def to_dict(self):
        return {
            "space": self.space,
            "check": "separation",
            "depth": self.degree,
            "values": [
                exact_str(self.epsilon) if self.epsilon is not None else None,
                exact_str(self.epsilon_upper) if self.epsilon_upper is not None else None,
            ],
            "declared": exact_str(self.declared) if self.declared is not None else None,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "unseparated": [_digits_text(w) for w in self.unseparated],
            "pass": self.passed,
        }


def check_separation(space, degree, cap=DEFAULT_ENUMERATION_CAP, refine=DEFAULT_REFINE):
    """
    Separation constant of the given degree with a witness per prefix.

    Each depth-``degree`` subset is paired with its nearest separated partner:
    the subset with the smallest certified lower bound that is still positive.
    The estimate of epsilon_0 is the minimum of those lower bounds, so every
    witness distance is at least the reported value.

    Args:
        space (SpaceDescriptor): The space.
        degree (int): Prefix length n.
        cap (int): Largest number of prefixes to enumerate.
        refine (int): Refinement depth for Koch distances.

    Returns:
        SeparationReport: Estimate, witness table and unseparated prefixes.
    """
    if degree < 1:
        raise ValueError(f"separation degree must be at least 1, got {degree}")
    words = enumerate_words(space.branching, degree, cap)
    regions = {w: subset_region(space, w) for w in words}

    brackets = {}
    for u, v in itertools.combinations(words, 2):
        brackets[(u, v)] = brackets[(v, u)] = set_distance(regions[u], regions[v], refine)

    witnesses = []
    unseparated = []
    for w in words:
        candidates = [(brackets[(w, u)], u) for u in words if u != w and brackets[(w, u)].lower > 0]
        if not candidates:
            unseparated.append(w)
            continue
        bracket, partner = min(candidates, key=lambda item: (float(item[0].lower), item[1]))
        witnesses.append(SeparationWitness(w, partner, bracket))

    epsilon = epsilon_upper = None
    if witnesses:
        tightest = min(witnesses, key=lambda wit: float(wit.bracket.lower))
        epsilon = tightest.bracket.lower
        epsilon_upper = tightest.bracket.upper

    logger.info(
        "%s separation of degree %d: epsilon=%s, %d unseparated",
        space.name,
        degree,
        exact_str(epsilon) if epsilon is not None else None,
        len(unseparated),
    )
    return SeparationReport(
        space.name, degree, epsilon, epsilon_upper, witnesses, unseparated, space.separation_constant
    )


@dataclass
class SimilarityCertificate:
    space: str
    prefix: tuple
    depth: int
    mapping: list
    bijective: bool
    nested: bool

    @property
    def passed(self):
        return self.bijective and self.nested

    def to_dict(self):
        return {
            "space": self.space,
            "check": "similarity",
            "depth": self.depth,
            "values": [_digits_text(self.prefix)],
            "witnesses": [
                {"word": _digits_text(word), "image": _digits_text(image), "nested": nested}
                for word, image, nested in self.mapping
            ],
            "pass": self.passed,
        }


def verify_similarity_identity(space, prefix, k, cap=DEFAULT_ENUMERATION_CAP):
    """
    Check that shifting away ``prefix`` maps its depth-k children onto all depth-k subsets.

    The certificate pairs each ``prefix + w`` with its shifted image and
    records whether its region is nested in the region of ``prefix``.
    """
    prefix = tuple(prefix)
    m = space.branching
    words = enumerate_words(m, k, cap)
    parent = subset_region(space, prefix)

    mapping = []
    for w in words:
        word = prefix + w
        address = Address(m, word, ConstantDigit(0))
        image = address.shift(len(prefix)).digits(k) if prefix else address.digits(k)
        nested = parent.contains_region(subset_region(space, word))
        mapping.append((word, image, nested))

    images = [image for _, image, _ in mapping]
    bijective = len(set(images)) == len(words) and set(images) == set(words)
    nested = all(flag for _, _, flag in mapping)
    return SimilarityCertificate(space.name, prefix, k, mapping, bijective, nested)
