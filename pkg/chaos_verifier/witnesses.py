"""
Constructive witnesses for the three Devaney ingredients.

Each one follows the mechanism of the chaos proof for similarity maps:
periodic points come from repeating a prefix, a transitive orbit from a
sequence containing every finite block, and sensitivity from two tails that
land in separated subsets after the shared prefix is shifted away.
"""

import itertools
import logging
from dataclasses import dataclass

from symbolic_core.address import Address, ConstantDigit, RepeatingBlock
from symbolic_core.debruijn import DEFAULT_CAP, contains_all_blocks, debruijn_transitive_prefix
from symbolic_core.sigma_metric import sigma_distance
from similarity_space.checks import check_separation
from similarity_space.space import depth_for_tolerance
from utils.errors import MissingWitnessTableError

logger = logging.getLogger(__name__)


def as_address(space, target):
    if isinstance(target, Address):
        return target
    return Address(space.branching, tuple(target), ConstantDigit(0))


def exact_distance(space, a, b):
    """Exact distance on the string space, None for geometric spaces."""
    if space.metric != "sigma" or not (a.is_finite_tail and b.is_finite_tail):
        return None
    return sigma_distance(a, b)


def periodic_approx(space, target, eps):
    """
    Periodic address in the same depth-k subset as ``target``.

    k is the least depth (at least 1) whose subsets have diameter below
    ``eps``, so the result is within ``eps`` of the target.

    Returns:
        tuple[Address, int]: The periodic address and the depth k.
    """
    target = as_address(space, target)
    k = max(1, depth_for_tolerance(space, eps))
    return Address.periodic(space.branching, target.digits(k)), k


@dataclass(frozen=True)
class TransitiveWitness:
    space: str
    branching: int
    block_length: int
    prefix: tuple
    schedule: dict

    @property
    def address(self):
        return Address(self.branching, self.prefix, ConstantDigit(0))

    def to_dict(self):
        return {
            "space": self.space,
            "block_length": self.block_length,
            "prefix": "".join(str(d) for d in self.prefix),
            "schedule": {"".join(str(d) for d in w): p for w, p in self.schedule.items()},
        }


def _first_position(sequence, word):
    n = len(word)
    for p in range(len(sequence) - n + 1):
        if sequence[p : p + n] == word:
            return p
    return None


def transitive_witness(space, L, cap=DEFAULT_CAP):
    """
    Orbit prefix entering every subset of depth <= L, with the shift count for each.

    Args:
        space (SpaceDescriptor): The space.
        L (int): Longest block length.
        cap (int): Largest allowed m**L.

    Returns:
        TransitiveWitness: The de Bruijn prefix and its visit schedule.
    """
    m = space.branching
    prefix = tuple(debruijn_transitive_prefix(m, L, cap))
    schedule = {}
    for length in range(1, L + 1):
        for word in itertools.product(range(m), repeat=length):
            schedule[word] = _first_position(prefix, word)
    logger.info("Transitive prefix for %s: %d digits cover %d blocks", space.name, len(prefix), len(schedule))
    return TransitiveWitness(space.name, m, L, prefix, schedule)


def verify_transitive_witness(witness):
    """Re-check every scheduled visit by shifting the address and reading the block."""
    if not contains_all_blocks(witness.prefix, witness.branching, witness.block_length):
        return False
    address = witness.address
    for word, p in witness.schedule.items():
        if p is None:
            return False
        shifted = address.shift(p) if p else address
        if shifted.digits(len(word)) != word:
            return False
    return True


def separation_table(space, cap=4096, refine=14):
    """Witness table of the space at its separation degree."""
    if space.separation_constant is None:
        raise MissingWitnessTableError(f"{space.name} has no separation constant to certify against")
    return check_separation(space, space.separation_degree, cap=cap, refine=refine)


@dataclass(frozen=True)
class SensitivityPair:
    a: Address
    b: Address
    shifts: int
    initial_bound: object
    separation: object
    epsilon: object
    exact_initial: object = None
    exact_separated: object = None

    @property
    def passed(self):
        separated = self.separation.lower >= self.epsilon
        close = self.exact_initial is None or self.exact_initial <= self.initial_bound
        return separated and close


def sensitivity_pair(space, shared_prefix, report=None, word=None):
    """
    Two addresses sharing ``shared_prefix`` whose orbits separate by at least epsilon_0.

    The tails repeat a witness word and its nearest separated partner, so
    after ``len(shared_prefix)`` shifts the orbits sit in subsets whose
    certified distance is at least epsilon_0.

    Args:
        space (SpaceDescriptor): The space.
        shared_prefix (Sequence[int]): Common leading digits.
        report (SeparationReport | None): Precomputed witness table.
        word (tuple | None): Table entry to use; the smallest word by default.
    """
    if report is None:
        report = separation_table(space)
    table = report.table
    if not table:
        raise MissingWitnessTableError(f"{space.name} has an empty separation table")
    witness = table[word] if word is not None else table[min(table)]

    shared = tuple(shared_prefix)
    a = Address(space.branching, shared, RepeatingBlock(witness.word))
    b = Address(space.branching, shared, RepeatingBlock(witness.partner))
    return SensitivityPair(
        a=a,
        b=b,
        shifts=len(shared),
        initial_bound=space.diameter_law(len(shared)),
        separation=witness.bracket,
        epsilon=report.epsilon,
        exact_initial=exact_distance(space, a, b),
        exact_separated=exact_distance(space, a.shift(len(shared)), b.shift(len(shared)))
        if shared
        else exact_distance(space, a, b),
    )
