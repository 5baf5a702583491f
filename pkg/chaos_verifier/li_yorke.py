"""
Li-Yorke pairs built from alternating agreement blocks and separation markers.

Cycle j writes an agreement block of length 2^j (both addresses copy the same
digits) followed by one marker: a witness word in ``a`` and its separated
partner in ``b``. At the start of an agreement block of length L the shifted
orbits share L digits, so their distance is at most the depth-L diameter; at
a marker they lie in separated subsets.
"""

import logging
from dataclasses import dataclass, field

from symbolic_core.address import Address, ConstantDigit
from symbolic_core.exact import exact_str
from chaos_verifier.witnesses import separation_table
from utils.errors import MissingWitnessTableError

logger = logging.getLogger(__name__)

MIN_HORIZON = 4


@dataclass
class LiYorkePair:
    a: Address
    b: Address
    horizon: int
    epsilon: object
    proximal: list = field(default_factory=list)
    separated: list = field(default_factory=list)

    def to_dict(self):
        return {
            "horizon": self.horizon,
            "epsilon": exact_str(self.epsilon),
            "proximal": [
                {"time": t, "shared": length, "upper": exact_str(bound)} for t, length, bound in self.proximal
            ],
            "separated": [
                {"time": t, "word": list(u), "partner": list(v), "lower": exact_str(lower)}
                for t, u, v, lower in self.separated
            ],
        }


def li_yorke_pair(space, horizon, report=None):
    """
    Construct a proximal-and-separated pair up to ``horizon`` shifts.

    Args:
        space (SpaceDescriptor): The space.
        horizon (int): Largest shift count scheduled, at least 4.
        report (SeparationReport | None): Precomputed witness table.

    Returns:
        LiYorkePair: The addresses and the scheduled times with their bounds.
    """
    if horizon < MIN_HORIZON:
        raise ValueError(f"horizon must be at least {MIN_HORIZON} to fit one agreement/marker cycle")
    if report is None:
        report = separation_table(space)
    if not report.witnesses:
        raise MissingWitnessTableError(f"{space.name} has an empty separation table")
    witness = min(report.witnesses, key=lambda w: w.word)
    u, v = witness.word, witness.partner

    digits_a, digits_b = [], []
    proximal, separated = [], []
    length = 1
    while len(digits_a) <= horizon:
        t = len(digits_a)
        proximal.append((t, length, space.diameter_law(length)))
        # agreement digits repeat the witness word so they stay in F_u
        block = [u[i % len(u)] for i in range(length)]
        digits_a += block
        digits_b += block
        t = len(digits_a)
        if t > horizon:
            break
        separated.append((t, u, v, witness.bracket.lower))
        digits_a += u
        digits_b += v
        length *= 2

    a = Address(space.branching, tuple(digits_a), ConstantDigit(u[0]))
    b = Address(space.branching, tuple(digits_b), ConstantDigit(u[0]))
    logger.info(
        "Li-Yorke pair on %s: %d proximal and %d separated times up to %d",
        space.name,
        len(proximal),
        len(separated),
        horizon,
    )
    return LiYorkePair(a, b, horizon, report.epsilon, proximal, separated)


def verify_li_yorke(space, pair, report=None):
    """
    Re-check a schedule against the digits of its addresses.

    A proximal entry (t, L, bound) needs L shared digits after t shifts and
    bound equal to the depth-L diameter; a separated entry needs the shifted
    addresses to start with a witness pair whose certified distance is at
    least epsilon_0. Bounds must decrease along the proximal entries and
    there must be at least one entry of each kind.
    """
    if report is None:
        report = separation_table(space)
    pairs = {(w.word, w.partner): w.bracket for w in report.witnesses}
    pairs.update({(w.partner, w.word): w.bracket for w in report.witnesses})

    a, b = pair.a, pair.b
    if not pair.proximal or not pair.separated:
        return False
    for t, length, bound in pair.proximal:
        if a.digits(t + length)[t:] != b.digits(t + length)[t:]:
            return False
        if bound != space.diameter_law(length):
            return False
    bounds = [bound for _, _, bound in pair.proximal]
    if any(not later < earlier for earlier, later in zip(bounds, bounds[1:])):
        return False
    for t, u, v, lower in pair.separated:
        n = len(u)
        got_u = a.digits(t + n)[t:]
        got_v = b.digits(t + n)[t:]
        bracket = pairs.get((got_u, got_v))
        if bracket is None or got_u != tuple(u) or got_v != tuple(v):
            return False
        if not bracket.lower >= report.epsilon or not lower <= bracket.lower:
            return False
    return True


def separated_times(space, a, b, horizon, report=None):
    """
    Scan for separated times of an arbitrary pair; identical addresses have none.

    Returns:
        list[int]: Shift counts t <= horizon at which the next ``degree``
            digits of ``a`` and ``b`` form a separated witness pair.
    """
    if report is None:
        report = separation_table(space)
    pairs = {(w.word, w.partner) for w in report.witnesses}
    pairs |= {(v, u) for u, v in pairs}
    n = report.degree
    digits_a = a.digits(horizon + n)
    digits_b = b.digits(horizon + n)
    return [
        t
        for t in range(horizon + 1)
        if (digits_a[t : t + n], digits_b[t : t + n]) in pairs
    ]
