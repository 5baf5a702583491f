import logging

import numpy as np

from symbolic_core.address import Address, ConstantDigit, is_periodic
from symbolic_core.exact import exact_str
from chaos_verifier.reports import WitnessReport, certified
from chaos_verifier.witnesses import (
    exact_distance,
    periodic_approx,
    separation_table,
    sensitivity_pair,
    transitive_witness,
    verify_transitive_witness,
)

logger = logging.getLogger(__name__)

DEFAULT_EPSILONS = (0.5, 0.1, 0.02)


def _random_digits(rng, m, n):
    return tuple(int(d) for d in rng.integers(0, m, size=n))


def _periodic_report(space, targets, epsilons):
    report = WitnessReport("periodic-density", space.name, {"eps": list(epsilons), "samples": len(targets)})
    for target in targets:
        for eps in epsilons:
            p, k = periodic_approx(space, target, eps)
            bound = space.diameter_law(k)
            shares = p.digits(k) == target.digits(k)
            ok = shares and is_periodic(p) is not None and bound < eps
            exact = exact_distance(space, target, p)
            if exact is not None:
                ok = ok and exact <= bound
                report.quantities.append(certified(exact, "exact-sigma"))
            else:
                report.quantities.append(certified(bound, f"diameter-law-depth-{k}"))
            report.passed = report.passed and ok
    return report


def _transitive_report(space, L, cap):
    witness = transitive_witness(space, L, cap)
    ok = verify_transitive_witness(witness)
    return WitnessReport(
        "transitivity",
        space.name,
        {"block_length": L},
        witnesses=[witness.to_dict()],
        horizon=len(witness.prefix),
        passed=ok,
    )


def _sensitivity_report(space, prefixes, separation):
    report = WitnessReport("sensitivity", space.name, {"samples": len(prefixes)})
    for shared in prefixes:
        pair = sensitivity_pair(space, shared, separation)
        report.witnesses.append(
            {
                "shared": list(shared),
                "shifts": pair.shifts,
                "initial_upper": certified(pair.initial_bound, "diameter-law"),
                "separated": pair.separation.to_dict(),
            }
        )
        report.passed = report.passed and pair.passed
    report.quantities.append(certified(separation.epsilon, "separation-table"))
    return report


def devaney_report(
    space,
    depth,
    samples,
    seed=0,
    epsilons=DEFAULT_EPSILONS,
    enumeration_cap=4096,
    debruijn_cap=1 << 20,
    refine=14,
):
    """
    Run the three Devaney witnesses on seeded random samples.

    Every sample task draws from its own child of ``SeedSequence(seed)``, so
    the report is reproducible and independent of evaluation order.

    Args:
        space (SpaceDescriptor): The space; it must declare a separation constant.
        depth (int): Digits per random target / shared prefix and transitive block length.
        samples (int): Number of random targets and of sensitivity prefixes.
        seed (int): Root seed.

    Returns:
        dict: ``{"seed", "space", "depth", "reports", "pass"}``.
    """
    separation = separation_table(space, cap=enumeration_cap, refine=refine)
    m = space.branching
    children = np.random.SeedSequence(seed).spawn(2 * samples)
    rngs = [np.random.default_rng(child) for child in children]

    targets = []
    for rng in rngs[:samples]:
        digits = _random_digits(rng, m, depth)
        targets.append(Address(m, digits, ConstantDigit(int(rng.integers(0, m)))))
    prefixes = [_random_digits(rng, m, depth) for rng in rngs[samples:]]

    reports = [
        _periodic_report(space, targets, epsilons),
        _transitive_report(space, depth, debruijn_cap),
        _sensitivity_report(space, prefixes, separation),
    ]
    passed = all(r.passed for r in reports)
    logger.info("Devaney report on %s (seed %d): %s", space.name, seed, "pass" if passed else "FAIL")
    return {
        "space": space.name,
        "seed": seed,
        "depth": depth,
        "epsilon": exact_str(separation.epsilon),
        "reports": [r.to_dict() for r in reports],
        "pass": passed,
    }
