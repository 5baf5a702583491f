"""
Maps whose non-escaping points carve out a dynamical self-similar set.

The logistic family x -> r x (1 - x) with r > 4 is applied per coordinate,
optionally perturbed by a coupling term mu_i * chi_i(x). The tent
realization of the carpet's similarity map uses the same spec type with
``kind="tent"``.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from fractal_library.tent_map import carpet_tent_vectorized
from utils.errors import PluginResolutionError

logger = logging.getLogger(__name__)

THIRDS_PIECES = 9


def _linear_cross(points, mu):
    # coordinate i is pushed by mu_i times the next coordinate (x <- y, y <- x in 2-D)
    return mu * np.roll(points, -1, axis=-1)


def _no_coupling(points, mu):
    return np.zeros_like(points)


COUPLINGS = {
    "linear-cross": _linear_cross,
    "none": _no_coupling,
}


def register_coupling(name, function):
    """
    Register a coupling plug-in chi.

    Args:
        name (str): Identifier used in ``MapSpec.coupling``.
        function (Callable): ``function(points, mu)`` returning an array shaped
            like ``points``; it is added to the logistic term.
    """
    COUPLINGS[name] = function


def resolve_coupling(name):
    try:
        return COUPLINGS[name]
    except KeyError:
        raise PluginResolutionError(f"Unknown coupling {name!r}; registered: {sorted(COUPLINGS)}") from None


@dataclass(frozen=True)
class MapSpec:
    r: tuple
    mu: tuple = None
    coupling: str = "linear-cross"
    kind: str = "logistic"
    box: tuple = None
    f0_margin: float = 0.0
    escape_domain: str = "box"
    first_iterate: int = 1
    partition: str = None
    expected_branching: int = None

    def __post_init__(self):
        r = tuple(float(v) for v in self.r)
        if not r:
            raise ValueError("MapSpec needs at least one coordinate")
        mu = tuple(float(v) for v in self.mu) if self.mu is not None else (0.0,) * len(r)
        if len(mu) != len(r):
            raise ValueError(f"r has {len(r)} entries but mu has {len(mu)}")
        box = self.box if self.box is not None else ((0.0, 1.0),) * len(r)
        box = tuple((float(lo), float(hi)) for lo, hi in box)
        if len(box) != len(r) or any(hi <= lo for lo, hi in box):
            raise ValueError(f"bad working box {box}")
        if self.f0_margin < 0 or any(2 * self.f0_margin >= hi - lo for lo, hi in box):
            raise ValueError(f"escape margin {self.f0_margin} does not fit the box")
        if self.kind not in ("logistic", "tent"):
            raise ValueError(f"Unknown map kind {self.kind!r}")

        object.__setattr__(self, "r", r)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "box", box)
        if self.expected_branching is None:
            object.__setattr__(self, "expected_branching", 2 ** len(r))

    @property
    def dimension(self):
        return len(self.r)

    @property
    def f0(self):
        """Escape domain F0 as an axis box inside the working box F."""
        return tuple((lo + self.f0_margin, hi - self.f0_margin) for lo, hi in self.box)

    @property
    def is_coupled(self):
        return any(self.mu)

    @property
    def lipschitz(self):
        if self.kind == "tent":
            return 3.0
        return max(self.r) + sum(abs(m) for m in self.mu)

    def to_dict(self):
        return {
            "r": list(self.r),
            "mu": list(self.mu),
            "coupling": self.coupling,
            "kind": self.kind,
            "box": [list(b) for b in self.box],
            "f0_margin": self.f0_margin,
            "escape_domain": self.escape_domain,
            "first_iterate": self.first_iterate,
            "partition": self.partition,
            "expected_branching": self.expected_branching,
        }

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        data["r"] = tuple(data["r"])
        data["mu"] = tuple(data["mu"])
        data["box"] = tuple(tuple(b) for b in data["box"])
        return cls(**data)


def tent_map_spec():
    """The carpet tent map: F0 is the unit square without its open middle ninth."""
    return MapSpec(
        r=(3.0, 3.0),
        coupling="none",
        kind="tent",
        escape_domain="carpet",
        first_iterate=0,
        partition="thirds",
        expected_branching=8,
    )


def map_points(spec, points):
    """Apply the map to an array whose last axis holds the coordinates."""
    points = np.asarray(points, dtype=float)
    if spec.kind == "tent":
        flat = points.reshape(-1, 2)
        return carpet_tent_vectorized(flat).reshape(points.shape)
    r = np.asarray(spec.r)
    out = r * points * (1.0 - points)
    if spec.is_coupled:
        out = out + resolve_coupling(spec.coupling)(points, np.asarray(spec.mu))
    return out


def in_box(box, points):
    inside = np.ones(points.shape[:-1], dtype=bool)
    for axis, (lo, hi) in enumerate(box):
        values = points[..., axis]
        inside &= (values >= lo) & (values <= hi)
    return inside


def in_escape_domain(spec, points):
    inside = in_box(spec.f0, points)
    if spec.escape_domain == "carpet":
        x, y = points[..., 0], points[..., 1]
        hole = (x > 1 / 3) & (x < 2 / 3) & (y > 1 / 3) & (y < 2 / 3)
        inside &= ~hole
    return inside


def partition_pieces(spec, points):
    """Continuity piece of each point; 0 everywhere when the MapSpec has no partition."""
    if spec.partition is None:
        return np.zeros(points.shape[:-1], dtype=np.int64)
    if spec.partition != "thirds":
        raise PluginResolutionError(f"Unknown partition {spec.partition!r}")
    thirds = np.clip(np.floor(3 * np.nan_to_num(points, nan=0.0, posinf=1.0, neginf=0.0)), 0, 2)
    thirds = thirds.astype(np.int64)
    return thirds[..., 0] + 3 * thirds[..., 1]


def logistic_step(spec, x):
    """Uncoupled logistic step r_i x_i (1 - x_i)."""
    if spec.is_coupled:
        raise ValueError("logistic_step needs mu = 0; use perturbed_step")
    x = np.asarray(x, dtype=float)
    return np.asarray(spec.r) * x * (1.0 - x)


def perturbed_step(spec, p):
    """
    One step of the coupled map.

    Args:
        spec (MapSpec): Rates, coupling coefficients and coupling rule.
        p (Sequence[float]): Point with ``spec.dimension`` coordinates.

    Returns:
        numpy.ndarray: The image point.
    """
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != spec.dimension:
        raise ValueError(f"point has {p.shape[-1]} coordinates, map has {spec.dimension}")
    return map_points(spec, p)


def first_level_intervals_1d(r):
    """
    Points of [0, 1] whose first logistic image stays in [0, 1].

    Returns:
        tuple: ``((0, x_minus), (x_plus, 1), gap)`` with
            ``x_pm = (1 +- sqrt(1 - 4/r)) / 2``.
    """
    if r < 4:
        raise ValueError(f"r must be at least 4, got {r}")
    gap = math.sqrt(1 - 4 / r)
    x_minus = (1 - gap) / 2
    x_plus = (1 + gap) / 2
    return (0.0, x_minus), (x_plus, 1.0), gap
