"""
Resolved configuration for the simchaos tools.

Values are layered: dataclass defaults, then a flat TOML file, then the
``SIMCHAOS_SEED`` environment variable, then command-line flags.
"""

import dataclasses
import logging
import os
import tomllib
from dataclasses import dataclass
from pathlib import Path

from utils.errors import ConfigError

logger = logging.getLogger(__name__)

SEED_ENV_VAR = "SIMCHAOS_SEED"


@dataclass(frozen=True)
class SimchaosConfig:
    seed: int = 0
    enumeration_cap: int = 4096
    debruijn_cap: int = 1 << 20
    grid_cap: int = 4096
    koch_refine: int = 14
    recurrence_cap: int = 100_000
    weak_separation: float = 0.05
    render_size: int = 729
    tree_render_size: int = 0  # 0 keeps the grid resolution of the tree
    logistic_grid: int = 2048
    tent_grid: int = 729
    render_depth_cap: int = 1 << 16

    def to_dict(self):
        return dataclasses.asdict(self)

    def with_overrides(self, **overrides):
        """Return a copy with every non-None override applied."""
        known = {f.name: f for f in dataclasses.fields(self)}
        updates = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in known:
                raise ConfigError(f"Unknown configuration key: {key}")
            try:
                updates[key] = type(getattr(self, key))(value)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"Bad value for {key}: {value!r}") from exc
        return dataclasses.replace(self, **updates)


def load_config(config_path=None, environ=None, **flag_overrides):
    """
    Build the resolved configuration.

    Args:
        config_path (str | Path | None): Optional TOML file of ``key = value`` pairs.
        environ (Mapping | None): Environment to read ``SIMCHAOS_SEED`` from.
            Defaults to ``os.environ``.
        **flag_overrides: Command-line values; ``None`` means "not given".

    Returns:
        SimchaosConfig: The configuration after all layers are applied.
    """
    config = SimchaosConfig()

    if config_path is not None:
        path = Path(config_path)
        if not path.exists():
            raise ConfigError(f"Config file not found: {path}")
        try:
            with path.open("rb") as f:
                table = tomllib.load(f)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"Cannot parse {path}: {exc}") from exc
        config = config.with_overrides(**table)
        logger.debug("Loaded config file %s", path)

    environ = os.environ if environ is None else environ
    env_seed = environ.get(SEED_ENV_VAR)
    if env_seed:
        config = config.with_overrides(seed=env_seed)

    return config.with_overrides(**flag_overrides)
