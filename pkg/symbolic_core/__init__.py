from .address import (
    Address,
    ConstantDigit,
    Generator,
    RepeatingBlock,
    format_address,
    is_periodic,
    parse_address,
    parse_display_digits,
    shift,
)
from .debruijn import contains_all_blocks, debruijn_sequence, debruijn_transitive_prefix
from .exact import Surd, exact_str
from .sigma_metric import cylinder_diameter, sigma_bracket, sigma_distance

__all__ = [
    "Address",
    "ConstantDigit",
    "Generator",
    "RepeatingBlock",
    "format_address",
    "is_periodic",
    "parse_address",
    "parse_display_digits",
    "shift",
    "contains_all_blocks",
    "debruijn_sequence",
    "debruijn_transitive_prefix",
    "Surd",
    "exact_str",
    "cylinder_diameter",
    "sigma_bracket",
    "sigma_distance",
]
