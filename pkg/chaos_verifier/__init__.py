from .dass_sensitivity import dass_sensitivity_report
from .devaney import devaney_report
from .li_yorke import LiYorkePair, li_yorke_pair, separated_times, verify_li_yorke
from .recurrence import RecurrenceStats, recurrence_stats
from .reports import WitnessReport
from .witnesses import (
    SensitivityPair,
    TransitiveWitness,
    periodic_approx,
    sensitivity_pair,
    separation_table,
    transitive_witness,
    verify_transitive_witness,
)

__all__ = [
    "dass_sensitivity_report",
    "devaney_report",
    "LiYorkePair",
    "li_yorke_pair",
    "separated_times",
    "verify_li_yorke",
    "RecurrenceStats",
    "recurrence_stats",
    "WitnessReport",
    "SensitivityPair",
    "TransitiveWitness",
    "periodic_approx",
    "sensitivity_pair",
    "separation_table",
    "transitive_witness",
    "verify_transitive_witness",
]
