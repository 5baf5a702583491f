from dataclasses import dataclass, field

from symbolic_core.exact import exact_str

KINDS = ("periodic-density", "transitivity", "sensitivity", "li-yorke", "recurrence")


def certified(value, method):
    """A reported quantity together with how it was certified."""
    if isinstance(value, tuple):
        lower, upper = value
        return {"lower": exact_str(lower), "upper": exact_str(upper), "method": method}
    return {"value": exact_str(value), "method": method}


@dataclass
class WitnessReport:
    kind: str
    space: str
    inputs: dict
    witnesses: list = field(default_factory=list)
    quantities: list = field(default_factory=list)
    horizon: int = None
    passed: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"Unknown witness kind: {self.kind}")

    def to_dict(self):
        return {
            "kind": self.kind,
            "space": self.space,
            "inputs": self.inputs,
            "witnesses": self.witnesses,
            "quantities": self.quantities,
            "horizon": self.horizon,
            "pass": self.passed,
        }
