import json
from fractions import Fraction

import numpy as np

from symbolic_core.exact import Surd, exact_str
from utils.utils import write_text

VERSION = "0.1.0"


def _json_default(value):
    if isinstance(value, (Fraction, Surd)):
        return exact_str(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def report_text(payload, config):
    """JSON text of ``payload`` stamped with the tool version and the resolved config."""
    document = {"version": VERSION, "config": config.to_dict(), **payload}
    return json.dumps(document, indent=2, default=_json_default) + "\n"


def write_report(payload, config, output_path=None):
    text = report_text(payload, config)
    if output_path is None:
        print(text, end="")
    else:
        write_text(text, output_path)
    return text
