from .cli import build_parser, main
from .orbit_csv import emit_orbit_csv, parse_orbit_csv
from .rendering import RenderJob, render_space, render_tree
from .reports import VERSION, report_text, write_report

__all__ = [
    "build_parser",
    "main",
    "emit_orbit_csv",
    "parse_orbit_csv",
    "RenderJob",
    "render_space",
    "render_tree",
    "VERSION",
    "report_text",
    "write_report",
]
