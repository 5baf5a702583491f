from .stubs import read_stub, save_stub
from .utils import read_raster, save_raster, write_text
from .config import SimchaosConfig, load_config

__all__ = [
    "read_stub",
    "save_stub",
    "read_raster",
    "save_raster",
    "write_text",
    "SimchaosConfig",
    "load_config",
]
