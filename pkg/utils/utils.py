from pathlib import Path

import numpy as np
from PIL import Image

RASTER_SUFFIXES = {".pgm", ".ppm", ".png"}


def read_raster(raster_path):
    """
    Read a raster written by ``save_raster`` back into a numpy array.

    Args:
        raster_path (str | Path): Path to a PGM, PPM or PNG file.

    Returns:
        numpy.ndarray: ``(H, W)`` uint8 for monochrome files, ``(H, W, 3)`` for color.
    """
    with Image.open(raster_path) as image:
        return np.asarray(image).copy()


def save_raster(raster, output_path):
    """
    Save a raster as a netpbm (or PNG) file.

    Creates missing directories. 2-D arrays are written as PGM (P5), 3-channel
    arrays as PPM (P6); the format follows the file suffix.

    Args:
        raster (numpy.ndarray): uint8 array, ``(H, W)`` or ``(H, W, 3)``.
        output_path (str | Path): Destination path.
    """
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    suffix = output_path.suffix.lower()
    if suffix not in RASTER_SUFFIXES:
        raise ValueError(f"Unsupported raster format: {suffix}")

    raster = np.ascontiguousarray(raster, dtype=np.uint8)
    if not (raster.ndim == 2 or (raster.ndim == 3 and raster.shape[2] == 3)):
        raise ValueError(f"Unsupported raster shape: {raster.shape}")
    image = Image.fromarray(raster)

    # Pillow writes P5 for "L" and P6 for "RGB" under the PPM plugin.
    image_format = "PNG" if suffix == ".png" else "PPM"
    image.save(output_path, format=image_format)


def write_text(text, output_path):
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with output_path.open("w", encoding="utf-8", newline="\n") as f:
        f.write(text)
