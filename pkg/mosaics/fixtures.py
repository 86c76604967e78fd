"""Loading the shipped data files: mosaics, masks, patterns and shapes."""
import glob
import logging
import os
from typing import Dict, List, Optional

from mosaics.config import get_settings
from mosaics.polyomino import OccupancyMask, Polyomino, parse_mask, parse_poly
from mosaics.tiles import Mosaic, parse_mosaic

logger = logging.getLogger("fixtures")


def read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        return handle.read()


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def load_mosaic(path: str) -> Mosaic:
    return parse_mosaic(read_text(path))


def fixture_path(name: str) -> str:
    return os.path.join(get_settings().fixtures_dir, f"{name}.mosaic")


def load_fixture(name: str) -> Mosaic:
    return load_mosaic(fixture_path(name))


def _load_mask_files(directory: str) -> Dict[str, OccupancyMask]:
    masks = {}
    for path in sorted(glob.glob(os.path.join(directory, "*.mask"))):
        name = os.path.splitext(os.path.basename(path))[0]
        masks[name] = parse_mask(read_text(path), name)
    if not masks:
        logger.warning(f"No .mask files found in {directory}")
    return masks


def load_masks(directory: Optional[str] = None) -> List[OccupancyMask]:
    """Occupancy windows that rule a shape out, sorted by file name."""
    return list(_load_mask_files(directory or get_settings().masks_dir).values())


def load_patterns(directory: Optional[str] = None) -> Dict[str, OccupancyMask]:
    return _load_mask_files(directory or get_settings().patterns_dir)


def load_shapes(directory: Optional[str] = None) -> Dict[str, Polyomino]:
    directory = directory or get_settings().shapes_dir
    return {
        os.path.splitext(os.path.basename(path))[0]: parse_poly(read_text(path))
        for path in sorted(glob.glob(os.path.join(directory, "*.poly")))
    }
