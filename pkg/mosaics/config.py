import os
import logging
from dataclasses import dataclass
from functools import lru_cache

from dotenv import load_dotenv

from mosaics.errors import ConfigError

logger = logging.getLogger("config")

PACKAGE_DIR = os.path.dirname(__file__)
DEFAULT_DATA_DIR = os.path.join(PACKAGE_DIR, "data")


@dataclass(frozen=True)
class Settings:
    log_level: str
    data_dir: str
    masks_dir: str
    patterns_dir: str
    search_workers: int
    bracket_max_crossings: int
    unknot_max_crossings: int

    @property
    def fixtures_dir(self) -> str:
        return os.path.join(self.data_dir, "fixtures")

    @property
    def shapes_dir(self) -> str:
        return os.path.join(self.data_dir, "shapes")


def _int_env(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    load_dotenv()
    data_dir = os.getenv("MOSAIC_DATA_DIR") or DEFAULT_DATA_DIR
    settings = Settings(
        log_level=(os.getenv("MOSAIC_LOG_LEVEL") or "INFO").upper(),
        data_dir=data_dir,
        masks_dir=os.getenv("MOSAIC_MASKS_DIR") or os.path.join(data_dir, "masks"),
        patterns_dir=os.getenv("MOSAIC_PATTERNS_DIR") or os.path.join(data_dir, "patterns"),
        search_workers=_int_env("MOSAIC_SEARCH_WORKERS", 1, minimum=1),
        bracket_max_crossings=_int_env("MOSAIC_BRACKET_MAX_CROSSINGS", 16),
        unknot_max_crossings=_int_env("MOSAIC_UNKNOT_MAX_CROSSINGS", 8),
    )
    logger.debug(f"Loaded settings: {settings}")
    return settings
