"""
Runtime Settings
================

Defaults for reduction budgets, expansion sampling, memo sizes and logging.
Values come from the environment, optionally through a .env file in the
working directory. BI_CACHE_SIZE is read once, when the memos are created.
"""

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from dotenv import load_dotenv

load_dotenv()

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def parse_int_list(raw: str) -> Tuple[int, ...]:
    """Parse a comma separated list of naturals such as '0,1,2'"""
    values = tuple(int(part) for part in raw.split(",") if part.strip())
    if any(value < 0 for value in values):
        raise ValueError(f"expected naturals, got {raw!r}")
    return values


@dataclass(frozen=True)
class Settings:
    """Tunable limits shared by the library, the CLI and the explorer"""

    max_steps: int = 10000
    depth: int = 3
    omega_picks: Tuple[int, ...] = (0, 1, 2)
    witness_budget: int = 1
    template_samples: Tuple[int, ...] = (0, 1, 2)
    cache_size: int = 65536
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls):
        return cls(
            max_steps=int(os.getenv("BI_MAX_STEPS", cls.max_steps)),
            depth=int(os.getenv("BI_EXPAND_DEPTH", cls.depth)),
            omega_picks=parse_int_list(os.getenv("BI_OMEGA_PICKS", "0,1,2")),
            witness_budget=int(os.getenv("BI_WITNESS_BUDGET", cls.witness_budget)),
            template_samples=parse_int_list(os.getenv("BI_TEMPLATE_SAMPLES", "0,1,2")),
            cache_size=int(os.getenv("BI_CACHE_SIZE", cls.cache_size)),
            log_level=os.getenv("BI_LOG_LEVEL", cls.log_level).upper(),
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()


def configure_logging(level=None):
    """Install the stream handler used by the command line tools"""
    level = level or get_settings().log_level
    logging.basicConfig(level=getattr(logging, str(level).upper(), logging.WARNING), format=LOG_FORMAT)
