import os

from dotenv import load_dotenv


load_dotenv()


def parse_int_env(name: str, *, default: int | None = None) -> int | None:
    """Parse an environment variable as int, honoring an optional default."""
    from os import getenv

    value = getenv(name)
    if not value:
        return default
    try:
        return int(value)
    except ValueError as exc:
        raise SystemExit(f"{name} must be an integer") from exc


SECONDS_IN_HOUR = 3600

LOG_LEVEL = os.getenv("SNWEB_LOG_LEVEL", "WARNING").upper()

# Closed-diagram brackets are cached in Redis only when a URL is configured.
CACHE_REDIS_URL = os.getenv("SNWEB_CACHE_URL")
CACHE_REDIS_PREFIX = "snweb:bracket"
CACHE_REDIS_TTL = parse_int_env("SNWEB_CACHE_TTL", default=24 * SECONDS_IN_HOUR)

DEFAULT_SEED = parse_int_env("SNWEB_DEFAULT_SEED", default=7)
DEFAULT_SIZE = parse_int_env("SNWEB_DEFAULT_SIZE", default=20)

# Random link diagrams stay at desk scale so every suite finishes quickly.
MAX_CROSSINGS = parse_int_env("SNWEB_MAX_CROSSINGS", default=6)
# Resolving crossings at n >= 4 puts n! labels on every ladder vertex; those links stay smaller.
RESOLVED_WIDE_MAX_CROSSINGS = parse_int_env("SNWEB_RESOLVED_WIDE_MAX_CROSSINGS", default=2)

SUITE_DEFAULT_NS = (2, 3, 4)
