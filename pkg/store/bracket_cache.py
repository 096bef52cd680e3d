"""Redis-backed cache of closed-diagram brackets."""

# Entries are keyed by a hash of the canonical diagram text, so two files that
# render to the same JSON share one entry. Caching is off unless
# SNWEB_CACHE_URL is set, and any Redis failure degrades to a miss.

import hashlib
import json
from typing import Optional

import redis
from redis.exceptions import RedisError

from algebra.poly import LaurentPoly
from evaluate.tensor_eval import evaluate
from config import CACHE_REDIS_PREFIX, CACHE_REDIS_TTL, CACHE_REDIS_URL
from webs.diagram import SlicedDiagram, render_web
from utils import logger


_redis_client: Optional[redis.Redis] = None


def _get_client() -> Optional[redis.Redis]:
    """Lazily initialize the Redis connection; None when caching is disabled."""
    global _redis_client
    if _redis_client is None and CACHE_REDIS_URL:
        _redis_client = redis.Redis.from_url(CACHE_REDIS_URL)
    return _redis_client


def cache_key(diagram: SlicedDiagram) -> str:
    digest = hashlib.sha256(render_web(diagram).encode("utf-8")).hexdigest()
    return f"{CACHE_REDIS_PREFIX}:{digest}"


def load_bracket(diagram: SlicedDiagram) -> Optional[LaurentPoly]:
    """Return the cached bracket or None on a miss."""
    client = _get_client()
    if client is None:
        return None
    key = cache_key(diagram)
    try:
        raw_value = client.get(key)
    except RedisError as err:
        logger.error("Bracket cache read failed", key=key, error=str(err))
        return None

    if raw_value is None:
        logger.debug("Bracket cache miss", key=key)
        return None

    try:
        payload = json.loads(raw_value if isinstance(raw_value, str) else raw_value.decode("utf-8"))
        value = LaurentPoly.from_pairs((int(exponent), int(coeff)) for exponent, coeff in payload["terms"])
    except (json.JSONDecodeError, UnicodeDecodeError, KeyError, TypeError, ValueError) as err:
        logger.warning("Bracket cache payload decode failed", key=key, error=str(err))
        return None

    logger.debug("Bracket cache hit", key=key)
    return value


def store_bracket(diagram: SlicedDiagram, value: LaurentPoly) -> bool:
    """Persist a bracket; False when caching is off or Redis refuses the write."""
    client = _get_client()
    if client is None:
        return False
    key = cache_key(diagram)
    payload = {"n": diagram.n, "terms": [list(term) for term in value.terms]}
    ttl = CACHE_REDIS_TTL or None
    try:
        client.set(key, json.dumps(payload), ex=ttl)
    except RedisError as err:
        logger.error("Bracket cache write failed", key=key, error=str(err))
        return False

    logger.debug("Bracket cache write", key=key, ttl_seconds=ttl)
    return True


def cached_evaluate(diagram: SlicedDiagram) -> LaurentPoly:
    """evaluate() with a read-through cache."""
    cached = load_bracket(diagram)
    if cached is not None:
        return cached
    value = evaluate(diagram)
    store_bracket(diagram, value)
    return value
