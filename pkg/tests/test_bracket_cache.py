import json

import pytest
from redis.exceptions import RedisError

from algebra.poly import t_power
from evaluate.tensor_eval import evaluate
from store import bracket_cache
from webs.library import theta, unknot


class FakeRedis:
    def __init__(self):
        self.values = {}
        self.reads = 0

    def get(self, key):
        self.reads += 1
        return self.values.get(key)

    def set(self, key, value, ex=None):
        self.values[key] = value.encode("utf-8")


class BrokenRedis:
    def get(self, key):
        raise RedisError("connection refused")

    def set(self, key, value, ex=None):
        raise RedisError("connection refused")


@pytest.fixture
def fake_client(monkeypatch):
    client = FakeRedis()
    monkeypatch.setattr(bracket_cache, "_get_client", lambda: client)
    return client


def test_disabled_cache_is_a_miss(monkeypatch):
    monkeypatch.setattr(bracket_cache, "_get_client", lambda: None)
    assert bracket_cache.load_bracket(unknot(3)) is None
    assert bracket_cache.store_bracket(unknot(3), t_power(1)) is False
    assert bracket_cache.cached_evaluate(unknot(3)) == evaluate(unknot(3))


def test_store_then_load(fake_client):
    value = t_power(-3) + t_power(3, 2)
    assert bracket_cache.store_bracket(theta(3), value)
    assert bracket_cache.load_bracket(theta(3)) == value


def test_cached_evaluate_reads_through(fake_client):
    first = bracket_cache.cached_evaluate(unknot(3))
    assert len(fake_client.values) == 1
    fake_client.values[bracket_cache.cache_key(unknot(3))] = json.dumps({"n": 3, "terms": [[0, 5]]}).encode("utf-8")
    assert first == evaluate(unknot(3))
    assert bracket_cache.cached_evaluate(unknot(3)) == t_power(0, 5)


def test_key_depends_on_n():
    assert bracket_cache.cache_key(unknot(2)) != bracket_cache.cache_key(unknot(3))
    assert bracket_cache.cache_key(unknot(3)).startswith("snweb:bracket:")


def test_corrupt_payload_is_a_miss(fake_client):
    fake_client.values[bracket_cache.cache_key(unknot(3))] = b"{not json"
    assert bracket_cache.load_bracket(unknot(3)) is None


def test_redis_errors_degrade(monkeypatch):
    monkeypatch.setattr(bracket_cache, "_get_client", lambda: BrokenRedis())
    assert bracket_cache.load_bracket(unknot(3)) is None
    assert bracket_cache.store_bracket(unknot(3), t_power(1)) is False
    assert bracket_cache.cached_evaluate(unknot(3)) == evaluate(unknot(3))
