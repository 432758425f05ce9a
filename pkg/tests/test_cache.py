"""
On-disk Kac cache
"""

import pytest

from cache import KacCache
from core.exceptions import CacheError
from models.kac import IntPoly
from services.kac import KacService


@pytest.fixture
def cache(tmp_path):
    return KacCache(str(tmp_path / "cache"))


def test_put_and_get(cache, aff_a1):
    """Test storing and reading back an entry"""
    assert cache.get(aff_a1, [1, 1]) is None
    cache.put(aff_a1, [1, 1], IntPoly({0: 1, 1: 1}), [2, 3, 5])
    cache.put(aff_a1, [1, 0], IntPoly({0: 1}), [2, 3])
    poly, primes = cache.get(aff_a1, [1, 1])
    assert poly == IntPoly({0: 1, 1: 1})
    assert primes == [2, 3, 5]
    assert [entry.d for entry in cache.load(aff_a1).entries] == [[1, 0], [1, 1]]


def test_corrupt_file_is_ignored(cache, aff_a1):
    """Test that an unreadable cache file counts as empty"""
    cache.put(aff_a1, [1, 1], IntPoly({0: 1, 1: 1}), [2, 3, 5])
    cache.path_for(aff_a1).write_text("{not json", encoding="utf-8")
    assert cache.get(aff_a1, [1, 1]) is None


def test_service_reads_cache(cache, jordan):
    """Test that a second service answers from disk"""
    calls = []

    def counter(Q, d, p):
        calls.append(p)
        return p

    first = KacService(cache=cache, use_cache=True, counter=counter).result(jordan, [1])
    assert not first.cached
    second = KacService(cache=cache, use_cache=True, counter=counter).result(jordan, [1])
    assert second.cached
    assert second.poly == IntPoly({1: 1})
    assert second.primes == [2, 3, 5]
    assert calls == [2, 3, 5]


def test_spot_check(cache, jordan):
    """Test recomputation of cached entries"""
    service = KacService(cache=cache, use_cache=True, counter=lambda Q, d, p: p)
    service.kac_polynomial(jordan, [1])
    assert service.spot_check(jordan, fraction=1.0, seed=1) == 1

    cache.put(jordan, [1], IntPoly({0: 1}), [2, 3, 5])
    with pytest.raises(CacheError):
        service.spot_check(jordan, fraction=1.0, seed=1)


def test_failed_write_leaves_no_temp_file(cache, aff_a1, monkeypatch):
    """Test that an interrupted write is dropped along with its temp file"""
    def fail(*args, **kwargs):
        raise OSError("disk full")

    monkeypatch.setattr("cache.json.dump", fail)
    cache.put(aff_a1, [1, 1], IntPoly({0: 1, 1: 1}), [2, 3, 5])
    assert list(cache.directory.iterdir()) == []
    assert cache.get(aff_a1, [1, 1]) is None
