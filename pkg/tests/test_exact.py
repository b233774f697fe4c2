from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from partition_certify.errors import RangeError
from partition_certify.exact import (
    PartitionTable,
    log_concave_exact,
    p_dp_oracle,
    p_dp_table,
    p_pentagonal_table,
    partition_table,
)


@lru_cache(maxsize=None)
def count_partitions(n: int, largest: int) -> int:
    """Partitions of n with parts at most ``largest``, by direct enumeration."""
    if n == 0:
        return 1
    return sum(count_partitions(n - k, k) for k in range(1, min(n, largest) + 1))


def brute_force(n: int) -> int:
    return count_partitions(n, n)


def test_small_values_by_enumeration():
    for n, expected in [(0, 1), (1, 1), (4, 5), (6, 11), (26, 2436)]:
        assert brute_force(n) == expected
        assert p_dp_oracle(n) == expected
        assert p_pentagonal_table(n)[n] == expected


def test_algorithms_agree():
    assert p_pentagonal_table(1500).values == p_dp_table(1500).values


@given(st.integers(min_value=0, max_value=60))
def test_pentagonal_matches_enumeration(n):
    assert p_pentagonal_table(n)[n] == brute_force(n)


def test_known_large_value():
    # p(100) and p(1000) are classical values
    table = p_pentagonal_table(1000)
    assert table[100] == 190569292
    assert table[1000] == 24061467864032622473692149727991


def test_table_bounds():
    table = p_pentagonal_table(10)
    assert table[-1] == 0
    with pytest.raises(RangeError):
        table[11]


def test_log_concavity_small():
    table = p_pentagonal_table(40)
    failing = [n for n in range(1, 39) if not log_concave_exact(n, table)]
    assert failing == list(range(1, 26, 2))
    with pytest.raises(RangeError):
        log_concave_exact(40, table)


def test_cache_file_round_trip(tmp_path, monkeypatch):
    from partition_certify import exact

    monkeypatch.setattr(exact, "_cache", {})
    path = tmp_path / "p.txt"
    first = partition_table(300, cache_file=path)
    assert path.exists()
    assert PartitionTable.load(path) == first
    assert partition_table(120, cache_file=path).values == first.values[:121]


def test_negative_sizes_rejected():
    with pytest.raises(ValueError):
        p_pentagonal_table(-1)
    with pytest.raises(ValueError):
        p_dp_oracle(-3)
