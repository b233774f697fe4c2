"""Exact values of the partition function p(n) from two independent algorithms."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import RangeError


@dataclass(frozen=True)
class PartitionTable:
    """Dense table ``values[n] = p(n)`` for ``0 <= n <= n_max``."""

    values: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.n_max:
            raise RangeError(f"p({n}) requested but table stops at {self.n_max}")
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def dump(self, path: str | Path) -> None:
        Path(path).write_text("".join(f"{v}\n" for v in self.values))

    @classmethod
    def load(cls, path: str | Path) -> "PartitionTable":
        lines = Path(path).read_text().split()
        return cls(tuple(int(x) for x in lines))


def _pentagonal_offsets(n_max: int) -> list[tuple[int, int]]:
    """Generalized pentagonal numbers up to n_max paired with their sign."""
    out = []
    k = 1
    while True:
        a = k * (3 * k - 1) // 2
        if a > n_max:
            break
        sign = 1 if k % 2 else -1
        out.append((a, sign))
        b = k * (3 * k + 1) // 2
        if b <= n_max:
            out.append((b, sign))
        k += 1
    return out


def p_pentagonal_table(n_max: int) -> PartitionTable:
    """p(0..n_max) by Euler's pentagonal-number recurrence."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    offsets = _pentagonal_offsets(n_max)
    plus = [a for a, s in offsets if s > 0]
    minus = [a for a, s in offsets if s < 0]
    p = [0] * (n_max + 1)
    p[0] = 1
    for n in range(1, n_max + 1):
        total = 0
        for a in plus:
            if a > n:
                break
            total += p[n - a]
        for a in minus:
            if a > n:
                break
            total -= p[n - a]
        p[n] = total
    return PartitionTable(tuple(p))


def p_dp_table(n_max: int) -> PartitionTable:
    """p(0..n_max) by the coin-counting dynamic program over part sizes."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    ways = [0] * (n_max + 1)
    ways[0] = 1
    for part in range(1, n_max + 1):
        for m in range(part, n_max + 1):
            ways[m] += ways[m - part]
    return PartitionTable(tuple(ways))


def p_dp_oracle(n: int) -> int:
    """p(n) by the coin-counting dynamic program."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return p_dp_table(n).values[n]


def log_concave_exact(n: int, table: PartitionTable | Sequence[int]) -> bool:
    """Exact test of p(n)^2 >= p(n-1) p(n+1)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    values = table.values if isinstance(table, PartitionTable) else table
    if n + 1 >= len(values):
        raise RangeError(f"table of length {len(values)} does not reach n+1={n + 1}")
    return values[n] * values[n] >= values[n - 1] * values[n + 1]


_cache: dict[int, PartitionTable] = {}


def partition_table(n_max: int, cache_file: str | Path | None = None) -> PartitionTable:
    """Pentagonal table, reused across calls and optionally backed by a file."""
    for size, table in _cache.items():
        if size >= n_max:
            return PartitionTable(table.values[: n_max + 1])
    if cache_file is not None and Path(cache_file).exists():
        table = PartitionTable.load(cache_file)
        if table.n_max >= n_max:
            _cache[table.n_max] = table
            return PartitionTable(table.values[: n_max + 1])
    table = p_pentagonal_table(n_max)
    _cache.clear()
    _cache[n_max] = table
    if cache_file is not None:
        table.dump(cache_file)
    return table
