"""Canonical partitions of ``range(n)`` and their refinement lattice.

A partition is stored as a *restricted growth string*: ``block_id[i]`` is the
block of element ``i`` and the first occurrence of block ``k`` precedes the
first occurrence of block ``k + 1``.  Two partitions are equal as set
partitions iff their block-id tuples are identical, so the dataclass
equality and hash are the set-partition equality and hash.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import SizeMismatchError

__all__ = [
    "Partition",
    "meet",
    "join",
    "refines",
    "block_count",
    "discrete",
    "coarsest",
    "all_partitions",
]


def _canonical_ids(labels: Iterable[Hashable]) -> tuple[int, ...]:
    seen: dict = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


@dataclass(frozen=True)
class Partition:
    """A partition of ``{0, ..., ground_size - 1}`` in canonical form."""

    block_id: tuple[int, ...]

    def __post_init__(self):
        ids = tuple(self.block_id)
        object.__setattr__(self, "block_id", ids)
        nxt = 0
        for b in ids:
            if not isinstance(b, int) or b < 0 or b > nxt:
                raise ValueError(f"block ids {ids!r} are not in canonical form")
            if b == nxt:
                nxt += 1

    @classmethod
    def from_labels(cls, labels: Iterable[Hashable]) -> "Partition":
        """Group positions with equal labels (the kernel of ``labels``)."""
        return cls(_canonical_ids(labels))

    @classmethod
    def from_blocks(cls, ground_size: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        ids = [-1] * ground_size
        for k, block in enumerate(blocks):
            for x in block:
                if not 0 <= x < ground_size or ids[x] != -1:
                    raise ValueError(f"element {x} out of range or listed twice")
                ids[x] = k
        if -1 in ids:
            raise ValueError(f"element {ids.index(-1)} is in no block")
        return cls.from_labels(ids)

    @property
    def ground_size(self) -> int:
        return len(self.block_id)

    @cached_property
    def block_count(self) -> int:
        return max(self.block_id, default=-1) + 1

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for x, b in enumerate(self.block_id):
            out[b].append(x)
        return tuple(tuple(b) for b in out)

    @cached_property
    def representatives(self) -> tuple[int, ...]:
        """Smallest element of each block, indexed by block."""
        return tuple(b[0] for b in self.blocks)

    def is_discrete(self) -> bool:
        return self.block_count == self.ground_size

    def same_block(self, x: int, y: int) -> bool:
        return self.block_id[x] == self.block_id[y]

    def pullback(self, values: Sequence[int]) -> "Partition":
        """Partition of ``range(len(values))`` induced along ``i -> values[i]``."""
        return Partition.from_labels(self.block_id[v] for v in values)

    def restrict(self, points: Sequence[int]) -> "Partition":
        return self.pullback(points)

    def __repr__(self):
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"Partition({{{inner}}})"


def _check_sizes(p: Partition, q: Partition) -> None:
    if p.ground_size != q.ground_size:
        raise SizeMismatchError(
            f"ground sizes differ: {p.ground_size} != {q.ground_size}"
        )


def meet(p: Partition, q: Partition) -> Partition:
    """Coarsest common refinement: blocks are the nonempty intersections."""
    _check_sizes(p, q)
    return Partition.from_labels(zip(p.block_id, q.block_id))


def join(p: Partition, q: Partition) -> Partition:
    """Finest common coarsening (components of the union of both relations)."""
    _check_sizes(p, q)
    n = p.ground_size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (p, q):
        for block in part.blocks:
            root = find(block[0])
            for x in block[1:]:
                rx = find(x)
                if rx != root:
                    parent[rx] = root
    return Partition.from_labels(find(x) for x in range(n))


def refines(p: Partition, q: Partition) -> bool:
    """True iff every block of ``p`` lies inside a block of ``q``."""
    _check_sizes(p, q)
    image: dict[int, int] = {}
    for a, b in zip(p.block_id, q.block_id):
        if image.setdefault(a, b) != b:
            return False
    return True


def block_count(p: Partition) -> int:
    return p.block_count


def discrete(n: int) -> Partition:
    return Partition(tuple(range(n)))


def coarsest(n: int) -> Partition:
    return Partition((0,) * n)


def all_partitions(n: int) -> Iterator[Partition]:
    """Every partition of ``range(n)``, in lexicographic order of block ids."""
    if n == 0:
        yield Partition(())
        return

    def grow(prefix, top):
        if len(prefix) == n:
            yield Partition(tuple(prefix))
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from grow(prefix, max(top, b))
            prefix.pop()

    yield from grow([0], 0)
