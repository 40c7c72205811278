"""Finitely presented non-Archimedean uniform spaces.

A :class:`FinSpace` is a point set ``range(point_count)`` together with a list
of generating partitions; its uniformity is the one generated by the
corresponding equivalence relations.  Because the space is finite, the meet of
the generators (:attr:`FinSpace.finest`) is itself a uniform entourage and
every uniform equivalence relation coarsens it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .errors import EmptySubsetError, NotUniformlyContinuousError
from .partition import Partition, coarsest, discrete, meet, refines

__all__ = [
    "FinSpace",
    "UniformMap",
    "finest_uniform_partition",
    "is_separated",
    "separated_quotient",
    "is_totally_bounded_below",
    "check_uniform",
    "product",
    "subspace",
    "compose",
    "identity_map",
    "closure",
    "is_dense",
    "discrete_space",
    "point_space",
]


@dataclass(frozen=True)
class FinSpace:
    point_count: int
    generators: tuple[Partition, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("a FinSpace needs at least one generator")
        for k, g in enumerate(gens):
            if g.ground_size != self.point_count:
                raise ValueError(
                    f"generator {k} has ground size {g.ground_size}, "
                    f"expected {self.point_count}"
                )

    @cached_property
    def finest(self) -> Partition:
        return reduce(meet, self.generators)

    @property
    def points(self) -> range:
        return range(self.point_count)


def discrete_space(n: int) -> FinSpace:
    return FinSpace(n, (discrete(n),))


def point_space() -> FinSpace:
    return FinSpace(1, (coarsest(1),))


def finest_uniform_partition(space: FinSpace) -> Partition:
    return space.finest


def is_separated(space: FinSpace) -> bool:
    return space.finest.is_discrete()


def is_totally_bounded_below(space: FinSpace, bound: int) -> bool:
    """True iff every uniform partition has fewer than ``bound`` blocks.

    Only the finest uniform partition needs checking: every other uniform
    partition coarsens it.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    return space.finest.block_count < bound


@dataclass(frozen=True)
class UniformMap:
    """A uniformly continuous map between two finite presentations.

    Construction validates continuity: for every generator ``Q`` of the
    target, the source's finest partition must refine the pullback of ``Q``.
    """

    source: FinSpace
    target: FinSpace
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.source.point_count:
            raise ValueError(
                f"map has {len(vals)} values for {self.source.point_count} points"
            )
        for v in vals:
            if not 0 <= v < self.target.point_count:
                raise ValueError(f"value {v} is not a point of the target")
        for k, gen in enumerate(self.target.generators):
            if not refines(self.source.finest, gen.pullback(vals)):
                raise NotUniformlyContinuousError(
                    f"map {list(vals)} is not uniformly continuous: it splits a "
                    f"finest block of the source across blocks of target generator {k}",
                    generator_index=k,
                )

    def __call__(self, x: int) -> int:
        return self.values[x]

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return set(self.values) == set(self.target.points)


def check_uniform(values: Sequence[int], source: FinSpace, target: FinSpace) -> UniformMap:
    """Validate a raw point map and return it as a :class:`UniformMap`."""
    return UniformMap(source, target, tuple(values))


def identity_map(space: FinSpace) -> UniformMap:
    return UniformMap(space, space, tuple(space.points))


def compose(g: UniformMap, f: UniformMap) -> UniformMap:
    """``g after f``."""
    if f.target != g.source:
        raise ValueError("maps are not composable")
    return UniformMap(f.source, g.target, tuple(g.values[v] for v in f.values))


def separated_quotient(space: FinSpace) -> tuple[FinSpace, UniformMap]:
    """Collapse each finest block to a point.

    For a finite presentation the separated quotient is also its completion.
    """
    fin = space.finest
    reps = fin.representatives
    gens = tuple(Partition.from_labels(g.block_id[r] for r in reps) for g in space.generators)
    quotient = FinSpace(fin.block_count, gens)
    return quotient, UniformMap(space, quotient, fin.block_id)


def product(x: FinSpace, y: FinSpace) -> FinSpace:
    """Binary product; point ``(i, j)`` has index ``i * y.point_count + j``."""
    pairs = [(i, j) for i in x.points for j in y.points]
    gens = [Partition.from_labels(g.block_id[i] for i, _ in pairs) for g in x.generators]
    gens += [Partition.from_labels(g.block_id[j] for _, j in pairs) for g in y.generators]
    return FinSpace(len(pairs), tuple(gens))


def subspace(space: FinSpace, points: Iterable[int]) -> FinSpace:
    """Subspace on ``points`` (reindexed in increasing order)."""
    pts = sorted(set(points))
    if not pts:
        raise EmptySubsetError("subspace needs a nonempty point set")
    if pts[0] < 0 or pts[-1] >= space.point_count:
        raise ValueError("subspace points out of range")
    return FinSpace(len(pts), tuple(g.restrict(pts) for g in space.generators))


def closure(space: FinSpace, points: Iterable[int]) -> frozenset[int]:
    """Topological closure: the points whose finest block meets ``points``."""
    fin = space.finest
    met = {fin.block_id[p] for p in points}
    return frozenset(x for x in space.points if fin.block_id[x] in met)


def is_dense(space: FinSpace, points: Iterable[int]) -> bool:
    """True iff ``points`` meets every block of the finest uniform partition."""
    return closure(space, points) == frozenset(space.points)
