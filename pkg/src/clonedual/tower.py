"""Truncated towers of finite sets with surjective bonding maps.

A tower ``S_0 <- S_1 <- ... <- S_d`` is the depth-``d`` prefix of an inverse
system.  The level-``n`` subalgebra consists of the labelings of ``S_d`` that
factor through ``S_n``; a partitionable congruence on it is agreement on some
``V`` inside ``S_n``, and restricting to a lower level ``m`` replaces ``V``
by its image in ``S_m``.  Locally partitionable congruences are the
image-compatible families of such supports; closed sets are pruned subtrees.

Everything here is a statement *at truncation depth*.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import IncompatibleFamilyError, TowerError, UnprunedError

__all__ = [
    "Tower",
    "SubTree",
    "LevelCongruence",
    "TowerReport",
    "prune",
    "is_pruned",
    "gamma",
    "delta",
    "restrict",
    "density_witness",
    "downward_closure",
    "tower_closure_D",
    "level_pairs",
    "hyper_complete_check",
    "classify",
    "all_towers",
    "all_subtrees",
    "pruned_subtrees",
]


@dataclass(frozen=True)
class Tower:
    """Level sizes and bonds; ``bonds[n]`` maps ``S_{n+1}`` onto ``S_n``."""

    levels: tuple[int, ...]
    bonds: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        levels = tuple(self.levels)
        bonds = tuple(tuple(b) for b in self.bonds)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "bonds", bonds)
        if not levels or levels[0] < 1:
            raise TowerError("level 0 must be nonempty")
        if len(bonds) != len(levels) - 1:
            raise TowerError(f"expected {len(levels) - 1} bonds, got {len(bonds)}")
        for n, bond in enumerate(bonds):
            if len(bond) != levels[n + 1]:
                raise TowerError(f"bond {n} has length {len(bond)}, expected {levels[n + 1]}")
            if any(not 0 <= v < levels[n] for v in bond):
                raise TowerError(f"bond {n} has a value outside level {n}")
            if set(bond) != set(range(levels[n])):
                raise TowerError(f"bond {n} is not surjective onto level {n}")

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def project(self, x: int, src: int, dst: int) -> int:
        """Image of node ``x`` of level ``src`` in level ``dst <= src``."""
        for n in range(src - 1, dst - 1, -1):
            x = self.bonds[n][x]
        return x

    def image(self, nodes: Iterable[int], src: int, dst: int) -> frozenset[int]:
        return frozenset(self.project(x, src, dst) for x in nodes)

    def preimage(self, nodes: Iterable[int], src: int, dst: int) -> frozenset[int]:
        """Nodes of level ``dst >= src`` lying over ``nodes``."""
        nodes = set(nodes)
        return frozenset(x for x in range(self.levels[dst]) if self.project(x, dst, src) in nodes)

    @cached_property
    def full(self) -> "SubTree":
        return SubTree(self, tuple(frozenset(range(s)) for s in self.levels))

    @cached_property
    def empty(self) -> "SubTree":
        return SubTree(self, tuple(frozenset() for _ in self.levels))


@dataclass(frozen=True)
class SubTree:
    """One node set per level with ``p_n(T_{n+1})`` inside ``T_n``."""

    tower: Tower
    node_sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        sets = tuple(frozenset(s) for s in self.node_sets)
        object.__setattr__(self, "node_sets", sets)
        t = self.tower
        if len(sets) != len(t.levels):
            raise TowerError("one node set per level is required")
        for n, s in enumerate(sets):
            if any(not 0 <= x < t.levels[n] for x in s):
                raise TowerError(f"node set {n} has nodes outside level {n}")
        for n in range(t.depth):
            if not t.image(sets[n + 1], n + 1, n) <= sets[n]:
                raise TowerError(f"level {n + 1} maps outside the node set of level {n}")

    def is_empty(self) -> bool:
        return not any(self.node_sets)

    def __le__(self, other: "SubTree") -> bool:
        return all(a <= b for a, b in zip(self.node_sets, other.node_sets))


@dataclass(frozen=True)
class LevelCongruence:
    """Agreement on ``support`` for the level-``level`` subalgebra."""

    tower: Tower
    level: int
    support: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(self.support))
        if not 0 <= self.level <= self.tower.depth:
            raise TowerError(f"level {self.level} outside 0..{self.tower.depth}")
        if any(not 0 <= x < self.tower.levels[self.level] for x in self.support):
            raise TowerError("support has nodes outside its level")


def is_pruned(t: SubTree) -> bool:
    tw = t.tower
    return all(
        tw.image(t.node_sets[n + 1], n + 1, n) == t.node_sets[n] for n in range(tw.depth)
    )


def prune(t: SubTree) -> SubTree:
    """Delete, bottom-up, every node with no child in the next level."""
    tw = t.tower
    sets = list(t.node_sets)
    for n in range(tw.depth - 1, -1, -1):
        children = tw.image(sets[n + 1], n + 1, n)
        sets[n] = frozenset(x for x in sets[n] if x in children)
    return SubTree(tw, tuple(sets))


def restrict(theta: LevelCongruence, level: int) -> LevelCongruence:
    """Restriction of ``theta`` to the (smaller) level-``level`` subalgebra."""
    if level > theta.level:
        raise TowerError("can only restrict to a lower level")
    return LevelCongruence(theta.tower, level,
                           theta.tower.image(theta.support, theta.level, level))


def gamma(t: SubTree) -> tuple[LevelCongruence, ...]:
    if t.is_empty():
        raise TowerError("the empty subtree has no congruence family")
    if not is_pruned(t):
        raise UnprunedError("gamma needs a pruned subtree")
    return tuple(LevelCongruence(t.tower, n, s) for n, s in enumerate(t.node_sets))


def delta(family: Sequence[LevelCongruence]) -> SubTree:
    if not family:
        raise IncompatibleFamilyError("empty family", level=0)
    tw = family[0].tower
    if len(family) != len(tw.levels):
        raise IncompatibleFamilyError("family needs one congruence per level", level=len(family))
    for n, theta in enumerate(family):
        if theta.tower != tw or theta.level != n:
            raise IncompatibleFamilyError(f"entry {n} is not a level-{n} congruence", level=n)
        if not theta.support:
            raise IncompatibleFamilyError(f"level {n} has empty support", level=n)
    for n in range(tw.depth):
        if restrict(family[n + 1], n).support != family[n].support:
            raise IncompatibleFamilyError(
                f"level {n + 1} support does not restrict to the level {n} support",
                level=n + 1,
            )
    return SubTree(tw, tuple(theta.support for theta in family))


def density_witness(t: SubTree, level: int) -> LevelCongruence:
    """A top-level (partitionable) congruence agreeing with ``t`` at ``level``.

    Its support is every depth-``d`` node lying over the level-``level`` node
    set of ``t``.
    """
    tw = t.tower
    if not 0 <= level <= tw.depth:
        raise TowerError(f"level {level} outside 0..{tw.depth}")
    if t.is_empty() or not is_pruned(t):
        raise UnprunedError("density_witness needs a pruned nonempty subtree")
    return LevelCongruence(tw, tw.depth, tw.preimage(t.node_sets[level], level, tw.depth))


def downward_closure(tower: Tower, points: Iterable[int]) -> SubTree:
    top = frozenset(points)
    d = tower.depth
    return SubTree(tower, tuple(tower.image(top, d, n) for n in range(d + 1)))


def level_pairs(theta: LevelCongruence, alphabet: Sequence[int] = (0, 1)):
    """``theta`` as an explicit relation on level functions over ``alphabet``."""
    size = theta.tower.levels[theta.level]
    funcs = list(itertools.product(alphabet, repeat=size))
    return frozenset(
        (f, g) for f in funcs for g in funcs if all(f[x] == g[x] for x in theta.support)
    )


def tower_closure_D(tower: Tower, points: Iterable[int]) -> SubTree:
    """Close a set of depth-``d`` points through the congruence connection.

    ``g`` takes the points to the top-level congruence of agreement on them,
    ``f`` takes that congruence to every depth-``d`` point whose kernel
    contains it (tested on explicit two-valued pairs), and the resulting
    top-level congruence is read down the levels into a subtree.
    """
    d = tower.depth
    theta = LevelCongruence(tower, d, frozenset(points))
    pairs = level_pairs(theta)
    top = frozenset(x for x in range(tower.levels[d]) if all(f[x] == g[x] for f, g in pairs))
    closed = LevelCongruence(tower, d, top)
    return SubTree(tower, tuple(restrict(closed, n).support for n in range(d + 1)))


def _compatible_families(tower: Tower) -> Iterator[tuple[frozenset[int], ...]]:
    # Grow families level by level, keeping only image-compatible extensions.
    def nonempty_subsets(size):
        for r in range(1, size + 1):
            for c in itertools.combinations(range(size), r):
                yield frozenset(c)

    def grow(prefix):
        n = len(prefix)
        if n == len(tower.levels):
            yield tuple(prefix)
            return
        for s in nonempty_subsets(tower.levels[n]):
            if n == 0 or tower.image(s, n, n - 1) == prefix[-1]:
                prefix.append(s)
                yield from grow(prefix)
                prefix.pop()

    yield from grow([])


def hyper_complete_check(tower: Tower, max_exhaustive: int = 1 << 12,
                         samples: int = 256, rng: random.Random | None = None) -> bool:
    """Every locally partitionable congruence is partitionable, at truncation.

    Each image-compatible family of nonempty level supports (an LPC element)
    must be the family of restrictions of some top-level congruence (a PC
    element) and must equal ``gamma`` of a pruned subtree.  Families are
    enumerated when the top level has at most ``log2(max_exhaustive)`` nodes
    and sampled otherwise.
    """
    d = tower.depth
    top = tower.levels[d]
    if (1 << top) <= max_exhaustive:
        families: Iterable = _compatible_families(tower)
    else:
        rng = rng or random.Random(0)
        families = []
        for _ in range(samples):
            size = rng.randint(1, top)
            chosen = frozenset(rng.sample(range(top), size))
            families.append(tuple(tower.image(chosen, d, n) for n in range(d + 1)))

    candidates = [frozenset(c) for r in range(top + 1)
                  for c in itertools.combinations(range(top), r)] if (1 << top) <= max_exhaustive else None
    for fam in families:
        lpc = tuple(LevelCongruence(tower, n, s) for n, s in enumerate(fam))
        sub = delta(lpc)
        if not is_pruned(sub) or gamma(sub) != lpc:
            return False
        pool = candidates if candidates is not None else [fam[d]]
        if not any(
            all(tower.image(w, d, n) == fam[n] for n in range(d + 1)) for w in pool
        ):
            return False
    return True


@dataclass(frozen=True)
class TowerReport:
    level_sizes: tuple[int, ...]
    stabilization_level: int
    discrete_at_truncation: bool
    metrizable_presentation: bool = True


def classify(tower: Tower) -> TowerReport:
    """Where the tower stops growing.

    ``stabilization_level`` is the least ``k`` with every bond from level
    ``k`` on bijective.  The tower looks discrete at truncation when that
    happens strictly before the last level (or the tower has one level).
    """
    k = tower.depth
    while k > 0 and len(set(tower.bonds[k - 1])) == len(tower.bonds[k - 1]) \
            and tower.levels[k] == tower.levels[k - 1]:
        k -= 1
    return TowerReport(
        level_sizes=tower.levels,
        stabilization_level=k,
        discrete_at_truncation=tower.depth == 0 or k < tower.depth,
    )


def _surjections(src: int, dst: int) -> Iterator[tuple[int, ...]]:
    for values in itertools.product(range(dst), repeat=src):
        if len(set(values)) == dst:
            yield values


def all_towers(max_level: int, max_depth: int) -> Iterator[Tower]:
    """Every tower with level sizes at most ``max_level`` and depth at most ``max_depth``."""
    def grow(levels, bonds):
        yield Tower(tuple(levels), tuple(bonds))
        if len(levels) - 1 == max_depth:
            return
        for size in range(levels[-1], max_level + 1):
            for bond in _surjections(size, levels[-1]):
                levels.append(size)
                bonds.append(bond)
                yield from grow(levels, bonds)
                levels.pop()
                bonds.pop()

    for s0 in range(1, max_level + 1):
        yield from grow([s0], [])


def all_subtrees(tower: Tower) -> Iterator[SubTree]:
    """Every image-compatible subtree (pruned or not)."""
    def subsets(size):
        for r in range(size + 1):
            for c in itertools.combinations(range(size), r):
                yield frozenset(c)

    def grow(prefix):
        n = len(prefix)
        if n == len(tower.levels):
            yield SubTree(tower, tuple(prefix))
            return
        for s in subsets(tower.levels[n]):
            if n == 0 or tower.image(s, n, n - 1) <= prefix[-1]:
                prefix.append(s)
                yield from grow(prefix)
                prefix.pop()

    yield from grow([])


def pruned_subtrees(tower: Tower) -> Iterator[SubTree]:
    for t in all_subtrees(tower):
        if is_pruned(t) and not t.is_empty():
            yield t
