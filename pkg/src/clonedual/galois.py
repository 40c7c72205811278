"""The Galois connection between pair sets and spectrum subsets, and hyperspaces.

``galois_f`` sends a set of pairs to the spectrum points whose kernels contain
every pair; ``galois_g`` sends a set of points to the intersection of their
kernels, which is agreement on those points.  Composing them gives the two
closure operators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .clone_algebra import (
    FinAlgebra,
    Labeling,
    PartCongruence,
    block_function,
    contains,
    evaluate,
    members,
    spectrum,
    spectrum_points,
)
from .errors import EmptySubsetError, NonMemberError, SpectrumMismatchError
from .finspace import FinSpace, closure, is_separated
from .partition import Partition

__all__ = [
    "PairSet",
    "ClosedSet",
    "galois_f",
    "galois_g",
    "closure_C",
    "closure_D",
    "congruence_pairs",
    "topological_closure",
    "hyperspace",
    "hyper_subsets",
    "hyper_lift",
    "is_supercomplete",
    "check_pc_h_homeo",
    "set_equality_by_functions",
]

# Two labels suffice to separate a point from a set of points, so this
# alphabet is enough to read a partitionable congruence back as a pair set.
WITNESS_ALPHABET = (0, 1)


@dataclass(frozen=True)
class PairSet:
    algebra: FinAlgebra
    pairs: frozenset[tuple[Labeling, Labeling]]

    def __post_init__(self):
        pairs = frozenset(self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for pair in pairs:
            for x in pair:
                if not contains(self.algebra, x):
                    raise NonMemberError(f"{list(x.labels)} is not a member of the algebra")


@dataclass(frozen=True)
class ClosedSet:
    space: FinSpace
    points: frozenset[int]

    def __post_init__(self):
        pts = frozenset(self.points)
        object.__setattr__(self, "points", pts)
        if any(not 0 <= p < self.space.point_count for p in pts):
            raise ValueError("closed set point out of range")


def galois_f(pairs: PairSet) -> ClosedSet:
    """Spectrum points at which both sides of every pair evaluate equally."""
    pts = frozenset(
        phi.block
        for phi in spectrum_points(pairs.algebra)
        if all(evaluate(phi, a) == evaluate(phi, b) for a, b in pairs.pairs)
    )
    return ClosedSet(spectrum(pairs.algebra), pts)


def galois_g(points: ClosedSet, algebra: FinAlgebra) -> PartCongruence:
    if points.space != spectrum(algebra):
        raise SpectrumMismatchError("closed set does not live on the spectrum of this algebra")
    return PartCongruence(algebra, points.points)


def congruence_pairs(theta: PartCongruence,
                     alphabet: Sequence[int] = WITNESS_ALPHABET) -> PairSet:
    """All pairs in ``theta`` whose members take values in ``alphabet``."""
    elems = list(members(theta.algebra, alphabet))
    pairs = {(a, b) for a in elems for b in elems if (a, b) in theta}
    return PairSet(theta.algebra, frozenset(pairs))


def closure_C(pairs: PairSet) -> PartCongruence:
    return galois_g(galois_f(pairs), pairs.algebra)


def closure_D(points: ClosedSet, algebra: FinAlgebra) -> ClosedSet:
    """``f(g(S))``, with the congruence read back as a pair set."""
    return galois_f(congruence_pairs(galois_g(points, algebra)))


def topological_closure(points: ClosedSet) -> ClosedSet:
    return ClosedSet(points.space, closure(points.space, points.points))


def hyper_subsets(point_count: int) -> list[frozenset[int]]:
    """Nonempty subsets in binary order: index ``k`` is the set bits of ``k + 1``."""
    return [
        frozenset(i for i in range(point_count) if mask >> i & 1)
        for mask in range(1, 1 << point_count)
    ]


def hyper_lift(entourage: Partition, subsets: Sequence[frozenset[int]]) -> Partition:
    """The relation (C, D) <=> C inside E[D] and D inside E[C], as a partition.

    Two sets are related exactly when they meet the same blocks of ``E``.
    """
    return Partition.from_labels(frozenset(entourage.block_id[x] for x in s) for s in subsets)


def hyperspace(space: FinSpace) -> FinSpace:
    """Nonempty subsets of ``space`` with the lifted entourages.

    One lifted generator per generator of ``space``; when the generators are
    not closed under meet, the lift of the finest uniform partition is
    appended so the result carries the full hyperspace uniformity.
    """
    if space.point_count == 0:
        raise EmptySubsetError("the hyperspace of the empty space is not defined")
    subsets = hyper_subsets(space.point_count)
    gens = [hyper_lift(g, subsets) for g in space.generators]
    if space.finest not in space.generators:
        gens.append(hyper_lift(space.finest, subsets))
    return FinSpace(len(subsets), tuple(gens))


def is_supercomplete(space: FinSpace) -> bool:
    """Separated with a complete (for finite presentations: separated) hyperspace.

    Non-separated input returns False by convention.
    """
    if not is_separated(space):
        return False
    return is_separated(hyperspace(space))


def _restricted_relation(congruence_support, generator_values, functions):
    # Pairs (f o l, g o l) of the subalgebra generated by l that lie in the
    # congruence of agreement on ``congruence_support``.
    return frozenset(
        (i, j)
        for i, f in enumerate(functions)
        for j, g in enumerate(functions)
        if all(f[generator_values[b]] == g[generator_values[b]] for b in congruence_support)
    )


def check_pc_h_homeo(algebra: FinAlgebra, alphabet: Sequence[int] = (0, 1, 2)) -> bool:
    """Exhaustive check that f* and g* are mutually inverse uniform homeomorphisms.

    Part one: over every subset S of the spectrum (including the empty set),
    ``f(g(S)) == S``; over every partitionable congruence, ``g(f(theta)) ==
    theta``; and g* is injective as a map into relations.  Part two: for every
    member ``l`` over ``alphabet`` and every pair of closed sets C, D the three
    conditions

    * ``(C, D)`` is in the lift of the entourage E_l,
    * ``{phi(l) : phi in C} == {phi(l) : phi in D}``,
    * g*(C) and g*(D) agree on the subalgebra generated by ``l``,

    are equivalent.
    """
    z = spectrum(algebra)
    k = algebra.block_count
    all_sets = [frozenset(s) for r in range(k + 1) for s in itertools.combinations(range(k), r)]

    relations = set()
    for s in all_sets:
        theta = galois_g(ClosedSet(z, s), algebra)
        back = galois_f(congruence_pairs(theta))
        if back.points != s:
            return False
        relations.add(congruence_pairs(theta).pairs)
        if closure_C(congruence_pairs(theta)) != theta:
            return False
    if len(relations) != len(all_sets):
        return False

    nonempty = [s for s in all_sets if s]
    for ell in members(algebra, alphabet):
        values = block_function(algebra, ell)
        e_ell = Partition.from_labels(values)
        lifted = hyper_lift(e_ell, nonempty)
        distinct = sorted(set(values))
        position = {v: i for i, v in enumerate(distinct)}
        gen_values = [position[v] for v in values]
        functions = list(itertools.product(WITNESS_ALPHABET, repeat=len(distinct)))
        restricted = {s: _restricted_relation(s, gen_values, functions) for s in all_sets}
        value_sets = {s: frozenset(values[b] for b in s) for s in all_sets}
        for c, d in itertools.product(all_sets, repeat=2):
            same_values = value_sets[c] == value_sets[d]
            same_restriction = restricted[c] == restricted[d]
            if c and d:
                in_entourage = lifted.same_block(nonempty.index(c), nonempty.index(d))
            else:
                in_entourage = c == d
            if not same_values == same_restriction == in_entourage:
                return False
    return True


@lru_cache(maxsize=None)
def _agreement_masks(universe: tuple[int, ...]) -> frozenset[int]:
    """Distinct agreement sets {u : f(u) == g(u)} over the function family.

    The family is every map ``universe -> {0, 1}`` plus the identity.  Sets
    are bitmasks over positions in ``universe``.
    """
    n = len(universe)
    full = (1 << n) - 1
    identity_bits = sum(1 << i for i, u in enumerate(universe) if u == 1)
    identity_domain = sum(1 << i for i, u in enumerate(universe) if u in (0, 1))
    masks = set()
    maps = list(range(1 << n))
    for f in maps:
        for g in maps:
            masks.add(full & ~(f ^ g))
        # identity against a two-valued map agrees where u is 0/1 and matches it
        masks.add(identity_domain & ~(f ^ identity_bits))
    masks.add(full)  # identity against itself
    return frozenset(masks)


def set_equality_by_functions(a: Iterable[int], b: Iterable[int]) -> bool:
    """Decide ``set(a) == set(b)`` through agreement of function pairs.

    The sets are equal iff for every pair f, g in the family, f and g agree on
    all of ``a`` exactly when they agree on all of ``b``.
    """
    a, b = list(a), list(b)
    occurring = set(a) | set(b)
    fresh = next(i for i in itertools.count() if i not in occurring)
    universe = tuple(sorted(occurring | {fresh}))
    pos = {u: i for i, u in enumerate(universe)}
    mask_a = sum(1 << pos[x] for x in set(a))
    mask_b = sum(1 << pos[x] for x in set(b))
    return all(
        ((agree & mask_a) == mask_a) == ((agree & mask_b) == mask_b)
        for agree in _agreement_masks(universe)
    )
