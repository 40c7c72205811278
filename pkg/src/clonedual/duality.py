"""The functors B_A and Z on finite presentations, the unit C and counit rho.

A homomorphism between two finite-index algebras is carried by a map between
their spectra going the other way: :class:`AlgHom` stores, for every block of
the target's finest kernel, the source block it reads from.  The action on
elements is derived from that block map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .clone_algebra import (
    FinAlgebra,
    Labeling,
    block_function,
    from_block_function,
    members,
    spectrum,
)
from .finspace import FinSpace, UniformMap, compose, identity_map, is_dense, is_separated

__all__ = [
    "AlgHom",
    "apply_hom",
    "compose_homs",
    "identity_hom",
    "b_functor",
    "b_on_map",
    "z_on_hom",
    "unit_c",
    "counit_rho",
    "check_naturality_space",
    "check_naturality_alg",
    "check_unit_counit",
    "check_unit_theorem",
    "is_isomorphism",
]

# Alphabet used when a check compares two homomorphisms element by element.
CHECK_ALPHABET = (0, 1, 2)


@dataclass(frozen=True)
class AlgHom:
    source: FinAlgebra
    target: FinAlgebra
    block_map: tuple[int, ...]

    def __post_init__(self):
        bm = tuple(self.block_map)
        object.__setattr__(self, "block_map", bm)
        if len(bm) != self.target.block_count:
            raise ValueError("block_map needs one entry per target block")
        for b in bm:
            if not 0 <= b < self.source.block_count:
                raise ValueError(f"block_map entry {b} is not a source block")

    def __call__(self, labeling: Labeling) -> Labeling:
        return apply_hom(self, labeling)


def apply_hom(hom: AlgHom, labeling: Labeling) -> Labeling:
    values = block_function(hom.source, labeling)
    return from_block_function(hom.target, [values[b] for b in hom.block_map])


def identity_hom(algebra: FinAlgebra) -> AlgHom:
    return AlgHom(algebra, algebra, tuple(range(algebra.block_count)))


def compose_homs(psi: AlgHom, phi: AlgHom) -> AlgHom:
    """``psi after phi``."""
    if phi.target != psi.source:
        raise ValueError("homomorphisms are not composable")
    return AlgHom(phi.source, psi.target, tuple(phi.block_map[c] for c in psi.block_map))


def is_isomorphism(hom: AlgHom) -> bool:
    return sorted(hom.block_map) == list(range(hom.source.block_count))


def b_functor(space: FinSpace) -> FinAlgebra:
    """The algebra of uniformly continuous labelings of ``space``."""
    return FinAlgebra(space.point_count, space.finest)


def b_on_map(f: UniformMap) -> AlgHom:
    """``g -> g o f`` from B(target) to B(source)."""
    src_fin = f.source.finest
    tgt_fin = f.target.finest
    block_map = tuple(tgt_fin.block_id[f.values[r]] for r in src_fin.representatives)
    return AlgHom(b_functor(f.target), b_functor(f.source), block_map)


def z_on_hom(phi: AlgHom) -> UniformMap:
    """``theta -> theta o phi`` from Z(target) to Z(source)."""
    return UniformMap(spectrum(phi.target), spectrum(phi.source), phi.block_map)


def unit_c(space: FinSpace) -> UniformMap:
    """Send each point to evaluation at it, a point of Z(B(space))."""
    return UniformMap(space, spectrum(b_functor(space)), space.finest.block_id)


def counit_rho(algebra: FinAlgebra) -> AlgHom:
    """``l -> (phi -> phi(l))`` from L to B(Z(L))."""
    return AlgHom(algebra, b_functor(spectrum(algebra)), tuple(range(algebra.block_count)))


def _homs_agree(left: AlgHom, right: AlgHom, alphabet: Sequence[int]) -> bool:
    if (left.source, left.target) != (right.source, right.target):
        return False
    return all(left(x) == right(x) for x in members(left.source, alphabet))


def check_naturality_space(f: UniformMap) -> bool:
    """Z(B(f)) o C_X == C_Y o f, compared at every point of X."""
    lhs = compose(z_on_hom(b_on_map(f)), unit_c(f.source))
    rhs = compose(unit_c(f.target), f)
    if lhs.values != rhs.values:
        return False
    # The same square read through evaluations: C(x)(g o f) == g(f(x)).
    bf = b_on_map(f)
    for g in members(b_functor(f.target), CHECK_ALPHABET):
        pulled = bf(g)
        for x in f.source.points:
            if pulled.labels[x] != g.labels[f.values[x]]:
                return False
    return True


def check_naturality_alg(phi: AlgHom, alphabet: Sequence[int] = CHECK_ALPHABET) -> bool:
    """B(Z(phi)) o rho_L == rho_M o phi on every member over ``alphabet``."""
    lhs = compose_homs(b_on_map(z_on_hom(phi)), counit_rho(phi.source))
    rhs = compose_homs(counit_rho(phi.target), phi)
    return _homs_agree(lhs, rhs, alphabet)


def check_unit_counit(algebra: FinAlgebra, space: FinSpace | None = None,
                      alphabet: Sequence[int] = CHECK_ALPHABET) -> bool:
    """Both triangle identities.

    Z(rho_L) and C_{Z(L)} are mutually inverse, and B(C_X) and rho_{B(X)} are
    mutually inverse.  The space side is skipped when ``space`` is None.
    """
    zl = spectrum(algebra)
    c = unit_c(zl)
    zr = z_on_hom(counit_rho(algebra))
    if compose(zr, c) != identity_map(zl):
        return False
    if compose(c, zr) != identity_map(c.target):
        return False
    if space is None:
        return True
    bx = b_functor(space)
    rho = counit_rho(bx)
    bc = b_on_map(unit_c(space))
    if not _homs_agree(compose_homs(bc, rho), identity_hom(bx), alphabet):
        return False
    return _homs_agree(compose_homs(rho, bc), identity_hom(rho.target), alphabet)


def check_unit_theorem(space: FinSpace) -> dict[str, bool]:
    """Properties of C_X for one space, plus the counit on B(X).

    Returns a mapping of property name to whether it holds; every entry is
    True exactly when the corresponding statement is confirmed.
    """
    c = unit_c(space)
    sep = is_separated(space)
    rho = counit_rho(b_functor(space))
    return {
        "uniform": _uniform_by_pairs(c),
        "dense": is_dense(c.target, c.values),
        "injective_iff_separated": c.is_injective() == sep,
        "bijective_iff_separated": (c.is_injective() and c.is_surjective()) == sep,
        "counit_iso": is_isomorphism(rho) and _rho_bijective_on_members(rho),
    }


def _uniform_by_pairs(f: UniformMap) -> bool:
    # Pairwise form of uniform continuity, independent of the refinement test.
    fin = f.source.finest
    return all(
        g.same_block(f.values[x], f.values[y])
        for x in f.source.points
        for y in f.source.points
        if fin.same_block(x, y)
        for g in f.target.generators
    )


def _rho_bijective_on_members(rho: AlgHom, alphabet: Sequence[int] = (0, 1)) -> bool:
    sources = list(members(rho.source, alphabet))
    images = {rho(x) for x in sources}
    return len(images) == len(sources) and images == set(members(rho.target, alphabet))


def random_hom(rng, source: FinAlgebra, target: FinAlgebra) -> AlgHom:
    return AlgHom(source, target,
                  tuple(rng.randrange(source.block_count) for _ in range(target.block_count)))


def all_block_maps(source: FinAlgebra, target: FinAlgebra):
    for bm in itertools.product(range(source.block_count), repeat=target.block_count):
        yield AlgHom(source, target, bm)
