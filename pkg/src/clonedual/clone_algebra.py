"""Elements and operations of finite-index subdirect powers of the full clone.

Labels are naturals standing in for an infinite alphabet ``A``.  An element of
an algebra over the index set ``range(n)`` is a :class:`Labeling`; an algebra
closed under every finitary operation on ``A`` (and every constant) is fixed
by its finest realized kernel, so :class:`FinAlgebra` stores just that
partition.  Its spectrum points are the evaluations at the kernel blocks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ArityError, EmptySubsetError, NonMemberError, SizeMismatchError
from .finspace import FinSpace, discrete_space
from .partition import Partition, coarsest, discrete, meet

__all__ = [
    "Labeling",
    "OpTable",
    "FinAlgebra",
    "SpectrumPoint",
    "PartCongruence",
    "kernel",
    "apply_op",
    "realize",
    "pair_inject",
    "cantor_pair",
    "generate",
    "contains",
    "spectrum",
    "spectrum_points",
    "evaluate",
    "congruence_kernel_pairs",
    "block_function",
    "from_block_function",
    "members",
]


@dataclass(frozen=True)
class Labeling:
    labels: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        for a in labels:
            if not isinstance(a, int) or a < 0:
                raise ValueError(f"labels must be naturals, got {a!r}")

    @property
    def index_size(self) -> int:
        return len(self.labels)

    def __getitem__(self, i: int) -> int:
        return self.labels[i]

    def __len__(self):
        return len(self.labels)


def kernel(labeling: Labeling) -> Partition:
    return Partition.from_labels(labeling.labels)


@dataclass(frozen=True)
class OpTable:
    """Finite fragment of an operation ``A**arity -> A``.

    ``entries`` fixes the value on finitely many tuples.  Unlisted tuples get
    ``constant`` when it is set; otherwise each distinct unlisted tuple gets
    its own fresh label (see :func:`realize`).
    """

    arity: int
    entries: Mapping[tuple[int, ...], int] = field(default_factory=dict)
    constant: int | None = None

    def __post_init__(self):
        if self.arity < 1:
            raise ArityError("arity must be at least 1")
        entries = dict(self.entries)
        for key in entries:
            if len(key) != self.arity:
                raise ArityError(f"entry {key} does not have arity {self.arity}")
        object.__setattr__(self, "entries", entries)

    def __hash__(self):
        return hash((self.arity, tuple(sorted(self.entries.items())), self.constant))

    @classmethod
    def from_function(cls, arity: int, func, domain: Iterable[int]) -> "OpTable":
        """Tabulate ``func`` on ``domain ** arity`` (fresh labels elsewhere)."""
        dom = list(domain)
        return cls(arity, {t: func(*t) for t in itertools.product(dom, repeat=arity)})


def _check_args(op: OpTable | None, args: Sequence[Labeling]) -> int:
    if op is not None and len(args) != op.arity:
        raise ArityError(f"operation of arity {op.arity} got {len(args)} arguments")
    if not args:
        raise ArityError("at least one argument is required")
    n = args[0].index_size
    for a in args[1:]:
        if a.index_size != n:
            raise SizeMismatchError("arguments have different index sizes")
    return n


def realize(op: OpTable, args: Sequence[Labeling]) -> dict[tuple[int, ...], int]:
    """The values ``op`` takes on the tuples occurring pointwise in ``args``.

    Fresh labels are the smallest naturals not occurring in the arguments or
    in the table, handed out to unseen tuples in lexicographic order.  The
    result depends only on ``op`` and the set of occurring tuples.
    """
    n = _check_args(op, args)
    tuples = {tuple(a.labels[i] for a in args) for i in range(n)}
    out = {t: op.entries[t] for t in tuples if t in op.entries}
    unseen = sorted(tuples - out.keys())
    if op.constant is not None:
        out.update((t, op.constant) for t in unseen)
        return out
    used = {x for t in tuples for x in t}
    used.update(x for t in op.entries for x in t)
    used.update(op.entries.values())
    fresh = 0
    for t in unseen:
        while fresh in used:
            fresh += 1
        out[t] = fresh
        used.add(fresh)
    return out


def apply_op(op: OpTable, args: Sequence[Labeling]) -> Labeling:
    """Apply ``op`` coordinatewise."""
    table = realize(op, args)
    n = args[0].index_size
    return Labeling(tuple(table[tuple(a.labels[i] for a in args)] for i in range(n)))


def cantor_pair(a: int, b: int) -> int:
    """Cantor's bijection N x N -> N."""
    return (a + b) * (a + b + 1) // 2 + b


def pair_inject(args: Sequence[Labeling]) -> Labeling:
    """Encode the argument tuple at each index with an injection ``A**n -> A``.

    Iterated Cantor pairing, so the kernel of the result is exactly the meet
    of the argument kernels.
    """
    _check_args(None, args)
    n = args[0].index_size
    return Labeling(
        tuple(reduce(cantor_pair, (a.labels[i] for a in args)) for i in range(n))
    )


@dataclass(frozen=True)
class FinAlgebra:
    """A partitionable algebra over the index set ``range(index_size)``.

    Members are exactly the labelings whose kernel is coarser than
    ``finest_kernel``.
    """

    index_size: int
    finest_kernel: Partition

    def __post_init__(self):
        if self.finest_kernel.ground_size != self.index_size:
            raise SizeMismatchError("finest kernel does not cover the index set")

    @classmethod
    def full(cls, n: int) -> "FinAlgebra":
        return cls(n, discrete(n))

    @classmethod
    def constants_only(cls, n: int) -> "FinAlgebra":
        return cls(n, coarsest(n))

    @property
    def block_count(self) -> int:
        return self.finest_kernel.block_count

    def __contains__(self, labeling: Labeling) -> bool:
        return contains(self, labeling)


def generate(index_size: int, gens: Sequence[Labeling]) -> FinAlgebra:
    """Subalgebra generated by ``gens``; its finest kernel is their meet."""
    if not gens:
        raise EmptySubsetError("generate needs at least one generator")
    for g in gens:
        if g.index_size != index_size:
            raise SizeMismatchError("generator index size mismatch")
    return FinAlgebra(index_size, reduce(meet, (kernel(g) for g in gens)))


def contains(algebra: FinAlgebra, labeling: Labeling) -> bool:
    if labeling.index_size != algebra.index_size:
        raise SizeMismatchError("labeling and algebra have different index sizes")
    # Equivalent to refines(finest_kernel, kernel(labeling)), without building the kernel.
    fin = algebra.finest_kernel
    reps = fin.representatives
    labels = labeling.labels
    return all(labels[i] == labels[reps[b]] for i, b in enumerate(fin.block_id))


def _require_member(algebra: FinAlgebra, labeling: Labeling) -> None:
    if not contains(algebra, labeling):
        raise NonMemberError(f"{list(labeling.labels)} is not a member of the algebra")


def block_function(algebra: FinAlgebra, labeling: Labeling) -> tuple[int, ...]:
    """A member as a function on spectrum points (one value per block)."""
    _require_member(algebra, labeling)
    return tuple(labeling.labels[r] for r in algebra.finest_kernel.representatives)


def from_block_function(algebra: FinAlgebra, values: Sequence[int]) -> Labeling:
    if len(values) != algebra.block_count:
        raise SizeMismatchError("one value per block is required")
    return Labeling(tuple(values[b] for b in algebra.finest_kernel.block_id))


def members(algebra: FinAlgebra, alphabet: Sequence[int]) -> Iterator[Labeling]:
    """All members taking values in ``alphabet``."""
    for values in itertools.product(alphabet, repeat=algebra.block_count):
        yield from_block_function(algebra, values)


@dataclass(frozen=True)
class SpectrumPoint:
    """Evaluation at one block of the finest kernel: a homomorphism to the clone."""

    algebra: FinAlgebra
    block: int

    def __post_init__(self):
        if not 0 <= self.block < self.algebra.block_count:
            raise ValueError(f"block {self.block} out of range")

    def __call__(self, labeling: Labeling) -> int:
        return evaluate(self, labeling)


def spectrum(algebra: FinAlgebra) -> FinSpace:
    """The spectrum as a finite space: one point per block, discrete uniformity."""
    return discrete_space(algebra.block_count)


def spectrum_points(algebra: FinAlgebra) -> list[SpectrumPoint]:
    return [SpectrumPoint(algebra, b) for b in range(algebra.block_count)]


def evaluate(point: SpectrumPoint, labeling: Labeling) -> int:
    _require_member(point.algebra, labeling)
    return labeling.labels[point.algebra.finest_kernel.representatives[point.block]]


@dataclass(frozen=True)
class PartCongruence:
    """Agreement on the blocks in ``support``; empty support is the total congruence."""

    algebra: FinAlgebra
    support: frozenset[int]

    def __post_init__(self):
        support = frozenset(self.support)
        object.__setattr__(self, "support", support)
        for b in support:
            if not 0 <= b < self.algebra.block_count:
                raise ValueError(f"support block {b} out of range")

    def __contains__(self, pair) -> bool:
        return congruence_kernel_pairs(self, *pair)


def congruence_kernel_pairs(theta: PartCongruence, left: Labeling, right: Labeling) -> bool:
    """True iff ``(left, right)`` is in ``theta``."""
    f = block_function(theta.algebra, left)
    g = block_function(theta.algebra, right)
    return all(f[b] == g[b] for b in theta.support)
