import itertools

import pytest
from hypothesis import given, strategies as st

from clonedual.clone_algebra import (
    FinAlgebra,
    Labeling,
    OpTable,
    PartCongruence,
    SpectrumPoint,
    apply_op,
    block_function,
    congruence_kernel_pairs,
    contains,
    evaluate,
    generate,
    kernel,
    members,
    pair_inject,
    realize,
    spectrum,
    spectrum_points,
)
from clonedual.errors import ArityError, EmptySubsetError, NonMemberError, SizeMismatchError
from clonedual.finspace import is_separated
from clonedual.partition import Partition, coarsest, discrete, meet

from oracles import meet_oracle, as_sets

L01_2 = FinAlgebra(3, Partition.from_blocks(3, [[0, 1], [2]]))


def lab(*xs):
    return Labeling(tuple(xs))


@st.composite
def labelings(draw, n, alphabet=4):
    return Labeling(tuple(draw(st.lists(st.integers(0, alphabet - 1), min_size=n, max_size=n))))


@st.composite
def algebra_with_members(draw, count=2, alphabet=3):
    n = draw(st.integers(1, 5))
    fin = Partition.from_labels(draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n)))
    alg = FinAlgebra(n, fin)
    elems = [
        Labeling(tuple(v[b] for b in fin.block_id))
        for v in draw(st.lists(
            st.lists(st.integers(0, alphabet - 1), min_size=fin.block_count,
                     max_size=fin.block_count),
            min_size=count, max_size=count))
    ]
    return alg, elems


def test_labels_must_be_naturals():
    with pytest.raises(ValueError):
        lab(1, -1)


def test_kernel_examples():
    assert kernel(lab(5, 9, 5)) == Partition.from_blocks(3, [[0, 2], [1]])
    assert kernel(lab(3, 3, 3)) == coarsest(3)
    assert kernel(lab(1, 2, 0)) == discrete(3)


def test_apply_op_pointwise_example():
    op = OpTable(1, {(5,): 7, (9,): 7})
    assert apply_op(op, [lab(5, 9, 5)]) == lab(7, 7, 7)


def test_apply_op_identity_table():
    ell = lab(4, 0, 4, 2)
    op = OpTable(1, {(x,): x for x in set(ell.labels)})
    assert apply_op(op, [ell]) == ell


def test_apply_op_fresh_allocation_example():
    # Occurring labels {1, 2, 3, 4}; unseen tuples (1,3) < (1,4) < (2,3) get 0, 5, 6.
    op = OpTable(2)
    out = apply_op(op, [lab(1, 1, 2), lab(3, 4, 3)])
    assert out == lab(0, 5, 6)
    assert kernel(out) == discrete(3)


def test_apply_op_fresh_avoids_table_values():
    op = OpTable(1, {(9,): 0})
    # used = {0, 1, 9}: the unseen tuple (1,) gets 2.
    assert apply_op(op, [lab(9, 1)]) == lab(0, 2)


def test_apply_op_constant_default():
    op = OpTable(2, {(0, 0): 5}, constant=1)
    assert apply_op(op, [lab(0, 0, 1), lab(0, 2, 0)]) == lab(5, 1, 1)


def test_apply_op_errors():
    with pytest.raises(ArityError):
        apply_op(OpTable(2), [lab(1)])
    with pytest.raises(SizeMismatchError):
        apply_op(OpTable(2), [lab(1), lab(1, 2)])
    with pytest.raises(ArityError):
        OpTable(0)
    with pytest.raises(ArityError):
        OpTable(2, {(1,): 0})


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(labelings(n), labelings(n))))
def test_fresh_op_positions_with_equal_tuples_share_labels(args):
    out = apply_op(OpTable(2), list(args))
    tuples = list(zip(args[0].labels, args[1].labels))
    for i, j in itertools.combinations(range(len(tuples)), 2):
        assert (out.labels[i] == out.labels[j]) == (tuples[i] == tuples[j])
    assert not set(out.labels) & (set(args[0].labels) | set(args[1].labels))


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(labelings(n), labelings(n))), st.data())
def test_injective_fragments_lift(args, data):
    # An injective table with fresh defaults is injective on occurring tuples,
    # so the result kernel is exactly the meet of the argument kernels.
    occurring = sorted(set(zip(args[0].labels, args[1].labels)))
    listed = data.draw(st.lists(st.sampled_from(occurring), unique=True))
    values = data.draw(st.lists(st.integers(0, 50), min_size=len(listed),
                                max_size=len(listed), unique=True))
    op = OpTable(2, dict(zip(listed, values)))
    out = apply_op(op, list(args))
    assert as_sets(kernel(out)) == meet_oracle(kernel(args[0]), kernel(args[1]))


def test_pair_inject_examples():
    a, b = lab(0, 0, 1), lab(0, 1, 1)
    assert meet_oracle(kernel(a), kernel(b)) == as_sets(discrete(3))
    assert kernel(pair_inject([a, b])) == discrete(3)
    assert kernel(pair_inject([lab(5, 9, 5)])) == kernel(lab(5, 9, 5))
    code = pair_inject([lab(3, 3), lab(8, 8)])
    assert code.labels[0] == code.labels[1]


@given(st.integers(1, 6).flatmap(lambda n: st.lists(labelings(n, 6), min_size=1, max_size=4)))
def test_pair_inject_kernel_is_meet(args):
    expected = kernel(args[0])
    for a in args[1:]:
        expected = meet(expected, kernel(a))
    assert kernel(pair_inject(args)) == expected


def test_generate_examples():
    assert generate(3, [lab(0, 0, 1)]).finest_kernel == Partition.from_blocks(3, [[0, 1], [2]])
    assert generate(3, [lab(0, 0, 1), lab(0, 1, 1)]).finest_kernel == discrete(3)
    assert generate(3, [lab(2, 2, 2)]).finest_kernel == coarsest(3)
    with pytest.raises(EmptySubsetError):
        generate(3, [])


def test_generate_single_generator_equivalent():
    gens = [lab(0, 0, 1, 1), lab(0, 1, 1, 1), lab(2, 2, 2, 0)]
    assert generate(4, gens) == generate(4, [pair_inject(gens)])


def test_contains_examples():
    assert contains(L01_2, lab(4, 4, 9))
    assert not contains(L01_2, lab(4, 5, 9))
    assert contains(L01_2, lab(3, 3, 3))
    with pytest.raises(SizeMismatchError):
        contains(L01_2, lab(1, 1))


@given(algebra_with_members(count=2), st.data())
def test_members_closed_under_operations(alg_elems, data):
    alg, (a, b) = alg_elems
    entries = data.draw(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)),
                                        st.integers(0, 5)))
    constant = data.draw(st.none() | st.integers(0, 5))
    out = apply_op(OpTable(2, entries, constant), [a, b])
    assert contains(alg, out)


def test_spectrum_examples():
    z = spectrum(L01_2)
    assert z.point_count == 2 and is_separated(z)
    assert spectrum(FinAlgebra.constants_only(4)).point_count == 1
    assert spectrum(FinAlgebra.full(5)).point_count == 5


@given(algebra_with_members(count=3))
def test_spectrum_size_is_block_count_of_meet(alg_elems):
    alg, gens = alg_elems
    gen = generate(alg.index_size, gens)
    expected = kernel(gens[0])
    for g in gens[1:]:
        expected = meet(expected, kernel(g))
    assert spectrum(gen).point_count == expected.block_count


def test_evaluate_examples():
    b0, b1 = spectrum_points(L01_2)
    assert evaluate(b0, lab(4, 4, 9)) == 4
    assert evaluate(b1, lab(4, 4, 9)) == 9
    assert all(evaluate(p, lab(7, 7, 7)) == 7 for p in (b0, b1))
    with pytest.raises(NonMemberError):
        evaluate(b0, lab(4, 5, 9))
    with pytest.raises(ValueError):
        SpectrumPoint(L01_2, 2)


@given(algebra_with_members(count=2), st.data())
def test_spectrum_points_are_homomorphisms(alg_elems, data):
    alg, args = alg_elems
    entries = data.draw(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)),
                                        st.integers(0, 9)))
    op = OpTable(2, entries, constant=data.draw(st.integers(0, 9)))
    out = apply_op(op, args)
    for phi in spectrum_points(alg):
        point_args = tuple(evaluate(phi, a) for a in args)
        expected = entries.get(point_args, op.constant)
        assert evaluate(phi, out) == expected


@given(algebra_with_members(count=2))
def test_spectrum_points_respect_fresh_fragments(alg_elems):
    alg, args = alg_elems
    op = OpTable(2)
    table = realize(op, args)
    out = apply_op(op, args)
    for phi in spectrum_points(alg):
        assert evaluate(phi, out) == table[tuple(evaluate(phi, a) for a in args)]


def test_congruence_examples():
    full = FinAlgebra.full(3)
    a, b = lab(4, 4, 9), lab(4, 5, 9)
    everything = PartCongruence(full, frozenset({0, 1, 2}))
    assert not congruence_kernel_pairs(everything, a, b)
    assert congruence_kernel_pairs(everything, a, a)
    assert congruence_kernel_pairs(PartCongruence(full, frozenset()), a, lab(0, 1, 2))
    # agree only at block 0
    assert congruence_kernel_pairs(PartCongruence(full, frozenset({0})), lab(1, 2, 3), lab(1, 0, 0))
    assert not congruence_kernel_pairs(PartCongruence(full, frozenset({1})), lab(1, 2, 3), lab(1, 0, 0))
    with pytest.raises(NonMemberError):
        congruence_kernel_pairs(PartCongruence(L01_2, frozenset()), a, b)


def test_congruences_are_compatible_with_operations():
    # Brute force: every agreement-on-V relation is preserved by every binary
    # operation on {0, 1}, applied to pairs of related members.
    alg = FinAlgebra(3, Partition.from_blocks(3, [[0], [1, 2]]))
    elems = list(members(alg, (0, 1)))
    ops = [OpTable.from_function(2, lambda x, y, t=t: t[2 * x + y], (0, 1))
           for t in itertools.product((0, 1), repeat=4)]
    for support in [frozenset(s) for r in range(3) for s in itertools.combinations(range(2), r)]:
        theta = PartCongruence(alg, support)
        related = [(a, b) for a in elems for b in elems if congruence_kernel_pairs(theta, a, b)]
        for op in ops:
            for (a1, b1), (a2, b2) in itertools.product(related, repeat=2):
                assert congruence_kernel_pairs(theta, apply_op(op, [a1, a2]), apply_op(op, [b1, b2]))


def test_block_function_roundtrip():
    for ell in members(L01_2, (0, 1, 2)):
        values = block_function(L01_2, ell)
        assert len(values) == 2
        assert Labeling(tuple(values[b] for b in L01_2.finest_kernel.block_id)) == ell
    assert sum(1 for _ in members(L01_2, (0, 1, 2))) == 9
