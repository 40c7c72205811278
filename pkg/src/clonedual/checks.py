"""Named executable checks and the suites that group them.

Every check sweeps a pool of instances (exhaustive or seeded random) and
stops at the first counterexample.  Pools are enumerated smallest first, so
the reported counterexample is a smallest one found.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from . import clone_algebra as ca
from . import duality as du
from . import finspace as fs
from . import galois as ga
from . import partition as pt
from . import tower as tw

__all__ = ["Check", "CheckResult", "CHECKS", "SUITES", "BUDGETS", "run_check", "run_suite"]

BUDGETS = ("small", "full")


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    instance_id: str
    passed: bool
    instances: int
    counterexample: Optional[str] = None

    def as_dict(self) -> dict:
        out = {
            "check_id": self.check_id,
            "instance_id": self.instance_id,
            "verdict": "pass" if self.passed else "fail",
            "instances": self.instances,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass(frozen=True)
class Check:
    check_id: str
    statement: str
    procedure: str
    # (rng, budget) -> (pool description, iterable of (instance, ok) pairs)
    run: Callable[[random.Random, str], tuple[str, Iterable[tuple[object, bool]]]]


def _sweep(check_id: str, pool: str, results) -> CheckResult:
    count = 0
    for instance, ok in results:
        count += 1
        if not ok:
            return CheckResult(check_id, pool, False, count, repr(instance))
    return CheckResult(check_id, pool, True, count)


# -- instance pools -------------------------------------------------------

def random_partition(rng: random.Random, n: int) -> pt.Partition:
    k = rng.randint(1, max(n, 1))
    return pt.Partition.from_labels(rng.randrange(k) for _ in range(n))


def random_space(rng: random.Random, max_points: int, max_gens: int = 3) -> fs.FinSpace:
    n = rng.randint(1, max_points)
    return fs.FinSpace(n, tuple(random_partition(rng, n) for _ in range(rng.randint(1, max_gens))))


def random_uniform_map(rng: random.Random, source: fs.FinSpace, target: fs.FinSpace) -> fs.UniformMap:
    # Constant on finest blocks of the source, hence uniformly continuous.
    per_block = [rng.randrange(target.point_count) for _ in range(source.finest.block_count)]
    return fs.UniformMap(source, target, tuple(per_block[b] for b in source.finest.block_id))


def random_algebra(rng: random.Random, max_index: int) -> ca.FinAlgebra:
    n = rng.randint(1, max_index)
    return ca.FinAlgebra(n, random_partition(rng, n))


def all_spaces(max_points: int, max_gens: int) -> Iterable[fs.FinSpace]:
    for n in range(1, max_points + 1):
        pool = list(pt.all_partitions(n))
        for r in range(1, max_gens + 1):
            for gens in itertools.combinations(pool, r):
                yield fs.FinSpace(n, gens)


def all_algebras(max_index: int) -> Iterable[ca.FinAlgebra]:
    for n in range(max_index + 1):
        for p in pt.all_partitions(n):
            yield ca.FinAlgebra(n, p)


def _pick(budget: str, small, full):
    return full if budget == "full" else small


# -- partition lattice ----------------------------------------------------

def lattice_laws_hold(p: pt.Partition, q: pt.Partition, r: pt.Partition) -> bool:
    m, j = pt.meet(p, q), pt.join(p, q)
    return (
        m == pt.meet(q, p)
        and j == pt.join(q, p)
        and pt.meet(p, p) == p
        and pt.join(p, p) == p
        and pt.meet(pt.meet(p, q), r) == pt.meet(p, pt.meet(q, r))
        and pt.join(pt.join(p, q), r) == pt.join(p, pt.join(q, r))
        and pt.join(p, m) == p
        and pt.meet(p, j) == p
        and pt.refines(p, q) == (m == p) == (j == q)
        and m.block_count >= max(p.block_count, q.block_count)
        and j.block_count <= min(p.block_count, q.block_count)
    )


def _lattice_laws(rng, budget):
    exhaustive = _pick(budget, 4, 5)
    random_pairs = _pick(budget, 1000, 10_000)

    def gen():
        for n in range(exhaustive + 1):
            parts = list(pt.all_partitions(n))
            for p, q in itertools.product(parts, repeat=2):
                r = rng.choice(parts)
                yield (p, q, r), lattice_laws_hold(p, q, r)
        for _ in range(random_pairs):
            n = rng.randint(0, 10)
            p, q, r = (random_partition(rng, n) for _ in range(3))
            yield (p, q, r), lattice_laws_hold(p, q, r)

    return f"exhaustive n<={exhaustive} + {random_pairs} random n<=10", gen()


# -- E_l generate --------------------------------------------------------

def pair_inject_kernel_ok(algebra: ca.FinAlgebra, a: ca.Labeling, b: ca.Labeling) -> bool:
    code = ca.pair_inject([a, b])
    if ca.kernel(code) != pt.meet(ca.kernel(a), ca.kernel(b)):
        return False
    if not ca.contains(algebra, code):
        return False
    # Spectrum side: agreeing at the code forces agreeing at both inputs.
    pts = ca.spectrum_points(algebra)
    return all(
        phi(a) == psi(a) and phi(b) == psi(b)
        for phi in pts for psi in pts if phi(code) == psi(code)
    )


def _pair_inject(rng, budget):
    max_index = _pick(budget, 3, 4)

    def gen():
        for alg in all_algebras(max_index):
            elems = list(ca.members(alg, (0, 1, 2)))
            for a, b in itertools.product(elems, repeat=2):
                yield (alg, a, b), pair_inject_kernel_ok(alg, a, b)

    return f"algebras index<={max_index}, member pairs over 3 labels", gen()


# -- unit / counit properties --------------------------------------------

@functools.lru_cache(maxsize=None)
def _unit_table(space: fs.FinSpace) -> dict[str, bool]:
    # Shared by the five unit/counit checks; cleared at the start of each suite.
    return du.check_unit_theorem(space)


def _unit_property(key: str):
    def run(rng, budget):
        max_points = _pick(budget, 4, 5)

        def gen():
            for space in all_spaces(max_points, 3):
                yield space, _unit_table(space)[key]

        return f"all spaces points<={max_points}, generators<=3", gen()
    return run


# -- naturality / triangle identities ------------------------------------

def _naturality_space(rng, budget):
    count = _pick(budget, 200, 1000)

    def gen():
        for _ in range(count):
            x, y = random_space(rng, 6), random_space(rng, 6)
            f = random_uniform_map(rng, x, y)
            yield f, du.check_naturality_space(f)

    return f"{count} random maps, points<=6", gen()


def _naturality_alg(rng, budget):
    count = _pick(budget, 200, 1000)

    def gen():
        for _ in range(count):
            src, tgt = random_algebra(rng, 6), random_algebra(rng, 6)
            phi = du.random_hom(rng, src, tgt)
            yield phi, du.check_naturality_alg(phi)

    return f"{count} random homomorphisms, index<=6", gen()


def _unit_counit(rng, budget):
    count = _pick(budget, 200, 1000)

    def gen():
        for _ in range(count):
            alg, space = random_algebra(rng, 6), random_space(rng, 6)
            yield (alg, space), du.check_unit_counit(alg, space)

    return f"{count} random algebra/space pairs, size<=6", gen()


# -- closure operator ----------------------------------------------------

def _closure_spectrum(rng, budget):
    max_index = _pick(budget, 3, 4)

    def gen():
        for alg in all_algebras(max_index):
            z = ca.spectrum(alg)
            for r in range(alg.block_count + 1):
                for pts in itertools.combinations(range(alg.block_count), r):
                    s = ga.ClosedSet(z, frozenset(pts))
                    yield (alg, s), ga.closure_D(s, alg) == ga.topological_closure(s)

    return f"all algebras index<={max_index}, all spectrum subsets", gen()


def _closure_tower(rng, budget):
    max_level, max_depth = _pick(budget, (2, 2), (3, 3))

    def gen():
        for tower in tw.all_towers(max_level, max_depth):
            top = tower.levels[-1]
            for r in range(top + 1):
                for pts in itertools.combinations(range(top), r):
                    expected = tw.prune(tw.downward_closure(tower, pts))
                    yield (tower, pts), tw.tower_closure_D(tower, pts) == expected

    return f"all towers levels<={max_level}, depth<={max_depth}", gen()


# -- Galois homeomorphism ------------------------------------------------

def _pc_h_homeo(rng, budget):
    max_index = _pick(budget, 3, 4)

    def gen():
        for alg in all_algebras(max_index):
            yield alg, ga.check_pc_h_homeo(alg)

    return f"all algebras index<={max_index}", gen()


# -- towers: gamma/delta and density -------------------------------------

def _gamma_delta(rng, budget):
    max_level, max_depth = _pick(budget, (2, 2), (3, 3))

    def ok(t):
        fam = tw.gamma(t)
        return tw.delta(fam) == t and tw.gamma(tw.delta(fam)) == fam

    def gen():
        for tower in tw.all_towers(max_level, max_depth):
            for t in tw.pruned_subtrees(tower):
                yield t, ok(t)

    return f"all pruned subtrees, levels<={max_level}, depth<={max_depth}", gen()


def density_ok(t: tw.SubTree, level: int) -> bool:
    tower = t.tower
    witness = tw.density_witness(t, level)
    # F_N-agreement via restriction.
    if tw.restrict(witness, level).support != t.node_sets[level]:
        return False
    # The witness is a genuine thread: its restrictions form a compatible family.
    family = tuple(tw.restrict(witness, m) for m in range(tower.depth + 1))
    closed = tw.gamma(tw.delta(family))
    if any(closed[m] != tw.gamma(t)[m] for m in range(level + 1)):
        return False
    # Brute force over two-valued functions on level ``level`` lifted to the top.
    size, d = tower.levels[level], tower.depth
    proj = [tower.project(x, d, level) for x in range(tower.levels[d])]
    for f in itertools.product((0, 1), repeat=size):
        for g in itertools.product((0, 1), repeat=size):
            in_witness = all(f[proj[x]] == g[proj[x]] for x in witness.support)
            in_theta = all(f[v] == g[v] for v in t.node_sets[level])
            if in_witness != in_theta:
                return False
    return True


def _density(rng, budget):
    max_level, max_depth = _pick(budget, (2, 2), (3, 3))

    def gen():
        for tower in tw.all_towers(max_level, max_depth):
            for t in tw.pruned_subtrees(tower):
                for n in range(tower.depth + 1):
                    yield (t, n), density_ok(t, n)

    return f"all pruned subtrees x levels, levels<={max_level}, depth<={max_depth}", gen()


# -- supercompleteness ---------------------------------------------------

def random_tower(rng: random.Random, max_level: int, max_depth: int) -> tw.Tower:
    levels = [rng.randint(1, max_level)]
    bonds = []
    for _ in range(rng.randint(0, max_depth)):
        size = rng.randint(levels[-1], max_level)
        while True:
            bond = tuple(rng.randrange(levels[-1]) for _ in range(size))
            if len(set(bond)) == levels[-1]:
                break
        levels.append(size)
        bonds.append(bond)
    return tw.Tower(tuple(levels), tuple(bonds))


def _hyper_complete(rng, budget):
    max_level, max_depth = _pick(budget, (2, 2), (3, 3))
    extra = _pick(budget, 20, 200)

    def gen():
        for tower in tw.all_towers(max_level, max_depth):
            yield tower, tw.hyper_complete_check(tower)
        for _ in range(extra):
            tower = random_tower(rng, 4, 4)
            yield tower, tw.hyper_complete_check(tower)

    return (f"all towers levels<={max_level}, depth<={max_depth} "
            f"+ {extra} random levels<=4, depth<=4"), gen()


def _supercomplete_separated(rng, budget):
    max_points = _pick(budget, 3, 4)

    def gen():
        for space in all_spaces(max_points, 3):
            yield space, ga.is_supercomplete(space) == fs.is_separated(space)

    return f"all spaces points<={max_points}, generators<=3", gen()


# -- set equality --------------------------------------------------------

def label_multisets(distinct: int, max_len: int) -> list[tuple[int, ...]]:
    return [
        m for n in range(max_len + 1)
        for m in itertools.combinations_with_replacement(range(distinct), n)
    ]


def _set_equality(rng, budget):
    max_len = _pick(budget, 3, 5)

    def gen():
        pool = label_multisets(4, max_len)
        for a, b in itertools.product(pool, repeat=2):
            yield (a, b), ga.set_equality_by_functions(a, b) == (set(a) == set(b))

    return f"all label multisets over 4 labels, length<={max_len}", gen()


CHECKS: dict[str, Check] = {
    c.check_id: c
    for c in [
        Check("lattice-laws", "Partitions of a finite set form a lattice under refinement.",
              "meet/join commutative, associative, idempotent, absorptive; refines(p,q) iff "
              "meet(p,q)=p iff join(p,q)=q; block counts bounded; exhaustive plus random pairs.",
              _lattice_laws),
        Check("pair-inject-kernel", "The relations E_l generate the uniformity on Z(L).",
              "For members l1, l2 the coded element i(l1, l2) under an injective pairing "
              "i: A^2 -> A has kernel meet(ker l1, ker l2), so E_i(l1,l2) lies inside E_l1,l2.",
              _pair_inject),
        Check("unit-uniform", "C: X -> Z(B_A(X)) is uniformly continuous.",
              "Points in one finest block of X map to one block of every spectrum generator.",
              _unit_property("uniform")),
        Check("unit-dense", "C''(X) is dense in Z(B_A(X)).",
              "The image of C meets every block of the finest uniform partition of the spectrum.",
              _unit_property("dense")),
        Check("unit-injective", "C is injective iff X is separated.",
              "Compare injectivity of C with discreteness of the finest partition of X.",
              _unit_property("injective_iff_separated")),
        Check("unit-bijective", "C is an isomorphism iff X is separated (finite X is complete).",
              "Compare bijectivity of C with discreteness of the finest partition of X.",
              _unit_property("bijective_iff_separated")),
        Check("counit-iso", "rho: L -> B_A(Z(L)) is an isomorphism for partitionable L.",
              "rho on B_A(X) has a bijective block map and is bijective on members over {0,1}.",
              _unit_property("counit_iso")),
        Check("naturality-space", "Z(B_A(f)) o C_X = C_Y o f.",
              "Both composites agree at every point; g o f evaluated pointwise for all members g.",
              _naturality_space),
        Check("naturality-alg", "B_A(Z(phi)) o rho_L = rho_M o phi.",
              "Both composites agree on every member of L over a 3-label alphabet.",
              _naturality_alg),
        Check("unit-counit", "Z(rho_L) and C_Z(L) are inverses; B_A(C_X) and rho_B_A(X) are inverses.",
              "Both composites of each pair equal the identity (on points, and on members "
              "over a 3-label alphabet).",
              _unit_counit),
        Check("closure-d-spectrum", "D = f o g is the topological closure operator on Z(L).",
              "f(g(S)), with g(S) read back as explicit pairs over {0,1}, equals the "
              "closure of S in the spectrum uniformity, for every subset S.",
              _closure_spectrum),
        Check("closure-d-tower", "D = f o g is the topological closure operator on the limit.",
              "Galois closure of each set of top-level points equals the pruned downward closure.",
              _closure_tower),
        Check("pc-h-homeo", "f*: PC(L) -> H(Z(L)) and g*: H(Z(L)) -> PC(L) are uniform homeomorphisms.",
              "f*, g* mutually inverse on all subsets; for every member l and closed C, D: "
              "(C,D) in lift(E_l) iff value sets at l agree iff g*(C), g*(D) agree on <l>.",
              _pc_h_homeo),
        Check("gamma-delta", "Gamma and Delta are inverses.",
              "delta(gamma(t)) = t for every pruned subtree, and gamma(delta(F)) = F.",
              _gamma_delta),
        Check("density-2.4", "PC(L) is dense in LPC(L).",
              "For every pruned subtree t and level N the top-level congruence V# over the "
              "level-N nodes of t satisfies (V#, t) in F_N: its restriction to level N is t's, "
              "checked by restriction and by brute force over two-valued level functions.",
              _density),
        Check("hyper-complete", "Z(L) is supercomplete iff every LPC is PC; countably generated => LPC = PC.",
              "Every image-compatible family of nonempty level supports is gamma of a pruned "
              "subtree and is realized by some top-level congruence (at truncation depth).",
              _hyper_complete),
        Check("supercomplete-separated", "Separated finite spaces are supercomplete.",
              "is_supercomplete(X) equals is_separated(X) on every small finite presentation.",
              _supercomplete_separated),
        Check("set-equality", "{a_i} = {b_j} iff for all f, g: A -> A, "
              "(f = g on all a_i) <=> (f = g on all b_j).",
              "Evaluate the criterion over two-valued maps plus the identity and compare "
              "with literal set equality.",
              _set_equality),
    ]
}

SUITES: dict[str, tuple[str, ...]] = {
    "partition-lattice": ("lattice-laws",),
    "e-ell-generate": ("pair-inject-kernel",),
    "duality-thm-1.2": ("unit-uniform", "unit-dense", "unit-injective", "unit-bijective", "counit-iso"),
    "duality-thm-1.3": ("naturality-space", "naturality-alg", "unit-counit"),
    "closure-thm-2.2": ("closure-d-spectrum", "closure-d-tower"),
    "density-thm-2.4": ("gamma-delta", "density-2.4"),
    "galois-thm-2.6": ("pc-h-homeo",),
    "supercomplete-thm-2.8": ("hyper-complete", "supercomplete-separated"),
    "set-equality": ("set-equality",),
}
SUITES["all"] = tuple(sorted(CHECKS))


def run_check(check_id: str, seed: int, budget: str = "small") -> CheckResult:
    check = CHECKS[check_id]
    rng = random.Random(f"{seed}:{check_id}")
    pool, results = check.run(rng, budget)
    return _sweep(check_id, pool, results)


def run_suite(suite: str, seed: int, budget: str = "small") -> dict:
    """Run every check of ``suite`` and assemble a deterministic report."""
    if suite not in SUITES:
        raise KeyError(suite)
    if budget not in BUDGETS:
        raise ValueError(f"unknown budget {budget!r}")
    _unit_table.cache_clear()
    results = sorted((run_check(c, seed, budget) for c in SUITES[suite]),
                     key=lambda r: (r.check_id, r.instance_id))
    passed = sum(r.passed for r in results)
    return {
        "suite": suite,
        "seed": seed,
        "budget": budget,
        "checks": [r.as_dict() for r in results],
        "summary": {"total": len(results), "passed": passed, "failed": len(results) - passed},
    }
