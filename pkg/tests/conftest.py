"""Shared generators and enumeration oracles for the test suite.

The oracles work by brute force on explicitly enumerated elements and never
call the lattice-presentation code paths they are checking.
"""

from __future__ import annotations

import random
from itertools import product

from rigidcoh import FiniteGroup, GaloisLattice, IntMatrix, IsogenyPair
from rigidcoh.intmatrix import matrix_sum


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> IntMatrix:
    """A product of elementary row operations with small coefficients."""
    m = IntMatrix.identity(n).to_lists()
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice([-2, -1, 1, 2])
        for k in range(n):
            m[i][k] += c * m[j][k]
    return IntMatrix(m, cols=n)


def conjugate_lattice(rng: random.Random, lattice: GaloisLattice) -> GaloisLattice:
    U = random_unimodular(rng, lattice.rank)
    Uinv = U.inverse_unimodular()
    return GaloisLattice(
        lattice.group, lattice.rank, [U * A * Uinv for A in lattice.action]
    )


def random_cyclic_lattice(rng: random.Random, k: int, rank: int) -> GaloisLattice:
    """A lattice for C_k: cycle/sign blocks of order dividing k, conjugated."""
    group = FiniteGroup.cyclic(k)
    blocks: list[list[list[int]]] = []
    size = 0
    while size < rank:
        d = rng.choice([d for d in range(1, rank - size + 1) if k % d == 0])
        block = [[0] * d for _ in range(d)]
        for i in range(d):
            block[(i + 1) % d][i] = 1
        # a negated block must still have order dividing k
        if rng.random() < 0.4:
            if (d % 2 == 0) or (k % (2 * d) == 0):
                block = [[-x for x in row] for row in block]
        blocks.append(block)
        size += d
    gen = [[0] * rank for _ in range(rank)]
    at = 0
    for block in blocks:
        d = len(block)
        for i in range(d):
            for j in range(d):
                gen[at + i][at + j] = block[i][j]
        at += d
    base = GaloisLattice.from_generator_matrices(group, {1: IntMatrix(gen, cols=rank)})
    return conjugate_lattice(rng, base)


_SIGNED_PERM_CACHE: dict[int, list[IntMatrix]] = {}


def signed_permutations(n: int) -> list[IntMatrix]:
    if n not in _SIGNED_PERM_CACHE:
        from itertools import permutations

        mats = []
        for perm in permutations(range(n)):
            for signs in product((1, -1), repeat=n):
                m = [[0] * n for _ in range(n)]
                for j in range(n):
                    m[perm[j]][j] = signs[j]
                mats.append(IntMatrix(m, cols=n))
        _SIGNED_PERM_CACHE[n] = mats
    return _SIGNED_PERM_CACHE[n]


def random_group_lattice(rng: random.Random, group: FiniteGroup, rank: int,
                         tries: int = 200) -> GaloisLattice:
    """A lattice for an arbitrary small group via signed-permutation images."""
    pool = signed_permutations(rank)
    gens = group.generators()
    for _ in range(tries):
        assign = {g: rng.choice(pool) for g in gens}
        try:
            base = GaloisLattice.from_generator_matrices(group, assign)
        except ValueError:
            continue
        return conjugate_lattice(rng, base)
    # always-valid fallback: the trivial action
    return conjugate_lattice(rng, GaloisLattice.with_trivial_action(group, rank))


def random_isogeny_pair(rng: random.Random, group: FiniteGroup, rank: int,
                        max_index: int = 36) -> IsogenyPair:
    """An equivariant finite-index sublattice via central group-algebra maps."""
    ybar = random_group_lattice(rng, group, rank)
    norm = matrix_sum(ybar.action)
    eye = IntMatrix.identity(rank)
    for _ in range(200):
        choice = rng.random()
        if choice < 0.4:
            n = rng.randint(1, 6)
            f = eye.scale(n)
        elif choice < 0.8:
            a, b = rng.randint(-3, 3), rng.randint(-2, 2)
            f = eye.scale(a) + norm.scale(b)
        else:
            # a central class sum: sum over a full conjugacy class
            cls = _conjugacy_class(group, rng.randrange(group.order))
            f = matrix_sum([ybar.action[s] for s in cls]) + eye.scale(rng.randint(-2, 2))
        det = f.det()
        if det != 0 and abs(det) <= max_index:
            return IsogenyPair.from_matrices(group, f, list(ybar.action))
    return IsogenyPair.from_matrices(group, eye.scale(2), list(ybar.action))


def _conjugacy_class(group: FiniteGroup, a: int) -> set[int]:
    return {group.mul(group.mul(g, a), group.inv(g)) for g in group.elements()}


# ---------------------------------------------------------------------------
# Enumeration oracles for finite-module cohomology
# ---------------------------------------------------------------------------

class EnumeratedModule:
    """A finite module as explicit coordinate tuples with a group action."""

    def __init__(self, finite_module):
        self.group = finite_module.group
        self.ab = finite_module.abelian_group()
        self.elements = list(self.ab.elements())
        self.action = {}
        for s in range(self.group.order):
            table = {}
            for coords in self.elements:
                lift = self.ab.lift(coords)
                table[coords] = self.ab.class_of(finite_module.act(s, lift))
            self.action[s] = table

    def add(self, a, b):
        return self.ab.add(a, b)

    def neg(self, a):
        return self.ab.neg(a)

    def act(self, s, a):
        return self.action[s][a]


def oracle_h1_order(module) -> int:
    """|H^1| by enumerating all value tables f: Gamma -> Q."""
    em = EnumeratedModule(module)
    g = em.group.order
    cocycles = []
    for table in product(em.elements, repeat=g):
        ok = True
        for s in range(g):
            for t in range(g):
                lhs = table[em.group.mul(s, t)]
                rhs = em.add(table[s], em.act(s, table[t]))
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            cocycles.append(table)
    coboundaries = set()
    for m in em.elements:
        table = tuple(em.add(em.act(s, m), em.neg(m)) for s in range(g))
        coboundaries.add(table)
    return len(cocycles) // len(coboundaries)


def oracle_h_neg2_order(module) -> int:
    """|H_1| by enumerating 1-cycles and closing the 2-boundary subgroup."""
    em = EnumeratedModule(module)
    grp = em.group
    g = grp.order

    def d1(chain):
        total = em.ab.zero()
        for s in range(g):
            total = em.add(total, em.add(em.act(grp.inv(s), chain[s]), em.neg(chain[s])))
        return total

    zero = em.ab.zero()
    cycles = [c for c in product(em.elements, repeat=g) if d1(c) == zero]

    # generators of the boundary subgroup: d2 of q (x) [s|t]
    gens = []
    for q in em.elements:
        if q == zero:
            continue
        for s in range(g):
            for t in range(g):
                chain = [zero] * g
                st = grp.mul(s, t)
                chain[t] = em.add(chain[t], em.act(grp.inv(s), q))
                chain[st] = em.add(chain[st], em.neg(q))
                chain[s] = em.add(chain[s], q)
                gens.append(tuple(chain))
    boundary = {tuple([zero] * g)}
    frontier = list(boundary)
    while frontier:
        new = []
        for b in frontier:
            for gen in gens:
                nxt = tuple(em.add(x, y) for x, y in zip(b, gen))
                if nxt not in boundary:
                    boundary.add(nxt)
                    new.append(nxt)
        frontier = new
    return len(cycles) // len(boundary)
