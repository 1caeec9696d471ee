"""Finite levels of the band group: character modules, H^2, transitions.

A level is a pair (Gamma, n).  Its character module is the augmentation
kernel Z/n[Gamma]_0, presented as Z[Gamma]_0 / n.Z[Gamma]_0 on the basis
[g] - [1] for g != 1.  The degree-2 cohomology of the level is the dual of
the invariants of the character module, which is cyclic of order gcd(n,
|Gamma|) generated by (n/gcd) * sum of the basis vectors; the distinguished
class is -1 in the canonical cyclic coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .abelian import FinAbGroup, FinAbMap, SubLattice, subquotient, preimage_lattice
from .errors import (
    DivisibilityViolated,
    ExponentMismatch,
    FormulaMismatch,
    NotEquivariant,
)
from .groups import FiniteGroup, GroupHom
from .intmatrix import IntMatrix
from .modules import FiniteGaloisModule, GaloisLattice, _block_relations
from .tori import IsogenyPair, band_norm_kernel_group


def _aug_kernel_lattice(group: FiniteGroup) -> GaloisLattice:
    """Z[Gamma]_0 with basis [g]-[1] (g != 1) and left-translation action."""
    g = group.order
    rank = g - 1
    # basis index: element s (1..g-1) <-> coordinate s-1
    mats = []
    for s in range(g):
        cols = []
        for t in range(1, g):
            st = group.mul(s, t)
            col = [0] * rank
            if st != 0:
                col[st - 1] += 1
            # s.[1] = [s]: subtract f_s from every image since
            # s.([t]-[1]) = [st]-[s] = f_st - f_s
            if s != 0:
                col[s - 1] -= 1
            cols.append(col)
        mats.append(IntMatrix([[cols[j][i] for j in range(rank)] for i in range(rank)], cols=rank))
    return GaloisLattice(group, rank, mats)


class ULevel:
    """A finite level (Gamma, n) of the band group."""

    __slots__ = ("galois", "n", "char_module")

    def __init__(self, galois: FiniteGroup, n: int):
        if n < 1:
            raise ValueError("the modulus must be positive")
        lattice = _aug_kernel_lattice(galois)
        rank = lattice.rank
        relations = SubLattice.spanned_by(
            rank, IntMatrix.identity(rank).scale(n).entries
        )
        object.__setattr__(self, "galois", galois)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "char_module", FiniteGaloisModule(lattice, relations))

    def __setattr__(self, *a):
        raise AttributeError("ULevel is immutable")

    @property
    def gcd(self) -> int:
        return math.gcd(self.n, self.galois.order)

    def h0_generator_lift(self) -> tuple[int, ...]:
        """Lift of the canonical invariant generator: (n/gcd) * (1, ..., 1)."""
        c0 = self.n // self.gcd
        return (c0,) * self.char_module.rank

    def __repr__(self) -> str:
        return f"ULevel({self.galois.name}, n={self.n})"


def char_module(galois: FiniteGroup, n: int) -> ULevel:
    """The level with character module Z/n[Gamma]_0."""
    return ULevel(galois, n)


def hom_u_to_Z(level: ULevel, pair: IsogenyPair) -> FinAbGroup:
    """Homomorphisms from the level's band to Z, as (Ybar/Y)^N.

    Requires the level's modulus to kill Ybar/Y and the Galois groups to
    agree; under the standard identification lambda -> (x -> (n lambda)(x))
    the norm-kernel subgroup of the cokernel is the full group of
    F-homomorphisms at this level.
    """
    if level.galois != pair.group:
        raise ValueError("level and pair use different Galois groups")
    exponent = pair.cokernel.exponent
    if level.n % exponent:
        raise ExponentMismatch(
            f"modulus {level.n} is not a multiple of the cokernel exponent {exponent}"
        )
    return band_norm_kernel_group(pair)


def _h0_invariants_group(level: ULevel) -> FinAbGroup:
    """Invariants of the character module, with class_of on the ambient."""
    Q = level.char_module
    g, m = Q.group.order, Q.rank
    if m == 0:
        return FinAbGroup.trivial(0)
    eye = IntMatrix.identity(m)
    stacked: list[list[int]] = []
    for s in range(g):
        if s == Q.group.identity:
            continue
        stacked.extend((Q.ambient.action[s] - eye).to_lists())
    if not stacked:
        return Q.abelian_group()
    K0 = preimage_lattice(IntMatrix(stacked, cols=m), _block_relations(Q, g - 1))
    return subquotient(K0, Q.relations)


def h2_u_level(level: ULevel) -> FinAbGroup:
    """H^2 of the level: canonically cyclic of order gcd(n, |Gamma|).

    Computed as the dual of the invariants of the character module and checked
    against the closed form; a mismatch raises :class:`FormulaMismatch` since
    it can only indicate an implementation bug.
    """
    expected = level.gcd
    inv = _h0_invariants_group(level)
    # duality preserves invariant factors
    if inv.order != expected or (expected > 1 and inv.invariant_factors != (expected,)):
        raise FormulaMismatch(
            f"invariants of the character module are {inv.invariant_factors}, "
            f"expected cyclic of order {expected}"
        )
    if expected > 1:
        got = inv.class_of(level.h0_generator_lift())
        if inv.element_order(got) != expected:
            raise FormulaMismatch("canonical generator does not generate the invariants")
    return FinAbGroup.from_factors([expected])


def alpha_level(level: ULevel) -> tuple[int, ...]:
    """The distinguished class: -1 in the canonical cyclic coordinates."""
    d = level.gcd
    if d == 1:
        return ()
    return (d - 1,)


@dataclass(frozen=True)
class LevelTransition:
    """The induced map of character modules for (K/F, m) -> (E/F, n).

    The lattice matrix realizes [g] -> (m/n) * sum of the fiber over g on the
    augmentation-kernel bases; it is equivariant for the fine group acting on
    the coarse module through the quotient map.
    """

    fine: ULevel
    coarse: ULevel
    quotient: GroupHom
    matrix: IntMatrix  # coarse ambient -> fine ambient

    def apply(self, v) -> tuple[int, ...]:
        return self.matrix.apply(v)


def transition_char(fine: ULevel, coarse: ULevel, quotient: GroupHom) -> LevelTransition:
    """Build and validate the level-transition map on character modules."""
    if quotient.source != fine.galois or quotient.target != coarse.galois:
        raise ValueError("quotient map does not match the levels")
    quotient.require_surjective()
    if fine.n % coarse.n:
        raise DivisibilityViolated(
            f"coarse modulus {coarse.n} must divide fine modulus {fine.n}"
        )
    scale = fine.n // coarse.n
    gf, gc = fine.galois.order, coarse.galois.order
    rank_f, rank_c = gf - 1, gc - 1
    cols = []
    fiber_of_identity = quotient.fiber(0)
    for t in range(1, gc):
        col = [0] * rank_f
        for s in quotient.fiber(t):
            if s != 0:
                col[s - 1] += scale
        for s in fiber_of_identity:
            if s != 0:
                col[s - 1] -= scale
        cols.append(col)
    matrix = IntMatrix([[cols[j][i] for j in range(rank_c)] for i in range(rank_f)], cols=rank_c)
    # equivariance: fine group acts on the coarse module through the quotient
    amb_f, amb_c = fine.char_module.ambient, coarse.char_module.ambient
    for s in range(gf):
        if matrix * amb_c.action[quotient(s)] != amb_f.action[s] * matrix:
            raise NotEquivariant("transition matrix is not equivariant")
    # relations must map into relations: n_c * column lands in n_f Z^{rank_f}
    for t in range(rank_c):
        if any(x * coarse.n % fine.n for x in matrix.column(t)):
            raise FormulaMismatch("transition does not respect the moduli")
    return LevelTransition(fine, coarse, quotient, matrix)


def transition_h2(fine: ULevel, coarse: ULevel, quotient: GroupHom) -> FinAbMap:
    """The induced map on level H^2 groups, asserted to be reduction.

    The map is computed honestly: push the coarse canonical invariant through
    the character transition, express it in the fine canonical generator, and
    dualize.  The result must be the natural projection
    Z/gcd(n_f, |G_f|) -> Z/gcd(n_c, |G_c|).
    """
    t = transition_char(fine, coarse, quotient)
    h2_f = h2_u_level(fine)
    h2_c = h2_u_level(coarse)
    d_f, d_c = fine.gcd, coarse.gcd
    if d_c == 1:
        return FinAbMap.from_generator_images(h2_f, h2_c, [()] * len(h2_f.invariant_factors))
    inv_f = _h0_invariants_group(fine)
    pushed = inv_f.class_of(t.apply(coarse.h0_generator_lift()))
    gen_f = inv_f.class_of(fine.h0_generator_lift())
    # discrete log of the pushed class against the canonical fine generator
    k = next(
        (j for j in range(d_f) if inv_f.reduce([j * x for x in gen_f]) == pushed),
        None,
    )
    if k is None:
        raise FormulaMismatch("pushed generator is not a multiple of the fine generator")
    # dual of multiplication-by-k is multiplication by k*d_c/d_f on coordinates
    if (k * d_c) % d_f:
        raise FormulaMismatch("invariants map does not dualize integrally")
    mult = (k * d_c) // d_f
    if mult % d_c != 1 % d_c:
        raise FormulaMismatch(
            f"induced map is multiplication by {mult}, not the natural projection"
        )
    return FinAbMap.from_generator_images(h2_f, h2_c, [(mult,)])
