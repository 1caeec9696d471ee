import math

import pytest

from rigidcoh import (
    FiniteGroup,
    GroupHom,
    IntMatrix,
    IsogenyPair,
    alpha_level,
    char_module,
    cyclic_reduction,
    h2_u_level,
    hom_u_to_Z,
    norm_one_in_sl2_pair,
    sign_hom,
    small_group_catalogue,
    split_mu2_gm_pair,
    transition_char,
    transition_h2,
)
from rigidcoh.bands import _h0_invariants_group
from rigidcoh.errors import DivisibilityViolated, ExponentMismatch, NotSurjective

C2 = FiniteGroup.cyclic(2)
C4 = FiniteGroup.cyclic(4)


def test_char_module_order():
    for name, grp in small_group_catalogue(6):
        for n in range(1, 7):
            level = char_module(grp, n)
            assert level.char_module.order == n ** (grp.order - 1), (name, n)


def test_char_module_examples():
    # C2, n = 2: the augmentation kernel has order 2 and the swap fixes it
    level = char_module(C2, 2)
    assert level.char_module.order == 2
    from rigidcoh.modules import finite_invariants

    assert finite_invariants(level.char_module).order == 2
    assert char_module(FiniteGroup.trivial(), 7).char_module.order == 1
    assert char_module(FiniteGroup.cyclic(3), 3).char_module.order == 9


def test_h2_formula_all_small_groups():
    # closed form: cyclic of order gcd(n, |Gamma|), computed two ways inside
    for name, grp in small_group_catalogue(8):
        for n in range(1, 13):
            level = char_module(grp, n)
            g = h2_u_level(level)
            d = math.gcd(n, grp.order)
            assert g.order == d, (name, n)
            if d > 1:
                assert g.invariant_factors == (d,)


def test_h2_paper_instances():
    assert h2_u_level(char_module(C2, 2)).invariant_factors == (2,)
    assert h2_u_level(char_module(C2, 3)).is_trivial()
    s3 = FiniteGroup.dihedral(3)
    assert h2_u_level(char_module(s3, 4)).invariant_factors == (2,)


def test_h0_invariants_structure():
    # the invariants are generated by (n/gcd) * (sum of basis vectors)
    for grp in (C2, C4, FiniteGroup.dihedral(3)):
        for n in (2, 3, 4, 6):
            level = char_module(grp, n)
            inv = _h0_invariants_group(level)
            d = level.gcd
            assert inv.order == d
            if d > 1:
                got = inv.class_of(level.h0_generator_lift())
                assert inv.element_order(got) == d


def test_alpha_level():
    assert alpha_level(char_module(C2, 2)) == (1,)
    assert alpha_level(char_module(C2, 3)) == ()
    assert alpha_level(char_module(C4, 4)) == (3,)  # order 4


def test_hom_u_to_Z():
    pair = split_mu2_gm_pair()
    assert hom_u_to_Z(char_module(C2, 2), pair).invariant_factors == (2,)
    assert hom_u_to_Z(char_module(C2, 4), pair).invariant_factors == (2,)
    z1 = IsogenyPair.from_matrices(C2, IntMatrix.identity(1), [IntMatrix.identity(1)] * 2)
    assert hom_u_to_Z(char_module(C2, 2), z1).is_trivial()
    assert hom_u_to_Z(char_module(C2, 2), norm_one_in_sl2_pair()).invariant_factors == (2,)
    with pytest.raises(ExponentMismatch):
        hom_u_to_Z(char_module(C2, 3), pair)
    with pytest.raises(ValueError):
        hom_u_to_Z(char_module(C4, 2), pair)


def test_transition_char():
    fine = char_module(C4, 4)
    coarse = char_module(C2, 2)
    t = transition_char(fine, coarse, cyclic_reduction(4, 2))
    # the map multiplies by m/n = 2 and sums over fibers
    v = t.apply((1,))
    assert sum(abs(x) for x in v) == 6 and all(x % 2 == 0 for x in v)
    # identity transition
    ident = GroupHom(C2, C2, [0, 1])
    t2 = transition_char(char_module(C2, 2), char_module(C2, 2), ident)
    assert t2.matrix == IntMatrix.identity(1)
    with pytest.raises(DivisibilityViolated):
        transition_char(char_module(C4, 2), char_module(C2, 4), cyclic_reduction(4, 2))
    with pytest.raises(NotSurjective):
        transition_char(
            char_module(C4, 4), char_module(C4, 4), GroupHom(C4, C4, [0, 2, 0, 2])
        )


def test_transition_h2_is_reduction():
    m = transition_h2(char_module(C4, 4), char_module(C2, 2), cyclic_reduction(4, 2))
    assert m.source.invariant_factors == (4,)
    assert m.target.invariant_factors == (2,)
    assert m.apply((3,)) == (1,)  # reduction mod 2
    # equal levels: identity
    ident = GroupHom(C2, C2, [0, 1])
    m2 = transition_h2(char_module(C2, 2), char_module(C2, 2), ident)
    assert m2.apply((1,)) == (1,)
    # coarse gcd 1: zero map
    m3 = transition_h2(char_module(C4, 12), char_module(C2, 3), cyclic_reduction(4, 2))
    assert m3.target.is_trivial()
    # through a noncyclic group: S3 (n=6) -> C2 (n=2)
    s3 = FiniteGroup.dihedral(3)
    m4 = transition_h2(char_module(s3, 6), char_module(C2, 2), sign_hom(s3))
    assert m4.source.invariant_factors == (6,) and m4.apply((5,)) == (1,)


def test_hom_u_to_Z_functoriality():
    # contravariant in the level: refining n leaves the realized group (and
    # the classes of fixed representatives) unchanged
    pair = norm_one_in_sl2_pair()
    g2 = hom_u_to_Z(char_module(C2, 2), pair)
    g4 = hom_u_to_Z(char_module(C2, 4), pair)
    assert g2.invariant_factors == g4.invariant_factors
    assert g2.class_of((1,)) == g4.class_of((1,))
    # covariant in the pair: a morphism of pairs induces a homomorphism on
    # the realized groups compatible with class formation
    from rigidcoh import PairMorphism
    from rigidcoh.tori import band_norm_kernel_group

    double = PairMorphism(pair, pair, IntMatrix([[2]]), IntMatrix([[2]]))
    src = band_norm_kernel_group(pair)
    for coords in src.elements():
        lift = src.lift(coords)
        pushed = src.class_of(double(lift))
        doubled = src.class_of(tuple(2 * x for x in lift))
        assert pushed == doubled


def test_alpha_coherence_under_transitions():
    # composable tower C8 -> C4 -> C2 with n = 8 -> 4 -> 2
    c8 = FiniteGroup.cyclic(8)
    l8, l4, l2 = char_module(c8, 8), char_module(C4, 4), char_module(C2, 2)
    t84 = transition_h2(l8, l4, cyclic_reduction(8, 4))
    t42 = transition_h2(l4, l2, cyclic_reduction(4, 2))
    t82 = transition_h2(l8, l2, cyclic_reduction(8, 2))
    a8, a4, a2 = alpha_level(l8), alpha_level(l4), alpha_level(l2)
    assert t84.apply(a8) == a4
    assert t42.apply(a4) == a2
    assert t82.apply(a8) == a2
    assert t42.compose(t84).apply(a8) == a2
    # mixed moduli: (C4, n=8)? n must have gcd computed consistently
    l4n8 = char_module(C4, 8)
    t = transition_h2(l4n8, l2, cyclic_reduction(4, 2))
    assert t.apply(alpha_level(l4n8)) == alpha_level(l2)
