from fractions import Fraction

import pytest

from rigidcoh import (
    FiniteGroup,
    GaloisLattice,
    IntMatrix,
    QModZ,
    component_group_dual_center,
    coroot_sublattice,
    dual_group_characters,
    dual_root_datum,
    is_elliptic,
    pairing_perfectness,
    rigid_h1_reductive,
    rigid_h1_torus,
    tate_h0,
    tn_pairing,
    torus_to_reductive_map,
    weyl_group,
    weyl_quotient_triviality,
)
from rigidcoh.catalog import (
    adjoint_datum,
    cartan_matrix,
    catalogue_entries,
    coxeter_action_a2,
    minus_one_action,
    pair_with_full_center,
    pair_with_trivial_center,
    simply_connected_datum,
)
from rigidcoh.errors import CharacterNotPlus, NormNonzero, TooLarge
from rigidcoh.rootdata import ReductivePair, RootDatum

TRIV = FiniteGroup.trivial()
ENTRIES = catalogue_entries()
BY_NAME = {e["name"]: e for e in ENTRIES}


def split_sc(fam, rank):
    return simply_connected_datum(
        cartan_matrix(fam, rank), GaloisLattice.with_trivial_action(TRIV, rank)
    )


def test_weyl_group_orders():
    # classical orders: A1 -> 2, A2 -> 6, A3 -> 24, C2 -> 8, D4 -> 192
    assert len(weyl_group(split_sc("A", 1))) == 2
    assert len(weyl_group(split_sc("A", 2))) == 6
    assert len(weyl_group(split_sc("A", 3))) == 24
    assert len(weyl_group(split_sc("C", 2))) == 8
    assert len(weyl_group(split_sc("D", 4))) == 192
    with pytest.raises(TooLarge):
        weyl_group(split_sc("D", 4), max_order=100)


def test_root_counts():
    assert len(split_sc("A", 2).roots) == 6
    assert len(split_sc("A", 3).roots) == 12
    assert len(split_sc("C", 2).roots) == 8
    assert len(split_sc("D", 4).roots) == 24


def test_coroot_sublattice():
    assert coroot_sublattice(split_sc("A", 1)).hermite_rows() == [(1,)]
    pgl2 = adjoint_datum(cartan_matrix("A", 1), GaloisLattice.with_trivial_action(TRIV, 1))
    assert coroot_sublattice(pgl2).hermite_rows() == [(2,)]
    torus = RootDatum(GaloisLattice.with_trivial_action(TRIV, 2), [], [], [])
    assert coroot_sublattice(torus).rank == 0


def test_dual_root_datum():
    sl2 = split_sc("A", 1)
    dual = dual_root_datum(sl2)
    assert sorted(dual.roots) == [(-1,), (1,)]
    assert sorted(dual.coroots) == [(-2,), (2,)]
    dd = dual_root_datum(dual)
    assert sorted(dd.roots) == sorted(sl2.roots)
    assert sorted(dd.coroots) == sorted(sl2.coroots)
    # duality transports the action contragrediently
    g, act = minus_one_action(2)
    sl3 = simply_connected_datum(cartan_matrix("A", 2), GaloisLattice(g, 2, act))
    d3 = dual_root_datum(sl3)
    assert d3.cochar.action[1] == IntMatrix.identity(2).scale(-1)


def test_is_elliptic_with_rank_oracle():
    # oracle: fixed-space ranks via exact rational elimination
    def rank_oracle(rows, n):
        m = [[Fraction(x) for x in row] for row in rows]
        rank = 0
        for c in range(n):
            piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            inv = 1 / m[rank][c]
            m[rank] = [x * inv for x in m[rank]]
            for i in range(len(m)):
                if i != rank and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
            rank += 1
        return rank

    for e in ENTRIES:
        rd = e["pair"].datum
        n = rd.rank
        eye = IntMatrix.identity(n)
        act_rows = []
        for s in range(rd.group.order):
            act_rows.extend((rd.cochar.action[s] - eye).entries)
        fixed_rank = n - rank_oracle(act_rows, n)
        central_rows = act_rows + [list(a) for a in rd.roots]
        central_fixed = n - rank_oracle(central_rows, n)
        assert is_elliptic(rd) == (fixed_rank == central_fixed), e["name"]
        if e["elliptic"] is not None:
            assert is_elliptic(rd) == e["elliptic"], e["name"]


def test_elliptic_vanishing_simply_connected():
    for e in ENTRIES:
        if e["simply_connected"] and is_elliptic(e["pair"].datum):
            assert tate_h0(e["pair"].datum.cochar).is_trivial(), e["name"]


def test_rigid_h1_reductive_examples():
    # [mu2 -> SL2] split quadratic: Z/2
    assert rigid_h1_reductive(BY_NAME["sl2_split_fullZ"]["pair"]).invariant_factors == (2,)
    # [1 -> G] split simply connected: trivial
    assert rigid_h1_reductive(BY_NAME["sl2_split_Z1"]["pair"]).is_trivial()
    assert rigid_h1_reductive(BY_NAME["sp4_split_Z1"]["pair"]).is_trivial()
    # trivial Galois group: trivial
    sl2 = split_sc("A", 1)
    pr = pair_with_full_center(sl2, cartan_matrix("A", 1))
    assert rigid_h1_reductive(pr).is_trivial()


def test_component_group_examples():
    assert component_group_dual_center(BY_NAME["sl2_split_fullZ"]["pair"]).invariant_factors == (2,)
    # [1 -> PGL2] with trivial Galois group: torsion of Y/(0 + 2Z) = Z/2
    pgl2 = adjoint_datum(cartan_matrix("A", 1), GaloisLattice.with_trivial_action(TRIV, 1))
    pr = pair_with_trivial_center(pgl2)
    assert component_group_dual_center(pr).invariant_factors == (2,)
    assert pairing_perfectness(pr).perfect is False  # norm is 1: rigid side is trivial
    # [1 -> SL2] split: trivial on both sides
    assert component_group_dual_center(BY_NAME["sl2_split_Z1"]["pair"]).is_trivial()


def test_tn_pairing_sl2_quadratic():
    pr = BY_NAME["sl2_split_fullZ"]["pair"]
    rigid = rigid_h1_reductive(pr)
    tor = component_group_dual_center(pr)
    chi = dual_group_characters(tor)[0]
    gen = rigid.generator_lifts[0]
    assert tn_pairing(pr, gen, chi) == QModZ(1, 2)
    assert tn_pairing(pr, gen, chi.scale(2)).is_zero()
    zero_rep = tuple(0 for _ in gen)
    assert tn_pairing(pr, zero_rep, chi).is_zero()
    # representative independence: shift by each denominator generator
    for row in pr.denominator_lattice().basis.entries:
        shifted = tuple(a + b for a, b in zip(gen, row))
        assert tn_pairing(pr, shifted, chi) == QModZ(1, 2)
    with pytest.raises(CharacterNotPlus):
        from rigidcoh.abelian import TorsionCharacter

        tn_pairing(pr, gen, TorsionCharacter([QModZ(1, 3)]))
    # a representative outside the numerator lattice is rejected: adjoint A2
    # at a quadratic level has numerator = coroot lattice (2 is a unit mod 3)
    c2 = FiniteGroup.cyclic(2)
    pgl3 = adjoint_datum(cartan_matrix("A", 2), GaloisLattice.with_trivial_action(c2, 2))
    pr3 = pair_with_trivial_center(pgl3)
    assert not pr3.numerator_lattice().contains((1, 0))
    with pytest.raises(NormNonzero):
        from rigidcoh.abelian import TorsionCharacter as TC

        tn_pairing(pr3, (1, 0), TC.zero(2))


def test_pairing_perfectness_catalogue():
    for e in ENTRIES:
        report = pairing_perfectness(e["pair"])
        assert report.perfect, (e["name"], report.rigid_factors, report.pi0_dual_factors)


def test_weyl_quotient_triviality_catalogue():
    for e in ENTRIES:
        report = weyl_quotient_triviality(e["pair"])
        assert report.passed, e["name"]
    # a torus pair passes vacuously (empty Weyl group)
    torus = RootDatum(GaloisLattice.with_trivial_action(TRIV, 1), [], [], [])
    pr = pair_with_trivial_center(torus)
    rep = weyl_quotient_triviality(pr)
    assert rep.passed and rep.weyl_order == 1


def test_sl2_weyl_quotient_hand_value():
    # s_alpha(half generator) - itself = -alpha^vee lies in the coroot lattice
    pr = BY_NAME["sl2_split_fullZ"]["pair"]
    assert weyl_quotient_triviality(pr).passed


def test_rigid_reductive_matches_torus_for_tori():
    # with no roots the reductive computation degenerates to the torus one
    c2 = FiniteGroup.cyclic(2)
    sign = GaloisLattice(c2, 1, [IntMatrix.identity(1), IntMatrix([[-1]])])
    torus_datum = RootDatum(sign, [], [], [])
    from rigidcoh import EquivariantMap, IsogenyPair

    pair = IsogenyPair(EquivariantMap(sign, sign, IntMatrix([[2]])))
    pr = ReductivePair(torus_datum, pair)
    a = rigid_h1_reductive(pr)
    b = rigid_h1_torus(pair)
    assert a.invariant_factors == b.invariant_factors
    for lift in b.generator_lifts:
        assert a.class_of(lift) == b.class_of(lift)


def test_surjectivity_shadow_elliptic():
    for e in ENTRIES:
        if e["elliptic"]:
            assert torus_to_reductive_map(e["pair"]).is_surjective(), e["name"]


def test_coxeter_twist_is_weyl_valued():
    grp, act = coxeter_action_a2()
    W = weyl_group(split_sc("A", 2))
    assert act[1] in W and act[2] in W


def test_root_datum_validation():
    lat = GaloisLattice.with_trivial_action(TRIV, 1)
    with pytest.raises(ValueError):
        RootDatum(lat, [(1,)], [(1,)], [0])  # pairing 1, not 2
    with pytest.raises(ValueError):
        RootDatum(lat, [(2,)], [(1,)], [0])  # negative root missing
    c2 = FiniteGroup.cyclic(2)
    sign = GaloisLattice(c2, 1, [IntMatrix.identity(1), IntMatrix([[-1]])])
    # the sign action permutes the SL2 roots, so this is accepted
    RootDatum(sign, [(2,), (-2,)], [(1,), (-1,)], [0])
    # but an action that moves coroots off the coroot set is rejected
    shear = GaloisLattice(c2, 2, [IntMatrix.identity(2), IntMatrix([[1, 1], [0, -1]])])
    with pytest.raises(ValueError):
        RootDatum(shear, [(2, 0), (-2, 0)], [(1, 0), (-1, 0)], [0])


def test_reductive_pair_requires_central_z():
    # an index-2 enlargement in a root direction makes a root half-integral
    c2 = FiniteGroup.cyclic(2)
    sl2 = simply_connected_datum(
        cartan_matrix("A", 1), GaloisLattice.with_trivial_action(c2, 1)
    )
    from rigidcoh import EquivariantMap, IsogenyPair

    bad = IsogenyPair(
        EquivariantMap(sl2.cochar, GaloisLattice.with_trivial_action(c2, 1), IntMatrix([[3]]))
    )
    with pytest.raises(ValueError):
        ReductivePair(sl2, bad)
