import pytest

from rigidcoh.errors import NotSurjective
from rigidcoh.groups import (
    FiniteGroup,
    GroupHom,
    cyclic_reduction,
    sign_hom,
    small_group_catalogue,
)


def test_catalogue_has_all_fourteen_types():
    cat = small_group_catalogue(8)
    assert len(cat) == 14
    by_order = {}
    for name, g in cat:
        by_order.setdefault(g.order, []).append(name)
    assert {n: len(v) for n, v in by_order.items()} == {
        1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5,
    }
    # distinguish isomorphism types by element-order statistics
    seen = set()
    for name, g in cat:
        key = (g.order, tuple(sorted(g.element_order(a) for a in g.elements())), g.is_abelian())
        assert key not in seen, name
        seen.add(key)


def test_generators_generate():
    for name, g in small_group_catalogue(8):
        gens = g.generators()
        assert len(g._closure(gens)) == g.order


def test_quaternion_structure():
    q8 = FiniteGroup.quaternion8()
    assert sorted(q8.element_order(a) for a in q8.elements()) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert not q8.is_abelian()
    # -1 is central
    minus1 = next(a for a in q8.elements() if a and q8.element_order(a) == 2)
    assert all(q8.mul(minus1, x) == q8.mul(x, minus1) for x in q8.elements())


def test_dihedral_and_symmetric():
    s3 = FiniteGroup.dihedral(3)
    assert sorted(s3.element_order(a) for a in s3.elements()) == [1, 2, 2, 2, 3, 3]
    d4 = FiniteGroup.dihedral(4)
    assert sorted(d4.element_order(a) for a in d4.elements()) == [1, 2, 2, 2, 2, 2, 4, 4]


def test_invalid_tables_rejected():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [0, 1]])  # not a Latin square
    with pytest.raises(ValueError):
        FiniteGroup([[1, 0], [0, 1]])  # identity not first


def test_homs():
    s3 = FiniteGroup.dihedral(3)
    h = sign_hom(s3)
    assert h.is_surjective()
    assert sorted(h.fiber(0)) == [0, 2, 4]
    r = cyclic_reduction(6, 3)
    assert r.is_surjective() and r.fiber(0) == [0, 3]
    trivial_to_c2 = GroupHom(FiniteGroup.trivial(), FiniteGroup.cyclic(2), [0])
    with pytest.raises(NotSurjective):
        trivial_to_c2.require_surjective()
    with pytest.raises(ValueError):
        GroupHom(FiniteGroup.cyclic(4), FiniteGroup.cyclic(2), [0, 1, 1, 0])
