"""Standard root data, Galois twists, and worked example pairs.

Simply connected data use the simple coroots as the cocharacter basis, so
roots are the rows of the Cartan matrix; adjoint data use the fundamental
coweights, so roots are standard basis vectors and coroots are Cartan
columns.  With these bases the full-center inclusion matrix of a simply
connected datum is the Cartan matrix itself.
"""

from __future__ import annotations

from .groups import FiniteGroup
from .intmatrix import IntMatrix
from .modules import EquivariantMap, GaloisLattice
from .rootdata import (
    ReductivePair,
    RootDatum,
    generate_root_system,
    reflection_on_cochars,
)
from .tori import IsogenyPair


def cartan_matrix(family: str, rank: int) -> IntMatrix:
    """Generalized Cartan matrix A[i][j] = <alpha_i, alpha_j^vee>."""
    family = family.upper()
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2
    if family == "A":
        for i in range(rank - 1):
            a[i][i + 1] = a[i + 1][i] = -1
    elif family == "C":
        # C_n: alpha_n long; <alpha_{n-1}, alpha_n^vee> = -1, <alpha_n, alpha_{n-1}^vee> = -2
        if rank < 2:
            raise ValueError("C needs rank >= 2")
        for i in range(rank - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        a[rank - 1][rank - 2] = -2
    elif family == "D":
        if rank < 3:
            raise ValueError("D needs rank >= 3")
        # chain 0-1-...-(n-3), with nodes n-2 and n-1 attached to n-3
        for i in range(rank - 2):
            a[i][i + 1] = a[i + 1][i] = -1
        a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1
        a[rank - 2][rank - 1] = a[rank - 1][rank - 2] = 0
    else:
        raise ValueError(f"unsupported family {family}")
    return IntMatrix(a, cols=rank)


def simply_connected_datum(cartan: IntMatrix, lattice: GaloisLattice) -> RootDatum:
    """Simply connected datum on the coroot basis with the given action."""
    r = cartan.rows
    if lattice.rank != r:
        raise ValueError("lattice rank must match the Cartan matrix")
    simple_coroots = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    simple_roots = [cartan.row(i) for i in range(r)]
    roots, coroots, base = generate_root_system(simple_roots, simple_coroots)
    return RootDatum(lattice, roots, coroots, base)


def adjoint_datum(cartan: IntMatrix, lattice: GaloisLattice) -> RootDatum:
    """Adjoint datum on the coweight basis with the given action."""
    r = cartan.rows
    if lattice.rank != r:
        raise ValueError("lattice rank must match the Cartan matrix")
    simple_roots = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    simple_coroots = [cartan.column(i) for i in range(r)]
    roots, coroots, base = generate_root_system(simple_roots, simple_coroots)
    return RootDatum(lattice, roots, coroots, base)


def permutation_matrix(perm: list[int]) -> IntMatrix:
    n = len(perm)
    return IntMatrix([[1 if perm[j] == i else 0 for j in range(n)] for i in range(n)], cols=n)


def pair_with_trivial_center(datum: RootDatum) -> ReductivePair:
    """[1 -> G]: Ybar = Y."""
    incl = EquivariantMap(datum.cochar, datum.cochar, IntMatrix.identity(datum.rank))
    return ReductivePair(datum, IsogenyPair(incl))


def pair_with_full_center(datum: RootDatum, cartan: IntMatrix) -> ReductivePair:
    """[Z(G) -> G] for a simply connected datum: Ybar is the coweight lattice.

    On the coroot/coweight bases the inclusion matrix is the Cartan matrix;
    the Ybar action is transported (and must stay integral).
    """
    pair = IsogenyPair.from_y_action(datum.group, cartan, datum.cochar.action)
    return ReductivePair(datum, pair)


# ---------------------------------------------------------------------------
# Galois twists
# ---------------------------------------------------------------------------

def trivial_action(group: FiniteGroup, rank: int) -> list[IntMatrix]:
    return [IntMatrix.identity(rank)] * group.order


def diagram_action_c2(perm: list[int]) -> tuple[FiniteGroup, list[IntMatrix]]:
    """Order-2 diagram twist on the node basis (simple coroots or coweights)."""
    c2 = FiniteGroup.cyclic(2)
    P = permutation_matrix(perm)
    return c2, [IntMatrix.identity(len(perm)), P]


def diagram_action_deepened(perm: list[int], extra: int) -> tuple[FiniteGroup, list[IntMatrix]]:
    """Diagram twist over a larger field: C2 x C_extra acting through C2.

    The kernel acts trivially; the deeper level lets the finite-level rigid
    group fill the whole component-group dual.
    """
    c2 = FiniteGroup.cyclic(2)
    grp = FiniteGroup.direct_product(c2, FiniteGroup.cyclic(extra))
    P = permutation_matrix(perm)
    eye = IntMatrix.identity(len(perm))
    return grp, [P if g // extra else eye for g in range(grp.order)]


def minus_one_action(rank: int) -> tuple[FiniteGroup, list[IntMatrix]]:
    """The elliptic order-2 twist by -1 (longest element times diagram flip)."""
    c2 = FiniteGroup.cyclic(2)
    return c2, [IntMatrix.identity(rank), IntMatrix.identity(rank).scale(-1)]


def coxeter_action_a2() -> tuple[FiniteGroup, list[IntMatrix]]:
    """Order-3 elliptic twist of the A2 coroot lattice by a Coxeter element."""
    c3 = FiniteGroup.cyclic(3)
    a = cartan_matrix("A", 2)
    s1 = reflection_on_cochars(a.row(0), (1, 0))
    s2 = reflection_on_cochars(a.row(1), (0, 1))
    c = s1 * s2
    return c3, [IntMatrix.identity(2), c, c * c]


def triality_action_d4() -> tuple[FiniteGroup, list[IntMatrix]]:
    """Order-3 rotation of the three outer nodes of D4 (node 1 is central)."""
    c3 = FiniteGroup.cyclic(3)
    perm = [2, 1, 3, 0]  # 0 -> 2 -> 3 -> 0, fixing the central node 1
    P = permutation_matrix(perm)
    return c3, [IntMatrix.identity(4), P, P * P]


# ---------------------------------------------------------------------------
# The named catalogue
# ---------------------------------------------------------------------------

def _diagram_perm(family: str, rank: int) -> list[int] | None:
    if family == "A" and rank >= 2:
        return [rank - 1 - i for i in range(rank)]
    if family == "D" and rank == 4:
        return [2, 1, 0, 3]  # swap the two outer nodes 0 and 2
    return None


# Exponent of the fundamental group of the simply connected form: split
# levels must be at least this deep for the finite-level group to fill the
# component-group dual (the limit object); shallower levels only include.
CENTER_EXPONENT = {("A", 1): 2, ("A", 2): 3, ("A", 3): 4, ("C", 2): 2, ("D", 4): 2}


def catalogue_entries() -> list[dict]:
    """All (type, action, center) combinations used by the test battery.

    Each entry carries the reductive pair, whether the twisted torus is
    expected to be elliptic, and a human-readable name.
    """
    entries: list[dict] = []

    def add(name, family, rank, adjoint, group, action, center_full, elliptic=None):
        cartan = cartan_matrix(family, rank)
        lattice = GaloisLattice(group, rank, action)
        datum = (
            adjoint_datum(cartan, lattice) if adjoint else simply_connected_datum(cartan, lattice)
        )
        if center_full:
            if adjoint:
                raise ValueError("adjoint groups have trivial center")
            pair = pair_with_full_center(datum, cartan)
        else:
            pair = pair_with_trivial_center(datum)
        entries.append(
            {
                "name": name,
                "family": family,
                "rank": rank,
                "pair": pair,
                "elliptic": elliptic,
                "simply_connected": not adjoint,
            }
        )

    sc_types = [("A", 1, "sl2"), ("A", 2, "sl3"), ("A", 3, "sl4"), ("C", 2, "sp4"), ("D", 4, "spin8")]
    ad_types = [("A", 1, "pgl2"), ("A", 2, "pgl3")]

    for family, rank, name in sc_types:
        exp = CENTER_EXPONENT[(family, rank)]
        for center_full in (False, True):
            suffix = "_fullZ" if center_full else "_Z1"
            csplit = FiniteGroup.cyclic(max(2, exp))
            add(
                name + "_split" + suffix, family, rank, False, csplit,
                trivial_action(csplit, rank), center_full, elliptic=False,
            )
            g, act = minus_one_action(rank)
            add(name + "_elliptic" + suffix, family, rank, False, g, act, center_full, elliptic=True)
            perm = _diagram_perm(family, rank)
            if perm and perm != list(range(rank)):
                if center_full and family == "D":
                    # the quadratic level only sees half of the (Z/2)^2 dual
                    g, act = diagram_action_deepened(perm, exp)
                else:
                    g, act = diagram_action_c2(perm)
                add(name + "_outer" + suffix, family, rank, False, g, act, center_full)
        if family == "A" and rank == 2:
            g, act = coxeter_action_a2()
            add(name + "_coxeter_Z1", family, rank, False, g, act, False, elliptic=True)
            add(name + "_coxeter_fullZ", family, rank, False, g, act, True, elliptic=True)
        if family == "D" and rank == 4:
            g, act = triality_action_d4()
            add(name + "_triality_Z1", family, rank, False, g, act, False)
            add(name + "_triality_fullZ", family, rank, False, g, act, True)

    for family, rank, name in ad_types:
        exp = CENTER_EXPONENT[(family, rank)]
        csplit = FiniteGroup.cyclic(max(2, exp))
        add(name + "_split_Z1", family, rank, True, csplit, trivial_action(csplit, rank), False, elliptic=False)
        g, act = minus_one_action(rank)
        add(name + "_elliptic_Z1", family, rank, True, g, act, False, elliptic=True)
        perm = _diagram_perm(family, rank)
        if perm and perm != list(range(rank)):
            g, act = diagram_action_c2(perm)
            add(name + "_outer_Z1", family, rank, True, g, act, False)

    return entries


# ---------------------------------------------------------------------------
# Worked torus examples
# ---------------------------------------------------------------------------

def split_mu2_gm_pair() -> IsogenyPair:
    """[mu_2 -> Gm] split, quadratic Galois group acting trivially."""
    c2 = FiniteGroup.cyclic(2)
    eye = IntMatrix.identity(1)
    return IsogenyPair.from_matrices(c2, IntMatrix([[2]]), [eye, eye])


def norm_one_torus_pair() -> IsogenyPair:
    """[1 -> S] for the quadratic norm-one torus."""
    c2 = FiniteGroup.cyclic(2)
    return IsogenyPair.from_matrices(
        c2, IntMatrix.identity(1), [IntMatrix.identity(1), IntMatrix([[-1]])]
    )


def norm_one_in_sl2_pair() -> IsogenyPair:
    """[mu_2 -> S] for the norm-one torus inside SL2."""
    c2 = FiniteGroup.cyclic(2)
    return IsogenyPair.from_matrices(
        c2, IntMatrix([[2]]), [IntMatrix.identity(1), IntMatrix([[-1]])]
    )


def swap_torus_nested_pairs() -> tuple[IsogenyPair, IsogenyPair]:
    """A rank-2 swap torus with nested centers mu_2 inside mu_4.

    Y = Z^2 with the coordinate swap; Ybar adds (1/2, 1/2), Ybar' adds
    (1/4, 1/4).  Returned as (small, large).
    """
    c2 = FiniteGroup.cyclic(2)
    swap = IntMatrix([[0, 1], [1, 0]])
    y_action = [IntMatrix.identity(2), swap]
    small = IsogenyPair.from_y_action(c2, IntMatrix([[2, 0], [-1, 1]]), y_action)
    large = IsogenyPair.from_y_action(c2, IntMatrix([[4, 0], [-1, 1]]), y_action)
    return small, large
