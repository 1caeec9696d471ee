"""Root data with Galois action, Weyl groups, and the reductive pairing.

A root datum carries dual character/cocharacter lattices X and Y with the
standard dot pairing, matched lists of roots (in X) and coroots (in Y), a
distinguished base, and a Galois action on Y; the action on X is the inverse
transpose.  For a pair [Z -> G] the cocharacter lattice of the central
quotient torus is an isogeny pair Y -> Ybar, and everything downstream is
integer linear algebra inside Ybar:

* rigid cohomology:   {v : Nv in Ysc} / (I.Y + Ysc)
* dual-center component group:  torsion of Ybar / (I.Y + Ysc)
* the pairing between the two by evaluating torsion characters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .abelian import (
    FinAbGroup,
    FinAbMap,
    QModZ,
    SubLattice,
    TorsionCharacter,
    dual_group_characters,
    lattice_sum,
    preimage_lattice,
    saturation,
    subquotient,
)
from .errors import CharacterNotPlus, NormNonzero, TooLarge
from .groups import FiniteGroup
from .intmatrix import (
    IntMatrix,
    Vector,
    kernel_basis_rows,
    lattice_contains,
    solve_matrix,
    solve_vector,
)
from .modules import (
    EquivariantMap,
    GaloisLattice,
    augmentation_sublattice,
    invariants_sublattice,
    norm_matrix,
)
from .tori import IsogenyPair, rigid_h1_torus

DEFAULT_WEYL_BOUND = 1152


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def reflection_on_cochars(root: Vector, coroot: Vector) -> IntMatrix:
    """s(v) = v - <root, v> coroot on the cocharacter side."""
    r = len(root)
    return IntMatrix(
        [[(1 if a == b else 0) - coroot[a] * root[b] for b in range(r)] for a in range(r)],
        cols=r,
    )


class RootDatum:
    """(X, R, Y, R^vee) with a Galois action on Y."""

    __slots__ = ("cochar", "roots", "coroots", "simple_indices", "_weyl_cache")

    def __init__(
        self,
        cochar: GaloisLattice,
        roots: Sequence[Sequence[int]],
        coroots: Sequence[Sequence[int]],
        simple_indices: Sequence[int],
    ):
        roots = tuple(tuple(int(x) for x in a) for a in roots)
        coroots = tuple(tuple(int(x) for x in a) for a in coroots)
        if len(roots) != len(coroots):
            raise ValueError("roots and coroots must be in bijection")
        r = cochar.rank
        for a, av in zip(roots, coroots):
            if len(a) != r or len(av) != r:
                raise ValueError("root vectors must match the lattice rank")
            if _dot(a, av) != 2:
                raise ValueError("a root must pair to 2 with its coroot")
        if len(set(roots)) != len(roots):
            raise ValueError("duplicate roots")
        simple_indices = tuple(int(i) for i in simple_indices)
        if any(i < 0 or i >= len(roots) for i in simple_indices):
            raise ValueError("simple indices out of range")
        object.__setattr__(self, "cochar", cochar)
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "coroots", coroots)
        object.__setattr__(self, "simple_indices", simple_indices)
        object.__setattr__(self, "_weyl_cache", {})
        self._validate()

    def __setattr__(self, *a):
        raise AttributeError("RootDatum is immutable")

    # -- validation -----------------------------------------------------------

    def _validate(self):
        pairs = {self.roots[i]: self.coroots[i] for i in range(len(self.roots))}
        # reflections permute the (root, coroot) pairs
        for i in range(len(self.roots)):
            a, av = self.roots[i], self.coroots[i]
            for j in range(len(self.roots)):
                b, bv = self.roots[j], self.coroots[j]
                rb = tuple(x - _dot(b, av) * y for x, y in zip(b, a))
                rbv = tuple(x - _dot(a, bv) * y for x, y in zip(bv, av))
                if pairs.get(rb) != rbv:
                    raise ValueError("reflections do not permute the root data")
        # the Galois action permutes the pairs compatibly
        for s in range(self.group.order):
            for i in range(len(self.roots)):
                ra = self.act_on_char(s, self.roots[i])
                rav = self.cochar.act(s, self.coroots[i])
                if pairs.get(ra) != rav:
                    raise ValueError("the Galois action does not permute the root data")

    @property
    def group(self) -> FiniteGroup:
        return self.cochar.group

    @property
    def rank(self) -> int:
        return self.cochar.rank

    def act_on_char(self, s: int, char: Sequence[int]) -> Vector:
        """The contragredient action on X: (s.chi)(y) = chi(s^{-1} y)."""
        A = self.cochar.action[self.group.inv(s)]
        # row vector times matrix
        return tuple(_dot(char, A.column(j)) for j in range(A.cols))

    def is_based(self) -> bool:
        """Whether the Galois action preserves the chosen base."""
        simple_set = {self.roots[i] for i in self.simple_indices}
        return all(
            self.act_on_char(s, a) in simple_set
            for s in range(self.group.order)
            for a in simple_set
        )

    def is_semisimple(self) -> bool:
        return len(coroot_sublattice(self).basis.entries) == self.rank

    def with_action(self, action: Sequence[IntMatrix]) -> "RootDatum":
        """The same datum with a different Galois action on Y."""
        return RootDatum(
            GaloisLattice(self.group, self.rank, action),
            self.roots,
            self.coroots,
            self.simple_indices,
        )

    def __repr__(self) -> str:
        return (
            f"RootDatum(rank {self.rank}, {len(self.roots)} roots, {self.group.name})"
        )


def generate_root_system(
    simple_roots: Sequence[Sequence[int]], simple_coroots: Sequence[Sequence[int]]
) -> tuple[list[Vector], list[Vector], list[int]]:
    """Close a base under simple reflections; returns (roots, coroots, base).

    Output pairs are sorted lexicographically by root for determinism; the
    returned indices locate the simple roots in the sorted list.
    """
    simple_roots = [tuple(int(x) for x in a) for a in simple_roots]
    simple_coroots = [tuple(int(x) for x in a) for a in simple_coroots]
    pairs = dict(zip(simple_roots, simple_coroots))
    frontier = list(pairs.items())
    while frontier:
        new = []
        for b, bv in frontier:
            for a, av in zip(simple_roots, simple_coroots):
                rb = tuple(x - _dot(b, av) * y for x, y in zip(b, a))
                rbv = tuple(x - _dot(a, bv) * y for x, y in zip(bv, av))
                if rb not in pairs:
                    pairs[rb] = rbv
                    new.append((rb, rbv))
        frontier = new
    ordered = sorted(pairs.items())
    roots = [p[0] for p in ordered]
    coroots = [p[1] for p in ordered]
    base = [roots.index(a) for a in simple_roots]
    return roots, coroots, base


def coroot_sublattice(rd: RootDatum) -> SubLattice:
    """The span Z R^vee inside the cocharacter lattice."""
    return SubLattice.spanned_by(rd.rank, rd.coroots)


def weyl_group(rd: RootDatum, max_order: int = DEFAULT_WEYL_BOUND) -> list[IntMatrix]:
    """The Weyl group as matrices on Y, generated by simple reflections.

    Deterministic breadth-first closure; raises :class:`TooLarge` past the
    order bound.
    """
    key = max_order
    if key in rd._weyl_cache:
        return rd._weyl_cache[key]
    gens = [
        reflection_on_cochars(rd.roots[i], rd.coroots[i]) for i in rd.simple_indices
    ]
    eye = IntMatrix.identity(rd.rank)
    seen = {eye.entries: eye}
    frontier = [eye]
    while frontier:
        new = []
        for w in frontier:
            for s in gens:
                ws = w * s
                if ws.entries not in seen:
                    if len(seen) + 1 > max_order:
                        raise TooLarge(f"Weyl group exceeds the bound {max_order}")
                    seen[ws.entries] = ws
                    new.append(ws)
        frontier = sorted(new, key=lambda m: m.entries)
    out = sorted(seen.values(), key=lambda m: m.entries)
    rd._weyl_cache[key] = out
    return out


def is_elliptic(rd: RootDatum) -> bool:
    """Whether the datum's torus (with its twisted action) is elliptic.

    True when the fixed sublattice of Y has the same rank as the fixed part
    of the central cocharacter lattice {v : <a, v> = 0 for every root}.
    """
    inv_rank = invariants_sublattice(rd.cochar).rank
    eye = IntMatrix.identity(rd.rank)
    stacked = [list(a) for a in rd.roots]
    for s in range(rd.group.order):
        if s != rd.group.identity:
            stacked.extend((rd.cochar.action[s] - eye).to_lists())
    if not stacked:
        return True  # a torus with trivial action is its own connected center
    central_inv_rank = len(kernel_basis_rows(IntMatrix(stacked, cols=rd.rank)))
    return inv_rank == central_inv_rank


def dual_root_datum(rd: RootDatum) -> RootDatum:
    """Swap characters with cocharacters and roots with coroots."""
    grp = rd.group
    action = [rd.cochar.action[grp.inv(s)].transpose() for s in range(grp.order)]
    dual_lattice = GaloisLattice(grp, rd.rank, action)
    return RootDatum(dual_lattice, rd.coroots, rd.roots, rd.simple_indices)


# ---------------------------------------------------------------------------
# Reductive pairs
# ---------------------------------------------------------------------------

class ReductivePair:
    """A root datum together with the central isogeny pair [Z -> G]."""

    __slots__ = ("datum", "center", "_cache")

    def __init__(self, datum: RootDatum, center: IsogenyPair):
        if center.y != datum.cochar:
            raise ValueError("the pair's Y must be the datum's cocharacter lattice")
        object.__setattr__(self, "datum", datum)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "_cache", {})
        # every root must take integer values on Ybar
        for a in datum.roots:
            if self.root_on_ybar(a) is None:
                raise ValueError("a root takes non-integral values on Ybar (Z is not central)")

    def __setattr__(self, *a):
        raise AttributeError("ReductivePair is immutable")

    @property
    def group(self) -> FiniteGroup:
        return self.datum.group

    @property
    def ybar_rank(self) -> int:
        return self.center.ybar.rank

    def root_on_ybar(self, root: Sequence[int]):
        """The root as an integral character of Ybar, or None."""
        # find x with x . J = root, i.e. J^T x = root
        return solve_vector(self.center.inclusion.matrix.transpose(), root)

    def coroot_lattice_in_ybar(self) -> SubLattice:
        cache = self._cache
        if "ysc" not in cache:
            rows = [self.center.inclusion(cv) for cv in self.datum.coroots]
            cache["ysc"] = SubLattice.spanned_by(self.ybar_rank, rows)
        return cache["ysc"]

    def denominator_lattice(self) -> SubLattice:
        """I.Y + Ysc inside Ybar."""
        cache = self._cache
        if "den" not in cache:
            cache["den"] = lattice_sum(self.center.iy_in_ybar, self.coroot_lattice_in_ybar())
        return cache["den"]

    def numerator_lattice(self) -> SubLattice:
        """{v in Ybar : Nv in Ysc}."""
        cache = self._cache
        if "num" not in cache:
            cache["num"] = preimage_lattice(
                norm_matrix(self.center.ybar), self.coroot_lattice_in_ybar()
            )
        return cache["num"]

    def __repr__(self) -> str:
        return f"ReductivePair({self.datum!r}, index {self.center.index})"


def rigid_h1_reductive(pair: ReductivePair) -> FinAbGroup:
    """ker(N on Ybar/Ysc) modulo the image of I.(Y/Ysc).

    class_of accepts representatives in the numerator lattice of Ybar.
    """
    cache = pair._cache
    if "rigid" not in cache:
        cache["rigid"] = subquotient(pair.numerator_lattice(), pair.denominator_lattice())
    return cache["rigid"]


def component_group_dual_center(pair: ReductivePair) -> FinAbGroup:
    """The character group of pi0 of the fixed-center cover.

    Realized as the torsion subgroup of Ybar/(I.Y + Ysc); its Q/Z-dual is the
    component group itself.
    """
    cache = pair._cache
    if "pi0" not in cache:
        den = pair.denominator_lattice()
        cache["pi0"] = subquotient(saturation(den), den)
    return cache["pi0"]


def validate_plus_character(pair: ReductivePair, chi: TorsionCharacter) -> None:
    """Require chi to vanish on I.Y and on Ysc (inside Ybar)."""
    if chi.ambient_rank != pair.ybar_rank:
        raise ValueError("character lives on the wrong lattice")
    if not chi.vanishes_on(pair.center.iy_in_ybar.basis.entries):
        raise CharacterNotPlus("character does not vanish on I.Y")
    if not chi.vanishes_on(pair.coroot_lattice_in_ybar().basis.entries):
        raise CharacterNotPlus("character does not vanish on the coroot lattice")


def tn_pairing(pair: ReductivePair, rep: Sequence[int], chi: TorsionCharacter) -> QModZ:
    """The duality pairing: evaluate a component-group character on a class.

    ``rep`` is a numerator-lattice representative of a rigid class; ``chi``
    must kill both I.Y and Ysc, which makes the value representative-free.
    """
    validate_plus_character(pair, chi)
    if not pair.numerator_lattice().contains(rep):
        raise NormNonzero("representative is not in the norm-kernel lattice")
    return chi(rep)


@dataclass(frozen=True)
class PairingReport:
    rigid_factors: tuple[int, ...]
    pi0_dual_factors: tuple[int, ...]
    table: tuple[tuple[QModZ, ...], ...]  # rows: rigid generators; cols: characters
    injective: bool
    orders_equal: bool

    @property
    def perfect(self) -> bool:
        return self.injective and self.orders_equal

    def as_dict(self) -> dict:
        return {
            "rigid_factors": list(self.rigid_factors),
            "component_dual_factors": list(self.pi0_dual_factors),
            "pairing_table": [[str(q) for q in row] for row in self.table],
            "injective": self.injective,
            "orders_equal": self.orders_equal,
            "perfect": self.perfect,
        }


def pairing_perfectness(pair: ReductivePair) -> PairingReport:
    """Check that evaluation identifies the rigid group with the pi0-dual.

    Builds the full pairing table between rigid generators and the component
    group's characters, then tests that the induced map into the double dual
    is injective with equal orders.
    """
    rigid = rigid_h1_reductive(pair)
    tor = component_group_dual_center(pair)
    chars = dual_group_characters(tor)
    table = tuple(
        tuple(chi(lift) for chi in chars) for lift in rigid.generator_lifts
    )
    # the induced map rigid -> Hom(pi0, Q/Z) = tor sends a class to the class
    # of its representative in the torsion subquotient
    induced = FinAbMap.from_generator_images(
        rigid, tor, [tor.class_of(lift) for lift in rigid.generator_lifts]
    )
    return PairingReport(
        rigid_factors=rigid.invariant_factors,
        pi0_dual_factors=tor.invariant_factors,
        table=table,
        injective=induced.is_injective(),
        orders_equal=rigid.order == tor.order,
    )


@dataclass(frozen=True)
class WeylTrivialityReport:
    weyl_order: int
    failures: tuple[tuple[int, int], ...]  # (weyl element index, basis index)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "weyl_order": self.weyl_order,
            "failures": [list(f) for f in self.failures],
            "passed": self.passed,
        }


def weyl_quotient_triviality(pair: ReductivePair, max_order: int = DEFAULT_WEYL_BOUND) -> WeylTrivialityReport:
    """Check w.v - v in Z R^vee for all Weyl elements and Ybar basis vectors.

    This is the lattice content of the independence of the transport maps
    from the chosen conjugator.
    """
    W = weyl_group(pair.datum, max_order)
    J = pair.center.inclusion.matrix
    ysc = pair.coroot_lattice_in_ybar().hermite_rows()
    failures = []
    for wi, w in enumerate(W):
        # transport w to Ybar: wbar = J w J^{-1}, solved as J^T wbar^T = w^T J^T
        wbar_t = solve_matrix(J.transpose(), w.transpose() * J.transpose())
        if wbar_t is None:
            raise ValueError("Weyl element does not preserve Ybar")
        wbar = wbar_t.transpose()
        for b in range(pair.ybar_rank):
            v = tuple(1 if i == b else 0 for i in range(pair.ybar_rank))
            diff = tuple(x - y for x, y in zip(wbar.apply(v), v))
            if not lattice_contains(ysc, diff):
                failures.append((wi, b))
    return WeylTrivialityReport(weyl_order=len(W), failures=tuple(failures))


def torus_to_reductive_map(pair: ReductivePair) -> FinAbMap:
    """The quotient map Ybar^N/IY -> rigid cohomology of [Z -> G]."""
    torus_group = rigid_h1_torus(pair.center)
    red_group = rigid_h1_reductive(pair)
    images = [red_group.class_of(lift) for lift in torus_group.generator_lifts]
    return FinAbMap.from_generator_images(torus_group, red_group, images)
