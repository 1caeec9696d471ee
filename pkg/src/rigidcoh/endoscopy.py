"""Endoscopic subsystems from torsion parameters and the transfer pairing.

The parameter s is a torsion character on the cocharacter lattice Y (the
lattice shadow of a semisimple dual-group element); its refinement s_dot is a
torsion character on Ybar restricting to s.  The cohomological factor of the
absolute transfer factor is the negative of the evaluation of s_dot on a
rigid-class representative: the value lives in Q/Z additively, and consumers
map to the unit circle via exp(2 pi i .) if they need the multiplicative
convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .abelian import QModZ, SubLattice, TorsionCharacter, extend_character
from .errors import CharacterNotPlus, NotEquivariant, NotGaloisStable
from .intmatrix import Vector, solve_matrix
from .rootdata import ReductivePair, RootDatum
from .tori import IsogenyPair, RigidClass


def endoscopic_subsystem(pair: ReductivePair, s: TorsionCharacter) -> RootDatum:
    """The root datum with coroots annihilated by the parameter.

    Keeps the full lattices and the inherited Galois action; the subsystem's
    base is recomputed (indecomposable positive roots).  Raises
    :class:`NotGaloisStable` when the selected coroots are not permuted by the
    action.
    """
    rd = pair.datum
    if s.ambient_rank != rd.rank:
        raise ValueError("parameter lives on the wrong lattice")
    keep = [i for i in range(len(rd.roots)) if s(rd.coroots[i]).is_zero()]
    keep_roots = [rd.roots[i] for i in keep]
    keep_coroots = [rd.coroots[i] for i in keep]
    keep_set = set(keep_roots)
    for g in range(rd.group.order):
        for a in keep_roots:
            if rd.act_on_char(g, a) not in keep_set:
                raise NotGaloisStable("selected coroots are not preserved by the action")
    simple = _base_of_subsystem(rd, keep_roots)
    keep_index = {a: i for i, a in enumerate(keep_roots)}
    return RootDatum(rd.cochar, keep_roots, keep_coroots, [keep_index[a] for a in simple])


def _base_of_subsystem(rd: RootDatum, sub_roots: Sequence[Vector]) -> list[Vector]:
    """Indecomposable elements of the positive part of a closed subsystem."""
    ambient_positive = _positive_roots(rd)
    pos = [a for a in sub_roots if a in ambient_positive]
    pos_set = set(pos)
    simple = []
    for a in pos:
        decomposable = any(
            tuple(x - y for x, y in zip(a, b)) in pos_set for b in pos if b != a
        )
        if not decomposable:
            simple.append(a)
    return simple


def _positive_roots(rd: RootDatum) -> set[Vector]:
    """Positive roots for the datum's base (heights over the base)."""
    if not rd.roots:
        return set()
    simples = [rd.roots[i] for i in rd.simple_indices]
    positive: set[Vector] = set()
    for a in rd.roots:
        coeffs = _express_nonneg(a, simples)
        if coeffs is not None:
            positive.add(a)
    return positive


def _express_nonneg(a: Vector, simples: Sequence[Vector]):
    """Nonnegative integer coordinates of a root over the base, if any."""
    from fractions import Fraction

    n = len(a)
    k = len(simples)
    rows = [[Fraction(simples[j][i]) for j in range(k)] + [Fraction(a[i])] for i in range(n)]
    piv = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [u - f * v for u, v in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    coeffs = [Fraction(0)] * k
    for i, c in enumerate(piv):
        coeffs[c] = rows[i][k]
    for i in range(r, n):
        if rows[i][k] != 0:
            return None
    if any(x < 0 or x.denominator != 1 for x in coeffs):
        return None
    return [int(x) for x in coeffs]


def restrict_to_y(pair: ReductivePair | IsogenyPair, s_dot: TorsionCharacter) -> TorsionCharacter:
    """Pull a character on Ybar back to Y along the inclusion."""
    center = pair.center if isinstance(pair, ReductivePair) else pair
    return s_dot.pullback(center.inclusion.matrix)


def satisfies_plus_condition(pair: ReductivePair | IsogenyPair, chi: TorsionCharacter) -> bool:
    """Whether chi kills (s - 1)Y for every s: the fixed-image condition."""
    center = pair.center if isinstance(pair, ReductivePair) else pair
    return chi.vanishes_on(center.iy_in_ybar.basis.entries)


@dataclass(frozen=True)
class RefinedEndoscopicDatum:
    """A reductive pair with a refined parameter and its derived subsystem."""

    ambient_pair: ReductivePair
    s_dot: TorsionCharacter
    h_datum: RootDatum

    @classmethod
    def build(cls, pair: ReductivePair, s_dot: TorsionCharacter) -> "RefinedEndoscopicDatum":
        s = restrict_to_y(pair, s_dot)
        return cls(pair, s_dot, endoscopic_subsystem(pair, s))


@dataclass(frozen=True)
class RefinedReport:
    kernel_locus_matches: bool
    galois_stable: bool
    plus_condition: bool
    violations: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "kernel_locus_matches": self.kernel_locus_matches,
            "galois_stable": self.galois_stable,
            "plus_condition": self.plus_condition,
            "violations": list(self.violations),
            "valid": self.valid,
        }


def validate_refined(datum: RefinedEndoscopicDatum) -> RefinedReport:
    """Check the lattice-level conditions on a refined datum.

    (a) the subsystem's coroots are exactly the kernel locus of the restricted
    parameter; (b) the coroot set is Galois-stable; (c) the restriction of
    s_dot to Y is fixed by the action (the "+"-condition).
    """
    pair = datum.ambient_pair
    rd = pair.datum
    s = restrict_to_y(pair, datum.s_dot)
    violations = []

    kernel_coroots = {rd.coroots[i] for i in range(len(rd.roots)) if s(rd.coroots[i]).is_zero()}
    kernel_matches = set(datum.h_datum.coroots) == kernel_coroots
    if not kernel_matches:
        violations.append("subsystem coroots differ from the parameter's kernel locus")

    stable = True
    keep_set = set(datum.h_datum.coroots)
    for g in range(rd.group.order):
        for cv in datum.h_datum.coroots:
            if tuple(rd.cochar.act(g, cv)) not in keep_set:
                stable = False
    if not stable:
        violations.append("subsystem coroots are not Galois-stable")

    plus = True
    J = pair.center.inclusion.matrix
    for g in range(rd.group.order):
        A = pair.center.ybar.action[g]
        for j in range(J.cols):
            col = J.column(j)
            moved = tuple(x - y for x, y in zip(A.apply(col), col))
            if not datum.s_dot(moved).is_zero():
                plus = False
    if not plus:
        violations.append("restriction of the parameter to Y is not Galois-fixed")

    return RefinedReport(
        kernel_locus_matches=kernel_matches,
        galois_stable=stable,
        plus_condition=plus,
        violations=tuple(violations),
    )


def lift_to_refined(pair: ReductivePair | IsogenyPair, s: TorsionCharacter) -> TorsionCharacter:
    """One refinement of a parameter: a character on Ybar restricting to s.

    Always solvable by divisibility of Q/Z; the set of all lifts is a torsor
    under the characters of Ybar/Y.
    """
    center = pair.center if isinstance(pair, ReductivePair) else pair
    J = center.inclusion.matrix
    if s.ambient_rank != J.cols:
        raise ValueError("parameter lives on the wrong lattice")
    image_rows = SubLattice.spanned_by(J.rows, J.transpose().entries)
    # prescribe chi(J e_i) = s(e_i): express each hermite basis row of the
    # image as an integer combination of the columns J e_i and push s through
    cols = J.transpose().entries  # row i is J e_i
    values = []
    from .intmatrix import express_in_basis

    for row in image_rows.basis.entries:
        coeffs = express_in_basis(cols, row)
        if coeffs is None:
            raise ValueError("hermite basis escaped the column span")
        values.append(s(coeffs))
    lift = extend_character(image_rows, values)
    # sanity: the lift restricts to s
    if lift.pullback(J) != s:
        raise ValueError("lift does not restrict to the parameter")
    return lift


def all_refinements(pair: ReductivePair | IsogenyPair, s: TorsionCharacter) -> list[TorsionCharacter]:
    """Every lift of s: the base lift shifted by each character of Ybar/Y."""
    center = pair.center if isinstance(pair, ReductivePair) else pair
    base = lift_to_refined(pair, s)
    from .abelian import dual_group_characters

    coker = center.cokernel.abelian_group()
    gens = dual_group_characters(coker)
    lifts = []
    for coords in coker.elements():
        shift = TorsionCharacter.zero(center.ybar.rank)
        for c, chi in zip(coords, gens):
            shift = shift + chi.scale(c)
        lifts.append(base + shift)
    return lifts


@dataclass(frozen=True)
class InvariantClass:
    """A rigid class of a torus pair, as supplied by the classification."""

    torus_pair: IsogenyPair
    rigid: RigidClass

    @classmethod
    def from_representative(cls, torus_pair: IsogenyPair, rep: Sequence[int]) -> "InvariantClass":
        return cls(torus_pair, RigidClass(torus_pair, tuple(rep)))


def transfer_pairing_term(inv: InvariantClass, s_dot_on_s: TorsionCharacter) -> QModZ:
    """The cohomological factor of the absolute transfer factor.

    Returns the NEGATIVE of the evaluation of the refinement on the class
    representative: the factor carries the pairing to the power -1, and the
    additive mirror of inversion in the circle is negation in Q/Z.
    """
    pair = inv.torus_pair
    if s_dot_on_s.ambient_rank != pair.ybar.rank:
        raise ValueError("character lives on the wrong lattice")
    if not satisfies_plus_condition(pair, s_dot_on_s):
        raise CharacterNotPlus("refinement does not vanish on I.Y")
    return -s_dot_on_s(inv.rigid.representative)


@dataclass(frozen=True)
class EnlargementReport:
    value_small: QModZ
    value_large: QModZ

    @property
    def equal(self) -> bool:
        return self.value_small == self.value_large

    def as_dict(self) -> dict:
        return {
            "value_over_Z": str(self.value_small),
            "value_over_Zprime": str(self.value_large),
            "equal": self.equal,
        }


def enlarge_center_invariance(
    pair_z: IsogenyPair,
    pair_zprime: IsogenyPair,
    inv: InvariantClass,
    s_dot: TorsionCharacter,
    s_ddot: TorsionCharacter,
) -> EnlargementReport:
    """Check that the pairing term is unchanged when the center grows.

    ``pair_zprime`` must enlarge ``pair_z`` over the same torus (the ambient
    inclusion Ybar -> Ybar' is derived and must be integral and equivariant);
    ``s_ddot`` must restrict to ``s_dot`` along it.  The report compares the
    term over Z with the term of the pushed class over Z'.
    """
    if inv.torus_pair != pair_z:
        raise ValueError("invariant class does not live over the small center")
    J, Jp = pair_z.inclusion.matrix, pair_zprime.inclusion.matrix
    if pair_z.group != pair_zprime.group or pair_z.y != pair_zprime.y:
        raise ValueError("pairs do not share the torus")
    # Phi with Phi * J = J', integral because Z <= Z'
    phi_t = solve_matrix(J.transpose(), Jp.transpose())
    if phi_t is None:
        raise ValueError("the small center does not include into the large one")
    phi = phi_t.transpose()
    for g in range(pair_z.group.order):
        if phi * pair_z.ybar.action[g] != pair_zprime.ybar.action[g] * phi:
            raise NotEquivariant("derived inclusion of Ybar lattices is not equivariant")
    if s_ddot.pullback(phi) != s_dot:
        raise ValueError("the large-center refinement does not restrict to the small one")
    value_small = transfer_pairing_term(inv, s_dot)
    pushed = InvariantClass.from_representative(pair_zprime, phi.apply(inv.rigid.representative))
    value_large = transfer_pairing_term(pushed, s_ddot)
    return EnlargementReport(value_small=value_small, value_large=value_large)
