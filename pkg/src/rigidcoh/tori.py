"""Isogeny pairs [Z -> S] at lattice level and their rigid cohomology.

An isogeny pair is a finite-index equivariant inclusion Y -> Ybar of
cocharacter lattices.  The finite-level rigid cohomology of the pair is
ker(N on Ybar) / I.Y; for trivial Z it reduces to the classical degree -1
Tate group of Y.  The module also materializes the four-term row

    0 -> ker(N)/IY  ->  Ybar^N/IY  ->  (Ybar/Y)^N  ->  Y^Gamma/NY

(inclusion, restriction to the band, transgression by the norm) and checks
its exactness by a generator chase.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .abelian import (
    FinAbGroup,
    FinAbMap,
    SubLattice,
    preimage_lattice,
    subquotient,
)
from .errors import NormNonzero, NotEquivariant, RepresentativeInvalid
from .groups import FiniteGroup
from .intmatrix import IntMatrix, Vector, solve_vector
from .modules import (
    EquivariantMap,
    FiniteGaloisModule,
    GaloisLattice,
    augmentation_sublattice,
    norm_kernel,
    norm_matrix,
    tate_h0,
    tate_h_neg1,
)


class IsogenyPair:
    """An equivariant finite-index inclusion Y -> Ybar."""

    __slots__ = ("inclusion", "cokernel", "_iy_in_ybar", "_cache")

    def __init__(self, inclusion: EquivariantMap):
        m = inclusion.matrix
        if not m.is_square() or m.det() == 0:
            raise ValueError("inclusion must be square with nonzero determinant")
        object.__setattr__(self, "inclusion", inclusion)
        object.__setattr__(self, "cokernel", FiniteGaloisModule.from_map(inclusion))
        iy = augmentation_sublattice(inclusion.source)
        rows = [inclusion(v) for v in iy.basis.entries]
        object.__setattr__(
            self, "_iy_in_ybar", SubLattice.spanned_by(inclusion.target.rank, rows)
        )
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, *a):
        raise AttributeError("IsogenyPair is immutable")

    @classmethod
    def from_matrices(
        cls,
        group: FiniteGroup,
        inclusion_matrix: IntMatrix,
        ybar_action: Sequence[IntMatrix],
        y_action: Sequence[IntMatrix] | None = None,
    ) -> "IsogenyPair":
        """Build a pair from the Ybar action; the Y action is transported."""
        ybar = GaloisLattice(group, inclusion_matrix.rows, ybar_action)
        if y_action is None:
            y_mats = [
                _conjugate_action(inclusion_matrix, ybar.action[s])
                for s in range(group.order)
            ]
        else:
            y_mats = list(y_action)
        y = GaloisLattice(group, inclusion_matrix.cols, y_mats)
        return cls(EquivariantMap(y, ybar, inclusion_matrix))

    @classmethod
    def from_y_action(
        cls,
        group: FiniteGroup,
        inclusion_matrix: IntMatrix,
        y_action: Sequence[IntMatrix],
    ) -> "IsogenyPair":
        """Build a pair from the Y action; the Ybar action is transported.

        Solves Abar * J = J * A for each element; a non-integral solution
        means the action does not extend to the larger lattice.
        """
        from .intmatrix import solve_matrix

        y = GaloisLattice(group, inclusion_matrix.cols, y_action)
        jt = inclusion_matrix.transpose()
        ybar_mats = []
        for s in range(group.order):
            xt = solve_matrix(jt, y_action[s].transpose() * jt)
            if xt is None:
                raise NotEquivariant("the Y action does not preserve Ybar")
            ybar_mats.append(xt.transpose())
        ybar = GaloisLattice(group, inclusion_matrix.rows, ybar_mats)
        return cls(EquivariantMap(y, ybar, inclusion_matrix))

    @property
    def group(self) -> FiniteGroup:
        return self.inclusion.source.group

    @property
    def y(self) -> GaloisLattice:
        return self.inclusion.source

    @property
    def ybar(self) -> GaloisLattice:
        return self.inclusion.target

    @property
    def index(self) -> int:
        return abs(self.inclusion.matrix.det())

    @property
    def iy_in_ybar(self) -> SubLattice:
        """The augmentation sublattice I.Y pushed into Ybar."""
        return self._iy_in_ybar

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IsogenyPair)
            and self.y == other.y
            and self.ybar == other.ybar
            and self.inclusion.matrix == other.inclusion.matrix
        )

    def __hash__(self) -> int:
        return hash((self.y, self.ybar, self.inclusion.matrix))

    def __repr__(self) -> str:
        return f"IsogenyPair(index {self.index}, rank {self.y.rank}, {self.group.name})"


def _conjugate_action(J: IntMatrix, A: IntMatrix) -> IntMatrix:
    """Solve J X = A J; integrality certifies that A preserves the image of J."""
    from .intmatrix import solve_matrix

    X = solve_matrix(J, A * J)
    if X is None:
        raise NotEquivariant("the ambient action does not preserve the sublattice")
    return X


@dataclass(frozen=True)
class RigidClass:
    """An element of Ybar^N / IY given by a representative in Ybar."""

    pair: IsogenyPair
    representative: Vector

    def __post_init__(self):
        rep = tuple(int(x) for x in self.representative)
        object.__setattr__(self, "representative", rep)
        if len(rep) != self.pair.ybar.rank:
            raise ValueError("representative has the wrong rank")
        if any(norm_matrix(self.pair.ybar).apply(rep)):
            raise NormNonzero("representative is not killed by the norm")

    def coords(self) -> tuple[int, ...]:
        return rigid_h1_torus(self.pair).class_of(self.representative)

    def __add__(self, other: "RigidClass") -> "RigidClass":
        if other.pair is not self.pair:
            raise ValueError("classes belong to different pairs")
        rep = tuple(a + b for a, b in zip(self.representative, other.representative))
        return RigidClass(self.pair, rep)


def rigid_h1_torus(pair: IsogenyPair) -> FinAbGroup:
    """Ybar^N / I.Y -- the finite-level rigid cohomology of [Z -> S]."""
    cache = pair._cache
    if "rigid_h1" not in cache:
        cache["rigid_h1"] = subquotient(norm_kernel(pair.ybar), pair.iy_in_ybar)
    return cache["rigid_h1"]


def h1_F_torus(Y: GaloisLattice) -> FinAbGroup:
    """H^1 of the torus with cocharacter lattice Y, realized as ker N / IY.

    This finite group is the faithful finite-level invariant; no cocycle
    realization is carried along.
    """
    return tate_h_neg1(Y)


def h2_F_torus(Y: GaloisLattice) -> FinAbGroup:
    """H^2 of the torus, realized as the degree-0 Tate group Y^Gamma/NY."""
    return tate_h0(Y)


def band_norm_kernel_group(pair: IsogenyPair) -> FinAbGroup:
    """The norm-kernel subgroup of Ybar/Y, i.e. {q : Nq = 0}.

    This group realizes the homomorphisms from the finite-level band to Z
    whenever the level's modulus is compatible; see the band-group module.
    """
    cache = pair._cache
    if "band" not in cache:
        K = preimage_lattice(norm_matrix(pair.ybar), _y_in_ybar(pair))
        cache["band"] = subquotient(K, _y_in_ybar(pair))
    return cache["band"]


def _y_in_ybar(pair: IsogenyPair) -> SubLattice:
    return SubLattice.spanned_by(
        pair.ybar.rank, pair.inclusion.matrix.transpose().entries
    )


def restriction_to_band(pair: IsogenyPair, c: RigidClass) -> tuple[int, ...]:
    """Image of a rigid class in (Ybar/Y)^N; kills classes from Y."""
    if c.pair is not pair:
        raise ValueError("class belongs to a different pair")
    return band_norm_kernel_group(pair).class_of(c.representative)


def transgression(pair: IsogenyPair, rep: Sequence[int]) -> tuple[int, ...]:
    """Class of N(rep) in Y^Gamma/NY for rep representing a class of (Ybar/Y)^N.

    Raises :class:`RepresentativeInvalid` when N(rep) does not land in Y.
    """
    nv = norm_matrix(pair.ybar).apply(rep)
    w = solve_vector(pair.inclusion.matrix, nv)
    if w is None:
        raise RepresentativeInvalid("the norm of the representative is not in Y")
    return tate_h0(pair.y).class_of(w)


@dataclass(frozen=True)
class InfResReport:
    """Groups, maps, and exactness verdicts for the four-term row."""

    h_neg1_factors: tuple[int, ...]
    rigid_factors: tuple[int, ...]
    band_factors: tuple[int, ...]
    h0_factors: tuple[int, ...]
    injective_at_h_neg1: bool
    exact_at_rigid: bool
    exact_at_band: bool

    @property
    def exact(self) -> bool:
        return self.injective_at_h_neg1 and self.exact_at_rigid and self.exact_at_band

    def as_dict(self) -> dict:
        return {
            "groups": {
                "h_neg1": list(self.h_neg1_factors),
                "rigid": list(self.rigid_factors),
                "band_norm_kernel": list(self.band_factors),
                "h0": list(self.h0_factors),
            },
            "injective_at_h_neg1": self.injective_at_h_neg1,
            "exact_at_rigid": self.exact_at_rigid,
            "exact_at_band_norm_kernel": self.exact_at_band,
            "exact": self.exact,
        }


def infres_check(pair: IsogenyPair) -> InfResReport:
    """Materialize the row ker N/IY -> Ybar^N/IY -> (Ybar/Y)^N -> Y^G/NY
    and verify exactness at the three interior spots by a generator chase."""
    g1 = tate_h_neg1(pair.y)
    g2 = rigid_h1_torus(pair)
    g3 = band_norm_kernel_group(pair)
    g4 = tate_h0(pair.y)

    m1 = FinAbMap.from_generator_images(
        g1, g2, [g2.class_of(pair.inclusion(l)) for l in g1.generator_lifts]
    )
    m2 = FinAbMap.from_generator_images(
        g2, g3, [g3.class_of(l) for l in g2.generator_lifts]
    )
    m3 = FinAbMap.from_generator_images(
        g3, g4, [transgression(pair, l) for l in g3.generator_lifts]
    )

    return InfResReport(
        h_neg1_factors=g1.invariant_factors,
        rigid_factors=g2.invariant_factors,
        band_factors=g3.invariant_factors,
        h0_factors=g4.invariant_factors,
        injective_at_h_neg1=m1.is_injective(),
        exact_at_rigid=m2.kernel_canonical() == m1.image_canonical(),
        exact_at_band=m3.kernel_canonical() == m2.image_canonical(),
    )


@dataclass(frozen=True)
class PairMorphism:
    """A morphism of isogeny pairs: a commuting equivariant square."""

    source: IsogenyPair
    target: IsogenyPair
    y_matrix: IntMatrix
    ybar_matrix: IntMatrix

    def __post_init__(self):
        EquivariantMap(self.source.y, self.target.y, self.y_matrix)
        EquivariantMap(self.source.ybar, self.target.ybar, self.ybar_matrix)
        if self.ybar_matrix * self.source.inclusion.matrix != (
            self.target.inclusion.matrix * self.y_matrix
        ):
            raise NotEquivariant("the square does not commute with the inclusions")

    def __call__(self, v: Sequence[int]) -> Vector:
        return self.ybar_matrix.apply(v)

    def compose(self, inner: "PairMorphism") -> "PairMorphism":
        if inner.target is not self.source:
            raise ValueError("morphisms are not composable")
        return PairMorphism(
            inner.source,
            self.target,
            self.y_matrix * inner.y_matrix,
            self.ybar_matrix * inner.ybar_matrix,
        )


def induced_class_map(f: PairMorphism, c: RigidClass) -> RigidClass:
    """Push a rigid class through a morphism of pairs."""
    if c.pair is not f.source:
        raise ValueError("class does not belong to the morphism's source")
    return RigidClass(f.target, f(c.representative))
