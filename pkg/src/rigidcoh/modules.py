"""Galois lattices, finite Galois modules, and Tate cohomology in degrees -2..1.

A Galois lattice is Z^r with one unimodular matrix per group element acting on
column vectors.  Writing N for the norm (sum of the action matrices) and I for
the augmentation ideal, the four implemented groups are

* ``tate_h0``:        M^Gamma / N M
* ``tate_h_neg1``:    ker(N) / I M
* ``h1_lattice``:     crossed homomorphisms Gamma -> M modulo principal ones
* ``tate_h_neg2_finite`` (finite coefficients): 1-cycles modulo 2-boundaries
  of the bar resolution.

Cocycles follow the convention f(s*t) = f(s) + s.f(t).  Finite modules are
carried by lattice presentations (ambient lattice modulo a finite-index stable
sublattice); only test oracles ever enumerate elements.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .abelian import (
    FinAbGroup,
    FinAbMap,
    QModZ,
    SubLattice,
    preimage_lattice,
    subquotient,
)
from .errors import NotEquivariant
from .groups import FiniteGroup
from .intmatrix import (
    IntMatrix,
    Vector,
    kernel_basis_rows,
    lattice_contains,
    matrix_sum,
    solve_matrix,
)


class GaloisLattice:
    """Z^rank with an action of a finite group by unimodular matrices."""

    __slots__ = ("group", "rank", "action")

    def __init__(self, group: FiniteGroup, rank: int, action: Sequence[IntMatrix]):
        action = tuple(action)
        if len(action) != group.order:
            raise ValueError("one matrix per group element is required")
        for A in action:
            if A.rows != rank or A.cols != rank:
                raise ValueError("action matrices must be rank x rank")
        if action[group.identity] != IntMatrix.identity(rank):
            raise ValueError("identity must act as the identity matrix")
        for s in range(group.order):
            if not action[s].is_unimodular():
                raise ValueError("action matrices must be unimodular")
        for s in range(group.order):
            for t in range(group.order):
                if action[group.mul(s, t)] != action[s] * action[t]:
                    raise ValueError("action is not a homomorphism")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "action", action)

    def __setattr__(self, *a):
        raise AttributeError("GaloisLattice is immutable")

    def act(self, s: int, v: Sequence[int]) -> Vector:
        return self.action[s].apply(v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GaloisLattice)
            and self.group == other.group
            and self.action == other.action
        )

    def __hash__(self) -> int:
        return hash((self.group, self.action))

    def __repr__(self) -> str:
        return f"GaloisLattice(rank {self.rank}, {self.group.name})"

    # -- constructors --------------------------------------------------------

    @classmethod
    def with_trivial_action(cls, group: FiniteGroup, rank: int) -> "GaloisLattice":
        eye = IntMatrix.identity(rank)
        return cls(group, rank, [eye] * group.order)

    @classmethod
    def from_generator_matrices(
        cls, group: FiniteGroup, assignment: dict[int, IntMatrix]
    ) -> "GaloisLattice":
        """Extend matrices given on a generating set along the Cayley table."""
        rank = next(iter(assignment.values())).rows
        mats: dict[int, IntMatrix] = {group.identity: IntMatrix.identity(rank)}
        frontier = [group.identity]
        while len(mats) < group.order:
            progress = False
            for a in list(mats):
                for g, Mg in assignment.items():
                    p = group.mul(g, a)
                    if p not in mats:
                        mats[p] = Mg * mats[a]
                        progress = True
            if not progress:
                raise ValueError("assignment does not generate the group")
        return cls(group, rank, [mats[s] for s in range(group.order)])

    @classmethod
    def regular(cls, group: FiniteGroup) -> "GaloisLattice":
        """Z[Gamma] with the left-translation permutation action."""
        n = group.order
        mats = []
        for s in range(n):
            m = [[0] * n for _ in range(n)]
            for t in range(n):
                m[group.mul(s, t)][t] = 1
            mats.append(IntMatrix(m, cols=n))
        return cls(group, n, mats)

    def direct_sum(self, other: "GaloisLattice") -> "GaloisLattice":
        if self.group != other.group:
            raise ValueError("summands must share the group")
        r, s = self.rank, other.rank
        mats = []
        for g in range(self.group.order):
            A, B = self.action[g], other.action[g]
            block = [list(A[i]) + [0] * s for i in range(r)]
            block += [[0] * r + list(B[i]) for i in range(s)]
            mats.append(IntMatrix(block, cols=r + s))
        return GaloisLattice(self.group, r + s, mats)


class EquivariantMap:
    """A lattice map commuting with the actions on source and target."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: GaloisLattice, target: GaloisLattice, matrix: IntMatrix):
        if source.group != target.group:
            raise NotEquivariant("source and target have different groups")
        if matrix.rows != target.rank or matrix.cols != source.rank:
            raise ValueError("matrix shape does not match the lattices")
        for s in range(source.group.order):
            if matrix * source.action[s] != target.action[s] * matrix:
                raise NotEquivariant(f"map fails to commute with element {s}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, *a):
        raise AttributeError("EquivariantMap is immutable")

    def __call__(self, v: Sequence[int]) -> Vector:
        return self.matrix.apply(v)

    def compose(self, inner: "EquivariantMap") -> "EquivariantMap":
        """self after inner."""
        if inner.target != self.source:
            raise ValueError("maps are not composable")
        return EquivariantMap(inner.source, self.target, self.matrix * inner.matrix)

    def __repr__(self) -> str:
        return f"EquivariantMap({self.source.rank} -> {self.target.rank})"


# ---------------------------------------------------------------------------
# Norm, augmentation, invariants
# ---------------------------------------------------------------------------

def norm_matrix(M: GaloisLattice) -> IntMatrix:
    """The norm: the sum of all action matrices."""
    return matrix_sum(M.action)


def augmentation_sublattice(M: GaloisLattice) -> SubLattice:
    """The sublattice I.M spanned by (s - 1)e_i over elements and basis."""
    rows = []
    eye = IntMatrix.identity(M.rank)
    for s in range(M.group.order):
        diff = M.action[s] - eye
        rows.extend(diff.transpose().entries)  # columns of (A_s - 1)
    return SubLattice.spanned_by(M.rank, rows)


def invariants_sublattice(M: GaloisLattice) -> SubLattice:
    """The fixed sublattice M^Gamma (saturated by construction)."""
    eye = IntMatrix.identity(M.rank)
    stacked: list[Sequence[int]] = []
    for s in range(M.group.order):
        if s == M.group.identity:
            continue
        stacked.extend((M.action[s] - eye).entries)
    if not stacked:
        return SubLattice.full(M.rank)
    rows = kernel_basis_rows(IntMatrix(stacked, cols=M.rank))
    return SubLattice(M.rank, IntMatrix(rows, cols=M.rank))


def norm_image(M: GaloisLattice) -> SubLattice:
    N = norm_matrix(M)
    return SubLattice.spanned_by(M.rank, N.transpose().entries)


def norm_kernel(M: GaloisLattice) -> SubLattice:
    rows = kernel_basis_rows(norm_matrix(M))
    return SubLattice(M.rank, IntMatrix(rows, cols=M.rank))


# ---------------------------------------------------------------------------
# Tate cohomology of lattices
# ---------------------------------------------------------------------------

def tate_h0(M: GaloisLattice) -> FinAbGroup:
    """M^Gamma / N M, with class_of on invariant vectors."""
    return subquotient(invariants_sublattice(M), norm_image(M))


def tate_h_neg1(M: GaloisLattice) -> FinAbGroup:
    """ker(N) / I M, with class_of on norm-killed vectors."""
    return subquotient(norm_kernel(M), augmentation_sublattice(M))


def _cocycle_matrix(M: GaloisLattice) -> IntMatrix:
    """Equations f(s*t) = f(s) + s.f(t) for s in a generating set, t in Gamma.

    Cutting s down to generators leaves the kernel unchanged: the remaining
    equations follow by induction on word length.  Variables are blocks of
    size rank, one per group element.
    """
    g, r = M.group.order, M.rank
    gens = M.group.generators()
    rows: list[list[int]] = []
    for s in gens:
        A = M.action[s]
        for t in range(g):
            st = M.group.mul(s, t)
            for i in range(r):
                row = [0] * (g * r)
                row[st * r + i] += 1
                row[s * r + i] -= 1
                for j in range(r):
                    a = A[i][j]
                    if a:
                        row[t * r + j] -= a
                rows.append(row)
    return IntMatrix(rows, cols=g * r)


def _coboundary_rows(M: GaloisLattice) -> list[list[int]]:
    g, r = M.group.order, M.rank
    eye = IntMatrix.identity(r)
    rows = []
    for j in range(r):
        row = [0] * (g * r)
        for s in range(g):
            col = (M.action[s] - eye).column(j)
            for i in range(r):
                row[s * r + i] = col[i]
        rows.append(row)
    return rows


def h1_lattice(M: GaloisLattice) -> FinAbGroup:
    """First group cohomology with lattice coefficients.

    Cocycles live in M^{|Gamma|} (the value table of f); coboundaries are the
    tables of s -> s.m - m.
    """
    g, r = M.group.order, M.rank
    if g * r == 0:
        return FinAbGroup.trivial(0)
    Z = kernel_basis_rows(_cocycle_matrix(M))
    cob = SubLattice.spanned_by(g * r, _coboundary_rows(M))
    return subquotient(SubLattice(g * r, IntMatrix(Z, cols=g * r)), cob)


# ---------------------------------------------------------------------------
# Finite Galois modules via lattice presentations
# ---------------------------------------------------------------------------

class FiniteGaloisModule:
    """Cokernel of an injective equivariant map with finite cokernel.

    Stored as the target ("ambient") lattice together with the stable
    relation sublattice; the module is ambient/relations.
    """

    __slots__ = ("ambient", "relations", "_group_cache")

    def __init__(self, ambient: GaloisLattice, relations: SubLattice):
        if relations.ambient_rank != ambient.rank:
            raise ValueError("relations live in the wrong lattice")
        if relations.rank != ambient.rank:
            raise ValueError("relations must have full rank (finite module)")
        hrows = relations.hermite_rows()
        for s in range(ambient.group.order):
            for row in relations.basis.entries:
                if not lattice_contains(hrows, ambient.act(s, row)):
                    raise ValueError("relation lattice is not action-stable")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "relations", relations.canonical())
        object.__setattr__(self, "_group_cache", None)

    def __setattr__(self, *a):
        raise AttributeError("FiniteGaloisModule is immutable")

    @classmethod
    def from_map(cls, presentation: EquivariantMap) -> "FiniteGaloisModule":
        m = presentation.matrix
        if m.rows != m.cols or m.det() == 0:
            raise ValueError("presentation must be injective with finite cokernel")
        rel = SubLattice.spanned_by(m.rows, m.transpose().entries)
        return cls(presentation.target, rel)

    @property
    def group(self) -> FiniteGroup:
        return self.ambient.group

    @property
    def rank(self) -> int:
        return self.ambient.rank

    def abelian_group(self) -> FinAbGroup:
        """The underlying finite abelian group with class_of on the ambient."""
        if self._group_cache is None:
            grp = subquotient(SubLattice.full(self.rank), self.relations)
            object.__setattr__(self, "_group_cache", grp)
        return self._group_cache

    @property
    def order(self) -> int:
        return self.abelian_group().order

    @property
    def exponent(self) -> int:
        return self.abelian_group().exponent

    def act(self, s: int, v: Sequence[int]) -> Vector:
        return self.ambient.act(s, v)

    def __repr__(self) -> str:
        return f"FiniteGaloisModule(order {self.order}, {self.group.name})"


def _block_relations(Q: FiniteGaloisModule, copies: int) -> SubLattice:
    m = Q.rank
    rows = []
    for c in range(copies):
        for row in Q.relations.basis.entries:
            rows.append([0] * (m * c) + list(row) + [0] * (m * (copies - c - 1)))
    return SubLattice(m * copies, IntMatrix(rows, cols=m * copies))


def finite_invariants(Q: FiniteGaloisModule) -> FinAbGroup:
    """The fixed points Q^Gamma as a subquotient of the ambient lattice."""
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


def tate_h_neg2_finite(Q: FiniteGaloisModule) -> FinAbGroup:
    """H_1(Gamma, Q) from the bar resolution truncated at degree 2.

    Chains: C1 = Q^{|Gamma|}, C2 = Q^{|Gamma|^2}; the boundaries (left-module
    convention, q.s := s^{-1}q) are
        d1(q (x) [s])   = s^{-1} q - q
        d2(q (x) [s|t]) = s^{-1} q (x) [t] - q (x) [st] + q (x) [s].
    """
    g, m = Q.group.order, Q.rank
    if m == 0 or g == 0:
        return FinAbGroup.trivial(0)
    grp = Q.group
    eye = IntMatrix.identity(m)
    # d1 : Z^{m g} -> Z^m
    d1_cols: list[list[int]] = [[0] * m for _ in range(g * m)]
    for s in range(g):
        A = Q.ambient.action[grp.inv(s)] - eye
        for j in range(m):
            col = A.column(j)
            d1_cols[s * m + j] = list(col)
    D1 = IntMatrix([[d1_cols[j][i] for j in range(g * m)] for i in range(m)], cols=g * m)
    Z1 = preimage_lattice(D1, Q.relations)
    # boundary lattice: images of d2 generators plus blockwise relations
    rows: list[list[int]] = list(_block_relations(Q, g).basis.entries)
    for s in range(g):
        Ainv = Q.ambient.action[grp.inv(s)]
        for t in range(g):
            st = grp.mul(s, t)
            for i in range(m):
                row = [0] * (g * m)
                col = Ainv.column(i)
                for k in range(m):
                    row[t * m + k] += col[k]
                row[st * m + i] -= 1
                row[s * m + i] += 1
                if any(row):
                    rows.append(row)
    B1 = SubLattice.spanned_by(g * m, rows)
    return subquotient(Z1, B1)


def h1_finite(Q: FiniteGaloisModule) -> FinAbGroup:
    """H^1(Gamma, Q): cocycle tables modulo coboundaries and relations."""
    g, m = Q.group.order, Q.rank
    if m == 0:
        return FinAbGroup.trivial(0)
    C = _cocycle_matrix(Q.ambient)
    if C.rows:
        Z = preimage_lattice(C, _block_relations(Q, C.rows // m))
    else:
        Z = SubLattice.full(g * m)
    rows = _coboundary_rows(Q.ambient) + list(_block_relations(Q, g).basis.entries)
    B = SubLattice.spanned_by(g * m, rows)
    return subquotient(Z, B)


def dual_module(Q: FiniteGaloisModule) -> FiniteGaloisModule:
    """Hom(Q, Q/Z) with the contragredient action s.chi = chi o s^{-1}.

    With relation basis matrix B (rows) and ambient action T, the dual is
    presented on the same-rank ambient with relation basis B^T and action
    matrices B T_{s^{-1}}^T B^{-1} (integral because B is stable).
    """
    m = Q.rank
    grp = Q.group
    B = IntMatrix(Q.relations.hermite_rows(), cols=m)
    Bt = B.transpose()
    mats = []
    for s in range(grp.order):
        T = Q.ambient.action[grp.inv(s)]
        # solve B^T X = T B^T, then action = X^T
        X = solve_matrix(Bt, T * Bt)
        if X is None:
            raise ValueError("relation lattice is not action-stable")
        mats.append(X.transpose())
    dual_ambient = GaloisLattice(grp, m, mats)
    dual_relations = SubLattice.spanned_by(m, Bt.entries)
    return FiniteGaloisModule(dual_ambient, dual_relations)


def finite_module_pairing(Q: FiniteGaloisModule, v: Sequence[int], z: Sequence[int]) -> QModZ:
    """Evaluation pairing Q x dual(Q) -> Q/Z on ambient representatives."""
    m = Q.rank
    B = IntMatrix(Q.relations.hermite_rows(), cols=m)
    # value = z . (B^{-T} v) computed exactly over Q
    w = _solve_fraction(B.transpose(), v)
    acc = Fraction(0)
    for zi, wi in zip(z, w):
        acc += zi * wi
    return QModZ.from_fraction(acc)


def _solve_fraction(A: IntMatrix, b: Sequence[int]) -> list[Fraction]:
    n = A.rows
    rows = [[Fraction(A[i][j]) for j in range(A.cols)] + [Fraction(b[i])] for i in range(n)]
    piv = []
    r = 0
    for c in range(A.cols):
        p = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * bb for a, bb in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    x = [Fraction(0)] * A.cols
    for i, c in enumerate(piv):
        x[c] = rows[i][A.cols]
    for i in range(r, n):
        if rows[i][A.cols] != 0:
            raise ValueError("inconsistent rational system")
    return x


# ---------------------------------------------------------------------------
# Functoriality: maps induced on cohomology
# ---------------------------------------------------------------------------

def induced_tate_h0(f: EquivariantMap) -> FinAbMap:
    src, tgt = tate_h0(f.source), tate_h0(f.target)
    images = [tgt.class_of(f(lift)) for lift in src.generator_lifts]
    return FinAbMap.from_generator_images(src, tgt, images)


def induced_tate_h_neg1(f: EquivariantMap) -> FinAbMap:
    src, tgt = tate_h_neg1(f.source), tate_h_neg1(f.target)
    images = [tgt.class_of(f(lift)) for lift in src.generator_lifts]
    return FinAbMap.from_generator_images(src, tgt, images)


def induced_h1(f: EquivariantMap) -> FinAbMap:
    src, tgt = h1_lattice(f.source), h1_lattice(f.target)
    g = f.source.group.order
    rs, rt = f.source.rank, f.target.rank
    images = []
    for lift in src.generator_lifts:
        out: list[int] = []
        for s in range(g):
            out.extend(f(lift[s * rs:(s + 1) * rs]))
        images.append(tgt.class_of(out))
    return FinAbMap.from_generator_images(src, tgt, images)
