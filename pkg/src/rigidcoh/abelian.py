"""Sublattices, finite abelian subquotients, and Q/Z-valued characters.

A :class:`FinAbGroup` is always stored in invariant-factor form with factors
of 1 dropped, so two computations of the same group compare equal.  Every
group remembers generator lifts in its ambient lattice together with the data
needed to reduce an arbitrary ambient vector to coordinates (``class_of``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import InfiniteQuotient, NotContained
from .intmatrix import (
    IntMatrix,
    Vector,
    hermite_basis,
    kernel_basis_rows,
    lattice_contains,
    smith_with_inverses,
)


class SubLattice:
    """A sublattice of Z^n given by independent basis rows."""

    __slots__ = ("ambient_rank", "basis")

    def __init__(self, ambient_rank: int, basis: IntMatrix):
        if basis.rows and basis.cols != ambient_rank:
            raise ValueError("basis width differs from ambient rank")
        if basis.rank() != basis.rows:
            raise ValueError("basis rows are linearly dependent")
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(
            self, "basis", basis if basis.rows else IntMatrix([], cols=ambient_rank)
        )

    def __setattr__(self, *a):
        raise AttributeError("SubLattice is immutable")

    @classmethod
    def spanned_by(cls, ambient_rank: int, rows: Iterable[Sequence[int]]) -> "SubLattice":
        """Lattice generated by arbitrary (possibly dependent) rows."""
        return cls(ambient_rank, IntMatrix(hermite_basis(rows), cols=ambient_rank))

    @classmethod
    def full(cls, ambient_rank: int) -> "SubLattice":
        return cls(ambient_rank, IntMatrix.identity(ambient_rank))

    @classmethod
    def zero(cls, ambient_rank: int) -> "SubLattice":
        return cls(ambient_rank, IntMatrix([], cols=ambient_rank))

    @property
    def rank(self) -> int:
        return self.basis.rows

    def hermite_rows(self) -> list[Vector]:
        return hermite_basis(self.basis.entries)

    def canonical(self) -> "SubLattice":
        return SubLattice(self.ambient_rank, IntMatrix(self.hermite_rows(), cols=self.ambient_rank))

    def contains(self, v: Sequence[int]) -> bool:
        return lattice_contains(self.hermite_rows(), v)

    def contains_lattice(self, other: "SubLattice") -> bool:
        h = self.hermite_rows()
        return all(lattice_contains(h, row) for row in other.basis.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubLattice)
            and self.ambient_rank == other.ambient_rank
            and self.hermite_rows() == other.hermite_rows()
        )

    def __hash__(self) -> int:
        return hash((self.ambient_rank, tuple(self.hermite_rows())))

    def __repr__(self) -> str:
        return f"SubLattice(rank {self.rank} in Z^{self.ambient_rank})"


def lattice_sum(a: SubLattice, b: SubLattice) -> SubLattice:
    if a.ambient_rank != b.ambient_rank:
        raise ValueError("ambient rank mismatch")
    return SubLattice.spanned_by(a.ambient_rank, list(a.basis.entries) + list(b.basis.entries))


def saturation(S: SubLattice) -> SubLattice:
    """The saturation ``(Q . S) intersect Z^n``.

    Computed as a double integer kernel: the kernel of a matrix is saturated,
    and the kernel of the kernel recovers the rational span.
    """
    if S.rank == 0:
        return SubLattice.zero(S.ambient_rank)
    complement = kernel_basis_rows(S.basis)
    rows = kernel_basis_rows(IntMatrix(complement, cols=S.ambient_rank))
    return SubLattice(S.ambient_rank, IntMatrix(rows, cols=S.ambient_rank))


def image_lattice(A: IntMatrix) -> SubLattice:
    """Column-image of ``A`` as a sublattice of Z^rows."""
    return SubLattice.spanned_by(A.rows, A.transpose().entries)


def preimage_lattice(A: IntMatrix, target: SubLattice) -> SubLattice:
    """The lattice ``{x : A*x in target}``.

    Solved as the integer kernel of ``[A | -B^T]`` projected to the x-block;
    the projection is exact because the target basis rows are independent.
    """
    if A.rows != target.ambient_rank:
        raise ValueError("target lives in the wrong ambient lattice")
    n = A.cols
    bt = target.basis.transpose()  # columns are the target basis vectors
    block = [list(A[i]) + [-bt[i][j] for j in range(bt.cols)] for i in range(A.rows)]
    ker = kernel_basis_rows(IntMatrix(block, cols=n + target.rank))
    return SubLattice.spanned_by(n, [row[:n] for row in ker])


# ---------------------------------------------------------------------------
# Finite abelian groups with class-of data
# ---------------------------------------------------------------------------

class FinAbGroup:
    """Finite abelian group ``B/A`` in invariant-factor form.

    ``invariant_factors`` lists d1 | d2 | ... with every factor >= 2;
    ``generator_lifts[i]`` is an ambient vector mapping to the i-th standard
    generator.  ``class_of`` reduces any vector of ``span(B)`` to coordinates.
    """

    __slots__ = (
        "invariant_factors",
        "ambient_rank",
        "generator_lifts",
        "_all_divisors",
        "_all_basis",
        "_solve_data",
    )

    def __init__(self, invariant_factors, ambient_rank, generator_lifts, _all=None):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in invariant_factors))
        object.__setattr__(self, "ambient_rank", int(ambient_rank))
        object.__setattr__(
            self, "generator_lifts", tuple(tuple(int(x) for x in g) for g in generator_lifts)
        )
        if any(d < 2 for d in self.invariant_factors):
            raise ValueError("invariant factors of 1 must be dropped")
        if _all is None:
            _all = (self.invariant_factors, [list(g) for g in self.generator_lifts])
        divisors, basis = _all
        object.__setattr__(self, "_all_divisors", tuple(divisors))
        object.__setattr__(self, "_all_basis", tuple(tuple(r) for r in basis))
        if self._all_basis:
            B = IntMatrix(self._all_basis, cols=self.ambient_rank)
            object.__setattr__(self, "_solve_data", smith_with_inverses(B.transpose()))
        else:
            object.__setattr__(self, "_solve_data", None)

    def __setattr__(self, *a):
        raise AttributeError("FinAbGroup is immutable")

    @classmethod
    def from_factors(cls, factors: Sequence[int]) -> "FinAbGroup":
        """Canonical model with ambient Z^k and standard generator lifts."""
        factors = [int(d) for d in factors if int(d) != 1]
        k = len(factors)
        lifts = [tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]
        return cls(factors, k, lifts)

    @classmethod
    def trivial(cls, ambient_rank: int = 0) -> "FinAbGroup":
        return cls((), ambient_rank, ())

    # -- structure ------------------------------------------------------------

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __eq__(self, other) -> bool:
        # groups compare by isomorphism type; ambient data is bookkeeping
        return isinstance(other, FinAbGroup) and self.invariant_factors == other.invariant_factors

    def __hash__(self) -> int:
        return hash(self.invariant_factors)

    def __repr__(self) -> str:
        if not self.invariant_factors:
            return "FinAbGroup(0)"
        return "FinAbGroup(" + " + ".join(f"Z/{d}" for d in self.invariant_factors) + ")"

    # -- element arithmetic ------------------------------------------------------

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != len(self.invariant_factors):
            raise ValueError("coordinate length mismatch")
        return tuple(c % d for c, d in zip(coords, self.invariant_factors))

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.invariant_factors)

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([x + y for x, y in zip(a, b)])

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([-x for x in a])

    def element_order(self, a: Sequence[int]) -> int:
        a = self.reduce(a)
        return math.lcm(1, *(d // math.gcd(d, x) for d, x in zip(self.invariant_factors, a)))

    def elements(self):
        """All coordinate tuples; intended for small groups in tests."""
        return product(*(range(d) for d in self.invariant_factors))

    def class_of(self, v: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of an ambient vector; requires membership in span(B)."""
        if len(v) != self.ambient_rank:
            raise ValueError("vector has the wrong ambient rank")
        if not self._all_basis:
            if any(x != 0 for x in v):
                raise NotContained("vector is not in the span of the numerator lattice")
            return ()
        U, _, D, V, _ = self._solve_data
        c = U.apply(v)
        k = len(self._all_basis)
        y = [0] * k
        for i in range(len(c)):
            d = D[i][i] if i < min(D.rows, D.cols) else 0
            if d == 0:
                if c[i] != 0:
                    raise NotContained("vector is not in the span of the numerator lattice")
            else:
                if c[i] % d != 0:
                    raise NotContained("vector is not in the span of the numerator lattice")
                y[i] = c[i] // d
        coeffs = V.apply(y)
        full = [c % d for c, d in zip(coeffs, self._all_divisors)]
        return tuple(c for c, d in zip(full, self._all_divisors) if d != 1)

    def lift(self, coords: Sequence[int]) -> Vector:
        """An ambient representative of the given coordinates."""
        coords = self.reduce(coords)
        v = [0] * self.ambient_rank
        for c, g in zip(coords, self.generator_lifts):
            for i in range(self.ambient_rank):
                v[i] += c * g[i]
        return tuple(v)


def _express_rows(B: SubLattice, rows) -> list[list[int]]:
    """Coordinates of each row over B's basis, via one Smith decomposition."""
    rows = list(rows)
    if not rows:
        return []
    k = B.rank
    if k == 0:
        if any(any(r) for r in rows):
            raise NotContained("denominator is not contained in the numerator span")
        return [[] for _ in rows]
    Bt = B.basis.transpose()
    U, _, D, V, _ = smith_with_inverses(Bt)
    n = min(Bt.rows, Bt.cols)
    out = []
    for row in rows:
        c = U.apply(row)
        y = [0] * Bt.cols
        for i in range(Bt.rows):
            d = D[i][i] if i < n else 0
            if d == 0:
                if c[i] != 0:
                    raise NotContained("denominator is not contained in the numerator span")
            else:
                if c[i] % d != 0:
                    raise NotContained("denominator is not contained in the numerator span")
                y[i] = c[i] // d
        out.append(list(V.apply(y)))
    return out


def subquotient(B: SubLattice, A: SubLattice) -> FinAbGroup:
    """The finite group ``B/A``.

    Raises :class:`NotContained` if some row of ``A`` is outside span(B) and
    :class:`InfiniteQuotient` if ``rank(A) < rank(B)``.
    """
    if B.ambient_rank != A.ambient_rank:
        raise ValueError("ambient rank mismatch")
    k = B.rank
    xrows = _express_rows(B, A.basis.entries)
    if A.rank < k:
        raise InfiniteQuotient(f"quotient has rank {k - A.rank} > 0")
    if k == 0:
        return FinAbGroup((), B.ambient_rank, ())
    X = IntMatrix(xrows, cols=k)
    if X.det() == 0:
        raise InfiniteQuotient("denominator has lower rank than numerator")
    _, _, D, _, Vinv = smith_with_inverses(X)
    divisors = [D[i][i] for i in range(k)]
    # span(A) = rowspan(D * Vinv * B); the rows of Vinv*B generate B with
    # divisor d_i giving the cyclic decomposition.
    newbasis = (Vinv * B.basis).entries
    factors = [d for d in divisors if d != 1]
    lifts = [row for row, d in zip(newbasis, divisors) if d != 1]
    return FinAbGroup(factors, B.ambient_rank, lifts, _all=(divisors, newbasis))


# ---------------------------------------------------------------------------
# Homomorphisms of finite abelian groups, subgroups
# ---------------------------------------------------------------------------

def _relation_rows(group: FinAbGroup) -> list[Vector]:
    k = len(group.invariant_factors)
    return [
        tuple(group.invariant_factors[i] if i == j else 0 for j in range(k))
        for i in range(k)
    ]


def subgroup_canonical(group: FinAbGroup, elements: Iterable[Sequence[int]]) -> tuple[Vector, ...]:
    """Canonical form of the subgroup generated by coordinate tuples."""
    rows = [tuple(e) for e in elements] + _relation_rows(group)
    return tuple(hermite_basis(rows))


def subgroup_order(group: FinAbGroup, canonical: Sequence[Vector]) -> int:
    # index of the relation lattice inside the subgroup lattice
    k = len(group.invariant_factors)
    if k == 0:
        return 1
    sub = math.prod(r[_pivot(r)] for r in canonical)
    return group.order // sub


def _pivot(row):
    for i, x in enumerate(row):
        if x:
            return i
    raise ValueError("zero row in canonical basis")


@dataclass(frozen=True)
class FinAbMap:
    """Homomorphism between finite abelian groups on coordinates."""

    source: FinAbGroup
    target: FinAbGroup
    matrix: IntMatrix  # maps source coordinates (column) to target coordinates

    def __post_init__(self):
        ks = len(self.source.invariant_factors)
        kt = len(self.target.invariant_factors)
        if self.matrix.rows != kt or self.matrix.cols != ks:
            raise ValueError("matrix shape does not match the groups")
        # well-definedness: relations must map into relations
        for i, d in enumerate(self.source.invariant_factors):
            img = [d * self.matrix[r][i] for r in range(kt)]
            if any(x % e for x, e in zip(img, self.target.invariant_factors)):
                raise ValueError("map is not well defined on invariant factors")

    @classmethod
    def from_generator_images(cls, source: FinAbGroup, target: FinAbGroup,
                              images: Sequence[Sequence[int]]) -> "FinAbMap":
        cols = [target.reduce(img) for img in images]
        kt = len(target.invariant_factors)
        matrix = IntMatrix([[col[r] for col in cols] for r in range(kt)],
                           cols=len(cols))
        return cls(source, target, matrix)

    def apply(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(self.matrix.apply(self.source.reduce(coords)))

    def compose(self, inner: "FinAbMap") -> "FinAbMap":
        """self after inner."""
        if inner.target is not self.source and inner.target.invariant_factors != self.source.invariant_factors:
            raise ValueError("maps are not composable")
        return FinAbMap(inner.source, self.target, self.matrix * inner.matrix)

    def kernel_canonical(self) -> tuple[Vector, ...]:
        src_rel = SubLattice.spanned_by(
            len(self.target.invariant_factors), _relation_rows(self.target)
        )
        pre = preimage_lattice(self.matrix, src_rel)
        return tuple(hermite_basis(list(pre.basis.entries) + _relation_rows(self.source)))

    def image_canonical(self) -> tuple[Vector, ...]:
        cols = self.matrix.transpose().entries
        return subgroup_canonical(self.target, [self.target.reduce(c) for c in cols])

    def kernel_order(self) -> int:
        return subgroup_order(self.source, self.kernel_canonical())

    def is_injective(self) -> bool:
        return self.kernel_order() == 1

    def is_surjective(self) -> bool:
        return subgroup_order(self.target, self.image_canonical()) == self.target.order

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


# ---------------------------------------------------------------------------
# Q/Z values and torsion characters
# ---------------------------------------------------------------------------

class QModZ:
    """An element of Q/Z stored as a reduced fraction in [0, 1)."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: int, denominator: int = 1):
        if denominator == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        f = Fraction(numerator, denominator)
        f = f - (f.numerator // f.denominator)  # reduce into [0, 1)
        object.__setattr__(self, "numerator", f.numerator)
        object.__setattr__(self, "denominator", f.denominator)

    def __setattr__(self, *a):
        raise AttributeError("QModZ is immutable")

    @classmethod
    def from_fraction(cls, f: Fraction) -> "QModZ":
        return cls(f.numerator, f.denominator)

    @classmethod
    def zero(cls) -> "QModZ":
        return cls(0, 1)

    @classmethod
    def parse(cls, text: str) -> "QModZ":
        num, _, den = text.partition("/")
        return cls(int(num), int(den) if den else 1)

    def __add__(self, other: "QModZ") -> "QModZ":
        return QModZ(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __neg__(self) -> "QModZ":
        return QModZ(-self.numerator, self.denominator)

    def __sub__(self, other: "QModZ") -> "QModZ":
        return self + (-other)

    def scale(self, c: int) -> "QModZ":
        return QModZ(c * self.numerator, self.denominator)

    def is_zero(self) -> bool:
        return self.numerator == 0

    @property
    def order(self) -> int:
        return self.denominator

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QModZ)
            and self.numerator == other.numerator
            and self.denominator == other.denominator
        )

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self) -> str:
        return f"QModZ({self.numerator}/{self.denominator})"


class TorsionCharacter:
    """Homomorphism from Z^n to Q/Z given by its values on the basis."""

    __slots__ = ("ambient_rank", "values")

    def __init__(self, values: Sequence[QModZ]):
        object.__setattr__(self, "values", tuple(values))
        object.__setattr__(self, "ambient_rank", len(self.values))

    def __setattr__(self, *a):
        raise AttributeError("TorsionCharacter is immutable")

    @classmethod
    def zero(cls, ambient_rank: int) -> "TorsionCharacter":
        return cls([QModZ.zero()] * ambient_rank)

    def __call__(self, v: Sequence[int]) -> QModZ:
        if len(v) != self.ambient_rank:
            raise ValueError("vector length mismatch")
        num = 0
        den = 1
        for x, q in zip(v, self.values):
            num = num * q.denominator + x * q.numerator * den
            den *= q.denominator
        return QModZ(num, den)

    @property
    def order(self) -> int:
        return math.lcm(1, *(q.denominator for q in self.values))

    def vanishes_on(self, rows: Iterable[Sequence[int]]) -> bool:
        return all(self(row).is_zero() for row in rows)

    def pullback(self, A: IntMatrix) -> "TorsionCharacter":
        """The character v -> self(A*v) on the source of ``A``."""
        if A.rows != self.ambient_rank:
            raise ValueError("matrix does not map into the character's lattice")
        return TorsionCharacter([self(A.column(j)) for j in range(A.cols)])

    def scale(self, c: int) -> "TorsionCharacter":
        return TorsionCharacter([q.scale(c) for q in self.values])

    def __add__(self, other: "TorsionCharacter") -> "TorsionCharacter":
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("rank mismatch")
        return TorsionCharacter([a + b for a, b in zip(self.values, other.values)])

    def __eq__(self, other) -> bool:
        return isinstance(other, TorsionCharacter) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return "TorsionCharacter(" + ", ".join(str(q) for q in self.values) + ")"


def extend_character(sub: SubLattice, values: Sequence[QModZ]) -> TorsionCharacter:
    """A character on the ambient lattice with prescribed basis-row values.

    Solves ``chi(b_i) = values[i]`` exactly over Q (always possible for
    independent rows since Q/Z is divisible) and reduces modulo 1.  Restricting
    the result to the sublattice reproduces ``values``.
    """
    if len(values) != sub.rank:
        raise ValueError("one value per basis row is required")
    n = sub.ambient_rank
    k = sub.rank
    if k == 0:
        return TorsionCharacter.zero(n)
    B = sub.basis
    w = [Fraction(v.numerator, v.denominator) for v in values]
    rows = [[Fraction(B[i][j]) for j in range(n)] + [w[i]] for i in range(k)]
    # Gaussian elimination to reduced row echelon form
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, k):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        rows[r] = [x * inv for x in pr]
        for i in range(k):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == k:
            break
    if r < k:
        raise ValueError("inconsistent system; basis rows were dependent")
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return TorsionCharacter([QModZ.from_fraction(f) for f in x])


def dual_group_characters(group: FinAbGroup) -> list[TorsionCharacter]:
    """Generators of Hom(group, Q/Z) as characters on the ambient lattice.

    The i-th returned character sends the i-th generator lift to 1/d_i and
    the other generator lifts to 0; it kills everything whose class is zero.
    """
    sat_rows = hermite_basis(group._all_basis)
    sat = SubLattice(group.ambient_rank, IntMatrix(sat_rows, cols=group.ambient_rank))
    chars = []
    k = len(group.invariant_factors)
    for i in range(k):
        values = []
        for row in sat_rows:
            coords = group.class_of(row)
            values.append(QModZ(coords[i], group.invariant_factors[i]))
        chars.append(extend_character(sat, values))
    return chars
