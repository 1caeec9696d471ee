"""Finite groups as Cayley tables, with the small-order catalogue.

Elements are indices 0..order-1 with identity 0.  Orders stay small (<= 24),
so validation checks associativity exhaustively and generating sets are found
by greedy closure.
"""

from __future__ import annotations

from typing import Sequence

from .errors import NotSurjective


class FiniteGroup:
    """A finite group given by its multiplication table."""

    __slots__ = ("order", "table", "_inverse", "_generators", "name")

    def __init__(self, table: Sequence[Sequence[int]], name: str = ""):
        tbl = tuple(tuple(int(x) for x in row) for row in table)
        n = len(tbl)
        if any(len(row) != n for row in tbl):
            raise ValueError("multiplication table must be square")
        for row in tbl:
            if sorted(row) != list(range(n)):
                raise ValueError("table rows must be permutations")
        for j in range(n):
            if sorted(row[j] for row in tbl) != list(range(n)):
                raise ValueError("table columns must be permutations")
        for a in range(n):
            if tbl[0][a] != a or tbl[a][0] != a:
                raise ValueError("element 0 must be the identity")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if tbl[tbl[a][b]][c] != tbl[a][tbl[b][c]]:
                        raise ValueError("table is not associative")
        inverse = [0] * n
        for a in range(n):
            for b in range(n):
                if tbl[a][b] == 0:
                    inverse[a] = b
                    break
            else:
                raise ValueError(f"element {a} has no inverse")
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "table", tbl)
        object.__setattr__(self, "_inverse", tuple(inverse))
        object.__setattr__(self, "_generators", None)
        object.__setattr__(self, "name", name or f"group{n}")

    def __setattr__(self, *a):
        raise AttributeError("FiniteGroup is immutable")

    # -- arithmetic ------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a)
        )

    def _closure(self, gens: Sequence[int]) -> set[int]:
        closure = {0, *gens}
        frontier = list(closure)
        while frontier:
            new = []
            for a in frontier:
                for g in gens:
                    for p in (self.mul(a, g), self.mul(g, a)):
                        if p not in closure:
                            closure.add(p)
                            new.append(p)
            frontier = new
        return closure

    def generators(self) -> tuple[int, ...]:
        """A minimal generating set (orders here are small enough to search)."""
        if self._generators is not None:
            return self._generators
        from itertools import combinations

        out: tuple[int, ...] | None = None
        if self.order == 1:
            out = (0,)
        else:
            for size in range(1, self.order):
                for gens in combinations(range(1, self.order), size):
                    if len(self._closure(gens)) == self.order:
                        out = gens
                        break
                if out is not None:
                    break
        assert out is not None
        object.__setattr__(self, "_generators", out)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order {self.order})"

    # -- constructors ---------------------------------------------------------

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]], name="1")

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        if n < 1:
            raise ValueError("order must be positive")
        return cls([[(i + j) % n for j in range(n)] for i in range(n)], name=f"C{n}")

    @classmethod
    def direct_product(cls, a: "FiniteGroup", b: "FiniteGroup") -> "FiniteGroup":
        n, m = a.order, b.order
        # element (x, y) <-> x*m + y, keeping (0,0) = 0
        table = [
            [a.mul(x1, x2) * m + b.mul(y1, y2) for x2 in range(n) for y2 in range(m)]
            for x1 in range(n)
            for y1 in range(m)
        ]
        return cls(table, name=f"{a.name}x{b.name}")

    @classmethod
    def dihedral(cls, n: int) -> "FiniteGroup":
        """Symmetries of the n-gon, order 2n; dihedral(3) is S3."""
        if n < 1:
            raise ValueError("n must be positive")
        # element r^i s^e <-> 2*i + e; s r = r^{-1} s
        def mul(x, y):
            i, e = divmod(x, 2)
            j, f = divmod(y, 2)
            if e == 0:
                return 2 * ((i + j) % n) + f
            return 2 * ((i - j) % n) + (1 - f)

        order = 2 * n
        table = [[mul(x, y) for y in range(order)] for x in range(order)]
        return cls(table, name=f"D{n}" if n != 3 else "S3")

    @classmethod
    def symmetric3(cls) -> "FiniteGroup":
        return cls.dihedral(3)

    @classmethod
    def quaternion8(cls) -> "FiniteGroup":
        """The quaternion group {1,-1,i,-i,j,-j,k,-k}."""
        # encode q = (sign, unit) with units 1,i,j,k = 0..3; index = unit*2 + (sign<0)
        unit_mul = {
            (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
            (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
            (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
            (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
        }

        def mul(x, y):
            ux, sx = divmod(x, 2)
            uy, sy = divmod(y, 2)
            s, u = unit_mul[(ux, uy)]
            negative = (s < 0) ^ bool(sx) ^ bool(sy)
            return u * 2 + (1 if negative else 0)

        table = [[mul(x, y) for y in range(8)] for x in range(8)]
        return cls(table, name="Q8")


class GroupHom:
    """A homomorphism of finite groups given by its value table."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images: Sequence[int]):
        images = tuple(int(x) for x in images)
        if len(images) != source.order:
            raise ValueError("one image per source element is required")
        if images[0] != 0:
            raise ValueError("identity must map to identity")
        for a in range(source.order):
            for b in range(source.order):
                if images[source.mul(a, b)] != target.mul(images[a], images[b]):
                    raise ValueError("images do not define a homomorphism")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):
        raise AttributeError("GroupHom is immutable")

    def __call__(self, a: int) -> int:
        return self.images[a]

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def require_surjective(self) -> "GroupHom":
        if not self.is_surjective():
            raise NotSurjective("the map misses elements of the target group")
        return self

    def fiber(self, b: int) -> list[int]:
        return [a for a in range(self.source.order) if self.images[a] == b]


def cyclic_reduction(m: int, n: int) -> GroupHom:
    """The reduction C_m -> C_n for n | m."""
    if m % n:
        raise ValueError("target order must divide source order")
    return GroupHom(FiniteGroup.cyclic(m), FiniteGroup.cyclic(n), [i % n for i in range(m)])


def sign_hom(s3: FiniteGroup) -> GroupHom:
    """S3 -> C2 by parity (for the dihedral(3) element encoding)."""
    images = [x % 2 for x in range(6)]
    return GroupHom(s3, FiniteGroup.cyclic(2), images)


def small_group_catalogue(max_order: int = 8) -> list[tuple[str, FiniteGroup]]:
    """Every isomorphism type of order <= max_order (max_order <= 8)."""
    if max_order > 8:
        raise ValueError("catalogue covers orders up to 8")
    C = FiniteGroup.cyclic
    P = FiniteGroup.direct_product
    groups = [("1", FiniteGroup.trivial())]
    if max_order >= 2:
        groups.append(("C2", C(2)))
    if max_order >= 3:
        groups.append(("C3", C(3)))
    if max_order >= 4:
        groups += [("C4", C(4)), ("C2xC2", P(C(2), C(2)))]
    if max_order >= 5:
        groups.append(("C5", C(5)))
    if max_order >= 6:
        groups += [("C6", C(6)), ("S3", FiniteGroup.dihedral(3))]
    if max_order >= 7:
        groups.append(("C7", C(7)))
    if max_order >= 8:
        groups += [
            ("C8", C(8)),
            ("C4xC2", P(C(4), C(2))),
            ("C2xC2xC2", P(P(C(2), C(2)), C(2))),
            ("D4", FiniteGroup.dihedral(4)),
            ("Q8", FiniteGroup.quaternion8()),
        ]
    return [(name, g) for name, g in groups if g.order <= max_order]
