"""Exact integer matrices: Smith/Hermite normal forms, kernels, solving.

Conventions used throughout the package:

* vectors are stored as rows (tuples of ints);
* a matrix ``A`` acts on a vector ``v`` as a column on the left, so
  ``A.apply(v)[i] == sum(A[i][j] * v[j])``;
* all arithmetic is arbitrary-precision; there are no modular shortcuts.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Vector = tuple[int, ...]


class IntMatrix:
    """Immutable dense integer matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row length")
        else:
            width = 0 if cols is None else cols
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, *a):  # immutability
        raise AttributeError("IntMatrix is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "IntMatrix":
        n = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    # -- access ---------------------------------------------------------------

    def __getitem__(self, i: int) -> Vector:
        return self.entries[i]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.entries]!r})"

    # -- arithmetic -------------------------------------------------------------

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}"
            )
        ocols = list(zip(*other.entries)) if other.entries else []
        out = []
        for r in self.entries:
            if ocols:
                out.append([sum(a * b for a, b in zip(r, c)) for c in ocols])
            else:
                out.append([0] * other.cols)
        return IntMatrix(out, cols=other.cols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.entries], cols=self.cols)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * a for a in r] for r in self.entries], cols=self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.entries)) if self.entries else [], cols=self.rows)

    def apply(self, v: Sequence[int]) -> Vector:
        """Apply to a vector as a column on the left."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * x for a, x in zip(r, v)) for r in self.entries)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def _same_shape(self, other: "IntMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    # -- exact invariants --------------------------------------------------------

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_lists()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.is_square() and self.det() in (1, -1)

    def rank(self) -> int:
        return len(hermite_basis(self.entries))

    def inverse_unimodular(self) -> "IntMatrix":
        """Inverse of a matrix with determinant +-1."""
        sol = solve_matrix(self, IntMatrix.identity(self.rows))
        if sol is None or not self.is_square():
            raise ValueError("matrix is not unimodular")
        return sol


def matrix_sum(matrices: Sequence[IntMatrix]) -> IntMatrix:
    acc = matrices[0]
    for m in matrices[1:]:
        acc = acc + m
    return acc


# ---------------------------------------------------------------------------
# Smith normal form with transforms
# ---------------------------------------------------------------------------

def smith_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U*A*V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with nonnegative
    entries satisfying ``d1 | d2 | ...``.  Pivots are chosen by minimal
    absolute value with full reduction, which keeps intermediate entries
    small at this scale.
    """
    U, _, D, V, _ = smith_with_inverses(A)
    return U, D, V


def smith_with_inverses(A: IntMatrix):
    """Smith normal form returning ``(U, Uinv, D, V, Vinv)``.

    ``U*A*V == D``; inverse transforms are accumulated alongside so callers
    never need to invert a unimodular matrix afterwards.
    """
    nrows, ncols = A.rows, A.cols
    m = A.to_lists()
    u = IntMatrix.identity(nrows).to_lists()
    # U^{-1} is kept transposed and V is kept transposed: with those layouts
    # every elementary operation below is a plain row operation on the stored
    # lists (inverse transforms accumulate the inverse op on the other side).
    uinvt = IntMatrix.identity(nrows).to_lists()
    vt = IntMatrix.identity(ncols).to_lists()
    vinv = IntMatrix.identity(ncols).to_lists()

    def row_swap(i, k):
        m[i], m[k] = m[k], m[i]
        u[i], u[k] = u[k], u[i]
        uinvt[i], uinvt[k] = uinvt[k], uinvt[i]

    def row_add(src, dst, c):
        # m, U: row[dst] += c*row[src]; U^{-1}: col[src] -= c*col[dst].
        for mat in (m, u):
            rs, rd = mat[src], mat[dst]
            for k in range(len(rd)):
                rd[k] += c * rs[k]
        rdst, rsrc = uinvt[dst], uinvt[src]
        for k in range(len(rsrc)):
            rsrc[k] -= c * rdst[k]

    def row_neg(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]
        uinvt[i] = [-x for x in uinvt[i]]

    def col_swap(j, k):
        for r in m:
            r[j], r[k] = r[k], r[j]
        vt[j], vt[k] = vt[k], vt[j]
        vinv[j], vinv[k] = vinv[k], vinv[j]

    def col_add(src, dst, c):
        # m, V: col[dst] += c*col[src]; V^{-1}: row[src] -= c*row[dst].
        for r in m:
            r[dst] += c * r[src]
        rs, rd = vt[src], vt[dst]
        for k in range(len(rd)):
            rd[k] += c * rs[k]
        rs, rd = vinv[dst], vinv[src]
        for k in range(len(rd)):
            rd[k] -= c * rs[k]

    def col_neg(j):
        for r in m:
            r[j] = -r[j]
        vt[j] = [-x for x in vt[j]]
        vinv[j] = [-x for x in vinv[j]]

    n = min(nrows, ncols)

    def diagonalize(start: int) -> None:
        for t in range(start, n):
            # minimal-absolute-value pivot over the trailing block
            pivot = None
            best = None
            for i in range(t, nrows):
                ri = m[i]
                for j in range(t, ncols):
                    a = ri[j]
                    if a and (best is None or abs(a) < best):
                        best = abs(a)
                        pivot = (i, j)
                        if best == 1:
                            break
                if best == 1:
                    break
            if pivot is None:
                return
            i, j = pivot
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
            while True:
                # reduce column t below the pivot
                for i in range(t + 1, nrows):
                    if m[i][t]:
                        row_add(t, i, -(m[i][t] // m[t][t]))
                rem_rows = [i for i in range(t + 1, nrows) if m[i][t]]
                if rem_rows:
                    # a remainder is strictly smaller: make it the new pivot
                    i = min(rem_rows, key=lambda k: abs(m[k][t]))
                    row_swap(i, t)
                    continue
                # reduce row t right of the pivot (does not touch column t)
                for j in range(t + 1, ncols):
                    if m[t][j]:
                        col_add(t, j, -(m[t][j] // m[t][t]))
                rem_cols = [j for j in range(t + 1, ncols) if m[t][j]]
                if rem_cols:
                    j = min(rem_cols, key=lambda k: abs(m[t][k]))
                    col_swap(j, t)
                    continue
                break
            if m[t][t] < 0:
                row_neg(t)

    diagonalize(0)
    # enforce the divisibility chain d1 | d2 | ...
    while True:
        viol = None
        for i in range(n - 1):
            a, b = m[i][i], m[i + 1][i + 1]
            if a and b % a != 0:
                viol = i
                break
        if viol is None:
            break
        col_add(viol + 1, viol, 1)
        diagonalize(viol)

    D = IntMatrix(m, cols=ncols)
    U = IntMatrix(u, cols=nrows)
    Uinv = IntMatrix(uinvt, cols=nrows).transpose()
    V = IntMatrix(vt, cols=ncols).transpose()
    Vinv = IntMatrix(vinv, cols=ncols)
    return U, Uinv, D, V, Vinv


def invariant_factor_diagonal(D: IntMatrix) -> list[int]:
    return [D[i][i] for i in range(min(D.rows, D.cols))]


# ---------------------------------------------------------------------------
# Hermite form, kernels, solving
# ---------------------------------------------------------------------------

def _pivot_index(row) -> int:
    for i, x in enumerate(row):
        if x:
            return i
    return len(row)


def hermite_basis(rows: Iterable[Sequence[int]]) -> list[Vector]:
    """Canonical row-Hermite basis of the lattice generated by ``rows``.

    Zero rows are dropped; pivots are positive and entries above each pivot
    are reduced into ``[0, pivot)``, so equal lattices give equal output.
    """
    pending = [list(r) for r in rows if any(r)]
    if not pending:
        return []
    ncols = len(pending[0])
    result: list[list[int]] = []
    col = 0
    while col < ncols and pending:
        live = [r for r in pending if r[col] != 0]
        rest = [r for r in pending if r[col] == 0]
        if live:
            while len(live) > 1:
                live.sort(key=lambda r: abs(r[col]))
                base = live[0]
                nxt = [base]
                for r in live[1:]:
                    q = r[col] // base[col]
                    if q:
                        for k in range(col, ncols):
                            r[k] -= q * base[k]
                    if r[col]:
                        nxt.append(r)
                    elif any(r):
                        rest.append(r)
                live = nxt
            piv = live[0]
            if piv[col] < 0:
                for k in range(col, ncols):
                    piv[k] = -piv[k]
            result.append(piv)
        pending = rest
        col += 1
    # reduce entries above each pivot into [0, pivot)
    for i in range(len(result)):
        p = _pivot_index(result[i])
        a = result[i][p]
        for j in range(i):
            q = result[j][p] // a
            if q:
                row_j = result[j]
                row_i = result[i]
                for k in range(p, ncols):
                    row_j[k] -= q * row_i[k]
    return [tuple(r) for r in result]


def reduce_mod_lattice(basis: Sequence[Vector], v: Sequence[int]) -> Vector:
    """Reduce ``v`` by a Hermite basis; zero remainder means membership."""
    r = list(v)
    for b in basis:
        p = _pivot_index(b)
        if p >= len(r):
            continue
        q = r[p] // b[p]
        if q:
            for k in range(p, len(r)):
                r[k] -= q * b[k]
    return tuple(r)


def lattice_contains(basis: Sequence[Vector], v: Sequence[int]) -> bool:
    """Membership of ``v`` in the lattice spanned by a Hermite basis."""
    return all(x == 0 for x in reduce_mod_lattice(basis, v))


def kernel_basis_rows(A: IntMatrix) -> list[Vector]:
    """Basis rows of the saturated integer kernel ``{v : A*v == 0}``.

    Column elimination with unimodular transforms; the output spans the whole
    integer kernel, hence is saturated by construction.
    """
    nrows, ncols = A.rows, A.cols
    if ncols == 0:
        return []
    # m[j] holds column j of A
    m = [list(A.column(j)) for j in range(ncols)]
    v = IntMatrix.identity(ncols).to_lists()
    pivot_cols: set[int] = set()
    for eqn in range(nrows):
        live = [j for j in range(ncols) if j not in pivot_cols and m[j][eqn] != 0]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda j: abs(m[j][eqn]))
            base = live[0]
            nxt = [base]
            mb, vb = m[base], v[base]
            for j in live[1:]:
                q = m[j][eqn] // mb[eqn]
                if q:
                    mj, vj = m[j], v[j]
                    for k in range(eqn, nrows):
                        mj[k] -= q * mb[k]
                    for k in range(ncols):
                        vj[k] -= q * vb[k]
                if m[j][eqn]:
                    nxt.append(j)
            live = nxt
        pivot_cols.add(live[0])
    return [tuple(v[j]) for j in range(ncols) if j not in pivot_cols]


def kernel_basis(A: IntMatrix) -> IntMatrix:
    return IntMatrix(kernel_basis_rows(A), cols=A.cols)


def solve_vector(A: IntMatrix, b: Sequence[int]):
    """One integer solution ``x`` of ``A*x == b``, or ``None``."""
    U, _, D, V, _ = smith_with_inverses(A)
    c = U.apply(b)
    n = min(A.rows, A.cols)
    y = [0] * A.cols
    for i in range(A.rows):
        d = D[i][i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    return V.apply(y)


def solve_matrix(A: IntMatrix, B: IntMatrix):
    """Integer matrix ``X`` with ``A*X == B``, or ``None``."""
    if A.rows != B.rows:
        raise ValueError("shape mismatch")
    cols = []
    for j in range(B.cols):
        x = solve_vector(A, B.column(j))
        if x is None:
            return None
        cols.append(x)
    if not cols:
        return IntMatrix.zero(A.cols, 0)
    return IntMatrix([list(r) for r in zip(*cols)], cols=B.cols)


def express_in_basis(basis: Sequence[Vector], v: Sequence[int]):
    """Coefficients ``c`` with ``sum(c_i * basis_i) == v``, or ``None``."""
    if not basis:
        return () if all(x == 0 for x in v) else None
    B = IntMatrix(basis)
    x = solve_vector(B.transpose(), v)
    return x if x is None else tuple(x)
