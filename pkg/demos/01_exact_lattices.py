"""Exact integer lattices: normal forms, kernels, and finite subquotients.

Everything downstream reduces to these four operations, so this walkthrough
starts with plain matrices.
"""

from rigidcoh import (
    IntMatrix,
    SubLattice,
    kernel_basis,
    saturation,
    smith_normal_form,
    subquotient,
)

# Smith normal form with its unimodular transforms
A = IntMatrix([[2, 4], [6, 8]])
U, D, V = smith_normal_form(A)
print("A =", A.to_lists())
print("U A V =", (U * A * V).to_lists(), "with det U =", U.det(), "det V =", V.det())
print("invariant factors:", [D[i][i] for i in range(2)])

# integer kernels are saturated by construction
K = kernel_basis(IntMatrix([[1, 2, 3], [2, 4, 6]]))
print("\nkernel of [[1,2,3],[2,4,6]]:", K.to_lists())

# a finite subquotient with working class arithmetic
full = SubLattice.full(2)
checker = SubLattice.spanned_by(2, [[1, 1], [1, -1]])
Q = subquotient(full, checker)
print("\nZ^2 modulo the checkerboard lattice:", Q.invariant_factors)
print("class of (1, 0):", Q.class_of((1, 0)))
print("class of (1, 1):", Q.class_of((1, 1)), "(inside the sublattice)")

# saturation recovers the primitive vector
S = SubLattice.spanned_by(2, [[2, 2]])
print("\nsaturation of span{(2,2)}:", saturation(S).hermite_rows())
