"""Tate cohomology of Galois lattices and finite modules, degrees -2..1.

The quadratic sign lattice is the smallest interesting example: its degree -1
group detects the norm-one torus, while the trivial lattice picks up the
Brauer-type degree-0 group.  Finite modules are carried by lattice
presentations and pair perfectly with their duals.
"""

from rigidcoh import (
    FiniteGaloisModule,
    FiniteGroup,
    GaloisLattice,
    IntMatrix,
    SubLattice,
    dual_module,
    finite_module_pairing,
    h1_finite,
    h1_lattice,
    small_group_catalogue,
    tate_h0,
    tate_h_neg1,
    tate_h_neg2_finite,
)

c2 = FiniteGroup.cyclic(2)
sign = GaloisLattice(c2, 1, [IntMatrix.identity(1), IntMatrix([[-1]])])
trivial = GaloisLattice.with_trivial_action(c2, 1)

print("sign lattice (quadratic norm-one torus):")
print("  H^0_Tate =", tate_h0(sign).invariant_factors or "0")
print("  H^-1     =", tate_h_neg1(sign).invariant_factors or "0")
print("  H^1      =", h1_lattice(sign).invariant_factors or "0")

print("trivial lattice (split torus):")
print("  H^0_Tate =", tate_h0(trivial).invariant_factors or "0")
print("  H^-1     =", tate_h_neg1(trivial).invariant_factors or "0")

print("\ninduced modules are cohomologically trivial:")
for name, grp in small_group_catalogue(8):
    reg = GaloisLattice.regular(grp)
    assert tate_h0(reg).is_trivial() and tate_h_neg1(reg).is_trivial()
    assert h1_lattice(reg).is_trivial()
    print(f"  Z[{name}]: all three vanish")

# a finite module and its dual pair into Q/Z
q = FiniteGaloisModule(sign, SubLattice.spanned_by(1, [[2]]))
d = dual_module(q)
print("\nfinite module Z/2 with inverted action:")
print("  H_1  =", tate_h_neg2_finite(q).invariant_factors)
print("  H^1(dual) =", h1_finite(d).invariant_factors, "(duality: equal orders)")
print("  evaluation pairing <1, 1> =", finite_module_pairing(q, (1,), (1,)))
