"""Endoscopic subsystems, refined parameters, and the transfer pairing term.

A torsion parameter on the cocharacter lattice carves out the coroots it
annihilates; refining it means lifting along the central isogeny, which is a
torsor under the characters of Ybar/Y.  The cohomological term of the
absolute transfer factor is the (negated) evaluation of the refinement on a
rigid class, and it is blind to enlarging the center.
"""

from rigidcoh import (
    InvariantClass,
    QModZ,
    RefinedEndoscopicDatum,
    TorsionCharacter,
    all_refinements,
    dual_group_characters,
    endoscopic_subsystem,
    enlarge_center_invariance,
    extend_character,
    lift_to_refined,
    norm_one_in_sl2_pair,
    rigid_h1_torus,
    swap_torus_nested_pairs,
    transfer_pairing_term,
    validate_refined,
)
from rigidcoh.abelian import SubLattice
from rigidcoh.catalog import catalogue_entries
from rigidcoh.intmatrix import express_in_basis, solve_matrix

entries = {e["name"]: e["pair"] for e in catalogue_entries()}

# carve an endoscopic subsystem out of SL3
pr = entries["sl3_split_fullZ"]
s = TorsionCharacter([QModZ(1, 3), QModZ(2, 3)])
sub = endoscopic_subsystem(pr, s)
print("SL3 with parameter (1/3, 2/3): retained coroots", sub.coroots)

# elliptic endoscopy of SL2 by a torus: nothing survives
sl2 = entries["sl2_split_fullZ"]
half = TorsionCharacter([QModZ(1, 2)])
print("SL2 with parameter 1/2: retained roots", endoscopic_subsystem(sl2, half).roots)

# refinements of the SL2 parameter: a torsor with two elements
lift = lift_to_refined(sl2, half)
print("\none refinement of 1/2:", [str(v) for v in lift.values])
print("all refinements:", sorted(str(l.values[0]) for l in all_refinements(sl2, half)))
print("validity:", validate_refined(RefinedEndoscopicDatum.build(sl2, lift)).valid)

# the transfer pairing term on the norm-one torus inside SL2
pair = norm_one_in_sl2_pair()
inv = InvariantClass.from_representative(pair, (1,))
sdot = TorsionCharacter([QModZ(1, 4)])
print("\ntransfer pairing term <inv, sdot>^{-1} as an additive value:",
      transfer_pairing_term(inv, sdot))

# enlarging the center does not change the term
small, large = swap_torus_nested_pairs()
rigid = rigid_h1_torus(small)
sdot = dual_group_characters(rigid)[0]
phi = solve_matrix(small.inclusion.matrix.transpose(),
                   large.inclusion.matrix.transpose()).transpose()
img = SubLattice.spanned_by(2, phi.transpose().entries)
values = [sdot(express_in_basis(phi.transpose().entries, row)) for row in img.basis.entries]
sddot = extend_character(img, values)
report = enlarge_center_invariance(
    small, large, InvariantClass.from_representative(small, rigid.generator_lifts[0]),
    sdot, sddot,
)
print("\nrank-2 swap torus, mu2 inside mu4:",
      report.value_small, "=", report.value_large, "->", report.equal)
