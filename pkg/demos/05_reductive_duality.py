"""Reductive pairs [Z -> G]: rigid cohomology against the dual component group.

The duality statement: evaluation identifies the rigid cohomology of a pair
with the Q/Z-dual of pi_0 of the fixed-center part of the dual group's
center.  The catalogue covers the split, outer, and elliptic twists of the
classical small-rank families with trivial and full centers; the battery
checks perfectness everywhere, plus the elliptic vanishing and the Weyl-
quotient triviality that make the construction independent of choices.
"""

from rigidcoh import (
    component_group_dual_center,
    dual_group_characters,
    is_elliptic,
    pairing_perfectness,
    rigid_h1_reductive,
    tate_h0,
    tn_pairing,
    weyl_quotient_triviality,
)
from rigidcoh.catalog import catalogue_entries

entries = catalogue_entries()
print(f"catalogue: {len(entries)} (type, twist, center) combinations\n")

print(f"{'entry':26s} {'rigid':10s} {'pi0 dual':10s} perfect  elliptic  weyl")
for e in entries:
    pair = e["pair"]
    rep = pairing_perfectness(pair)
    w = weyl_quotient_triviality(pair)
    print(
        f"{e['name']:26s} {str(rep.rigid_factors or '0'):10s} "
        f"{str(rep.pi0_dual_factors or '0'):10s} {str(rep.perfect):7s}  "
        f"{str(is_elliptic(pair.datum)):8s}  {w.passed}"
    )

print("\nthe quadratic SL2 with center mu2, in coordinates:")
sl2 = next(e["pair"] for e in entries if e["name"] == "sl2_split_fullZ")
rigid = rigid_h1_reductive(sl2)
tor = component_group_dual_center(sl2)
chi = dual_group_characters(tor)[0]
print("  rigid group:", rigid.invariant_factors, " dual component group:", tor.invariant_factors)
print("  pairing of the generators:", tn_pairing(sl2, rigid.generator_lifts[0], chi))

print("\nelliptic vanishing (simply connected entries):")
for e in entries:
    if e["simply_connected"] and is_elliptic(e["pair"].datum):
        h0 = tate_h0(e["pair"].datum.cochar)
        print(f"  {e['name']:26s} H^0_Tate = {h0.invariant_factors or '0'}")
