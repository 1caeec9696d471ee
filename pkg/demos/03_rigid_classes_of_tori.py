"""Rigid cohomology of isogeny pairs [Z -> S] and the four-term exact row.

Three standing examples over the quadratic extension:

* the split pair [mu_2 -> Gm],
* the norm-one torus with trivial center,
* the norm-one torus inside SL2 with center mu_2.

The last one is the interesting case: its rigid group is Z/4, twice as deep
as the classical H^1 = Z/2 of the bare torus, and the extra depth is exactly
the band direction.
"""

from rigidcoh import (
    RigidClass,
    band_norm_kernel_group,
    infres_check,
    norm_one_in_sl2_pair,
    norm_one_torus_pair,
    restriction_to_band,
    rigid_h1_torus,
    split_mu2_gm_pair,
    tate_h_neg1,
    transgression,
)

for label, pair in [
    ("split [mu2 -> Gm]", split_mu2_gm_pair()),
    ("norm-one torus, Z = 1", norm_one_torus_pair()),
    ("norm-one torus in SL2", norm_one_in_sl2_pair()),
]:
    g = rigid_h1_torus(pair)
    print(f"{label}: rigid H^1 = {g.invariant_factors or '0'}")

pair = norm_one_in_sl2_pair()
print("\nclassical H^1 of the bare torus:", tate_h_neg1(pair.y).invariant_factors)
print("band norm-kernel group (Ybar/Y)^N:", band_norm_kernel_group(pair).invariant_factors)

c = RigidClass(pair, (1,))
print("generator restricted to the band:", restriction_to_band(pair, c))
print("a representative from Y dies:", restriction_to_band(pair, RigidClass(pair, (2,))))

split = split_mu2_gm_pair()
print("\ntransgression of the half cocharacter in the split pair:",
      transgression(split, (1,)), "(the nonzero class of Y^G/NY)")

print("\nexactness of the inflation-restriction row:")
for label, pair in [
    ("norm-one, Z = 1 ", norm_one_torus_pair()),
    ("split [mu2 -> Gm]", split_mu2_gm_pair()),
    ("norm-one in SL2 ", norm_one_in_sl2_pair()),
]:
    r = infres_check(pair)
    print(f"  {label}: 0 -> {r.h_neg1_factors or 0} -> {r.rigid_factors or 0} -> "
          f"{r.band_factors or 0} -> {r.h0_factors or 0}   exact: {r.exact}")
