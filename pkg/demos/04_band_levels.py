"""Finite levels of the band group and their canonical degree-2 classes.

A level is a Galois group together with a modulus n; its character module is
the augmentation kernel of Z/n[Gamma].  The degree-2 cohomology is cyclic of
order gcd(n, |Gamma|), transitions between levels are the natural
projections, and the distinguished -1 classes are compatible, which is what
makes the tower limit canonically the profinite integers.
"""

from rigidcoh import (
    FiniteGroup,
    alpha_level,
    char_module,
    cyclic_reduction,
    h2_u_level,
    hom_u_to_Z,
    norm_one_in_sl2_pair,
    small_group_catalogue,
    transition_h2,
)

print("character module orders (must be n^(|G|-1)):")
for name, grp in small_group_catalogue(4):
    level = char_module(grp, 3)
    print(f"  {name}: order {level.char_module.order}")

print("\nH^2 at finite levels:")
for name, grp in small_group_catalogue(8):
    if grp.order not in (2, 4, 6, 8):
        continue
    for n in (2, 3, 4, 6):
        g = h2_u_level(char_module(grp, n))
        print(f"  ({name}, n={n}): {g.invariant_factors or '0'}")
    break  # one group suffices for the narrative

c8, c4, c2 = FiniteGroup.cyclic(8), FiniteGroup.cyclic(4), FiniteGroup.cyclic(2)
l8, l4, l2 = char_module(c8, 8), char_module(c4, 4), char_module(c2, 2)
print("\ntower C8 -> C4 -> C2 with n = 8 -> 4 -> 2:")
t84 = transition_h2(l8, l4, cyclic_reduction(8, 4))
t42 = transition_h2(l4, l2, cyclic_reduction(4, 2))
print("  H^2 levels:", l8.gcd, "->", l4.gcd, "->", l2.gcd, "(natural projections)")
a8 = alpha_level(l8)
print("  alpha at the top:", a8)
print("  pushed down the tower:", t42.apply(t84.apply(a8)), "=", alpha_level(l2))

pair = norm_one_in_sl2_pair()
print("\nhomomorphisms from the level-(C2, 2) band to mu2:",
      hom_u_to_Z(char_module(c2, 2), pair).invariant_factors)
