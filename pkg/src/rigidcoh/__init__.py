"""Exact finite-level rigid Galois cohomology.

Everything is integer linear algebra on lattices with finite group actions:
Tate cohomology in degrees -2..1, the rigid cohomology of isogeny pairs
[Z -> S] and [Z -> G], finite levels of the band group with their canonical
degree-2 classes, the component-group duality pairing, and the exact
Laurent-series discriminant term of the transfer factor.
"""

from .abelian import (
    FinAbGroup,
    FinAbMap,
    QModZ,
    SubLattice,
    TorsionCharacter,
    dual_group_characters,
    extend_character,
    lattice_sum,
    preimage_lattice,
    saturation,
    subquotient,
)
from .bands import (
    ULevel,
    alpha_level,
    char_module,
    h2_u_level,
    hom_u_to_Z,
    transition_char,
    transition_h2,
)
from .catalog import (
    adjoint_datum,
    cartan_matrix,
    catalogue_entries,
    norm_one_in_sl2_pair,
    norm_one_torus_pair,
    pair_with_full_center,
    pair_with_trivial_center,
    simply_connected_datum,
    split_mu2_gm_pair,
    swap_torus_nested_pairs,
)
from .endoscopy import (
    InvariantClass,
    RefinedEndoscopicDatum,
    all_refinements,
    endoscopic_subsystem,
    enlarge_center_invariance,
    lift_to_refined,
    restrict_to_y,
    transfer_pairing_term,
    validate_refined,
)
from .errors import RigidcohError
from .groups import FiniteGroup, GroupHom, cyclic_reduction, sign_hom, small_group_catalogue
from .intmatrix import (
    IntMatrix,
    hermite_basis,
    kernel_basis,
    smith_normal_form,
    solve_matrix,
    solve_vector,
)
from .laurent import (
    LaurentSeries,
    ValuedNumber,
    abs_value,
    char_value,
    delta_IV,
    is_strongly_regular,
    valuation,
)
from .modules import (
    EquivariantMap,
    FiniteGaloisModule,
    GaloisLattice,
    augmentation_sublattice,
    dual_module,
    finite_invariants,
    finite_module_pairing,
    h1_finite,
    h1_lattice,
    induced_h1,
    induced_tate_h0,
    induced_tate_h_neg1,
    invariants_sublattice,
    norm_matrix,
    tate_h0,
    tate_h_neg1,
    tate_h_neg2_finite,
)
from .rootdata import (
    ReductivePair,
    RootDatum,
    component_group_dual_center,
    coroot_sublattice,
    dual_root_datum,
    is_elliptic,
    pairing_perfectness,
    rigid_h1_reductive,
    tn_pairing,
    torus_to_reductive_map,
    weyl_group,
    weyl_quotient_triviality,
)
from .tori import (
    IsogenyPair,
    PairMorphism,
    RigidClass,
    band_norm_kernel_group,
    h1_F_torus,
    h2_F_torus,
    induced_class_map,
    infres_check,
    restriction_to_band,
    rigid_h1_torus,
    transgression,
)

__version__ = "0.1.0"
