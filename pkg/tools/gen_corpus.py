"""Regenerate the bundled worked-examples corpus (src/rigidcoh/data/corpus.json).

The corpus exercises every task type once with the package's standing worked
examples; characters that must satisfy vanishing conditions are computed here
so the shipped file stays consistent with the library.
"""

import pathlib
import sys

from rigidcoh import (
    IntMatrix,
    SubLattice,
    dual_group_characters,
    extend_character,
    rigid_h1_torus,
    swap_torus_nested_pairs,
)
from rigidcoh.intmatrix import express_in_basis, solve_matrix
from rigidcoh.runner import OPERATIONS
from rigidcoh.taskio import canonical_json, parse


def swap_pair_data():
    """Inclusion matrices, Ybar actions, and a consistent character pair."""
    small, large = swap_torus_nested_pairs()
    rigid = rigid_h1_torus(small)
    sdot = dual_group_characters(rigid)[0]
    J, Jp = small.inclusion.matrix, large.inclusion.matrix
    phi = solve_matrix(J.transpose(), Jp.transpose()).transpose()
    img = SubLattice.spanned_by(2, phi.transpose().entries)
    values = [sdot(express_in_basis(phi.transpose().entries, row)) for row in img.basis.entries]
    sddot = extend_character(img, values)
    return small, large, rigid, sdot, sddot


def build() -> dict:
    small, large, rigid, sdot, sddot = swap_pair_data()

    def mat(m: IntMatrix):
        return [list(r) for r in m.entries]

    declarations = {
        "groups": [
            {"id": "c2", "table": [[0, 1], [1, 0]]},
            {"id": "c4", "table": [[(i + j) % 4 for j in range(4)] for i in range(4)]},
        ],
        "quotient_maps": [
            {"id": "c4_to_c2", "source": "c4", "target": "c2", "images": [0, 1, 0, 1]},
        ],
        "lattices": [
            {"id": "Ytriv", "group": "c2", "rank": 1},
            {"id": "Ysign", "group": "c2", "rank": 1, "action": [[[1]], [[-1]]]},
            {"id": "Yswap", "group": "c2", "rank": 2,
             "action": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]},
            {"id": "YbarSwapSmall", "group": "c2", "rank": 2,
             "action": [mat(small.ybar.action[0]), mat(small.ybar.action[1])]},
            {"id": "YbarSwapLarge", "group": "c2", "rank": 2,
             "action": [mat(large.ybar.action[0]), mat(large.ybar.action[1])]},
        ],
        "pairs": [
            {"id": "split_mu2_gm", "y": "Ytriv", "ybar": "Ytriv", "matrix": [[2]]},
            {"id": "norm_one", "y": "Ysign", "ybar": "Ysign", "matrix": [[1]]},
            {"id": "norm_one_sl2", "y": "Ysign", "ybar": "Ysign", "matrix": [[2]]},
            {"id": "swap_small", "y": "Yswap", "ybar": "YbarSwapSmall",
             "matrix": mat(small.inclusion.matrix)},
            {"id": "swap_large", "y": "Yswap", "ybar": "YbarSwapLarge",
             "matrix": mat(large.inclusion.matrix)},
        ],
        "modules": [
            {"id": "Qc", "ambient": "Ysign", "relations": [[2]]},
        ],
        "levels": [
            {"id": "L_c2_n2", "group": "c2", "n": 2},
            {"id": "L_c4_n4", "group": "c4", "n": 4},
        ],
        "root_data": [
            {"id": "sl2", "group": "c2", "rank": 1,
             "roots": [[-2], [2]], "coroots": [[-1], [1]], "simple": [1]},
            {"id": "rank1_torus", "group": "c2", "rank": 1,
             "roots": [], "coroots": [], "simple": []},
            {"id": "sl3", "group": "c2", "rank": 2,
             "roots": [[-2, 1], [-1, -1], [-1, 2], [1, -2], [1, 1], [2, -1]],
             "coroots": [[-1, 0], [-1, -1], [0, 1], [0, -1], [1, 1], [1, 0]],
             "simple": [5, 2]},
        ],
        "reductive_pairs": [
            {"id": "rp_sl2_mu2", "datum": "sl2", "center_matrix": [[2]]},
            {"id": "rp_sl3_mu3", "datum": "sl3", "center_matrix": [[2, -1], [-1, 2]]},
        ],
        "characters": [
            {"id": "chi_half", "values": ["1/2"]},
            {"id": "chi_quarter", "values": ["1/4"]},
            {"id": "s_third", "values": ["1/3", "2/3"]},
            {"id": "sdot_swap", "values": [str(v) for v in sdot.values]},
            {"id": "sddot_swap", "values": [str(v) for v in sddot.values]},
        ],
        "series": [
            {"id": "one_plus_t", "p": 3, "lead": 0, "coeffs": [1, 1]},
            {"id": "t", "p": 3, "lead": 1, "coeffs": [1]},
            {"id": "one_plus_t_prec8", "p": 3, "lead": 0, "coeffs": [1, 1], "precision": 8},
        ],
    }

    rep = list(rigid.generator_lifts[0])
    tasks = [
        {"op": "smith_normal_form", "matrix": [[2, 4], [6, 8]]},
        {"op": "kernel_basis", "matrix": [[1, 2, 3], [2, 4, 6]]},
        {"op": "subquotient", "ambient_rank": 2,
         "numerator": [[1, 0], [0, 1]], "denominator": [[1, 1], [1, -1]]},
        {"op": "saturation", "ambient_rank": 2, "basis": [[2, 2]]},
        {"op": "norm_matrix", "lattice": "Ysign"},
        {"op": "augmentation_sublattice", "lattice": "Yswap"},
        {"op": "invariants_sublattice", "lattice": "Yswap"},
        {"op": "tate_h0", "lattice": "Ytriv"},
        {"op": "tate_h_neg1", "lattice": "Ysign"},
        {"op": "h1_lattice", "lattice": "Ysign"},
        {"op": "tate_h_neg2_finite", "module": "Qc"},
        {"op": "h1_finite", "module": "Qc"},
        {"op": "dual_module", "module": "Qc"},
        {"op": "rigid_h1_torus", "pair": "norm_one_sl2"},
        {"op": "h1_F_torus", "lattice": "Ysign"},
        {"op": "h2_F_torus", "lattice": "Ytriv"},
        {"op": "restriction_to_band", "pair": "norm_one_sl2", "representative": [1]},
        {"op": "transgression", "pair": "split_mu2_gm", "representative": [1]},
        {"op": "infres_check", "pair": "norm_one_sl2"},
        {"op": "induced_class_map", "source_pair": "norm_one", "target_pair": "norm_one",
         "y_matrix": [[2]], "ybar_matrix": [[2]], "representative": [1]},
        {"op": "char_module", "group": "c2", "n": 2},
        {"op": "hom_u_to_Z", "level": "L_c2_n2", "pair": "norm_one_sl2"},
        {"op": "h2_u_level", "level": "L_c2_n2"},
        {"op": "transition_char", "fine": "L_c4_n4", "coarse": "L_c2_n2",
         "quotient_map": "c4_to_c2"},
        {"op": "transition_h2", "fine": "L_c4_n4", "coarse": "L_c2_n2",
         "quotient_map": "c4_to_c2"},
        {"op": "alpha_level", "level": "L_c4_n4"},
        {"op": "coroot_sublattice", "root_datum": "sl2"},
        {"op": "rigid_h1_reductive", "reductive_pair": "rp_sl2_mu2"},
        {"op": "component_group_dual_center", "reductive_pair": "rp_sl2_mu2"},
        {"op": "tn_pairing", "reductive_pair": "rp_sl2_mu2",
         "representative": [1], "character": "chi_half"},
        {"op": "pairing_perfectness", "reductive_pair": "rp_sl2_mu2"},
        {"op": "weyl_group", "root_datum": "sl3"},
        {"op": "weyl_quotient_triviality", "reductive_pair": "rp_sl3_mu3"},
        {"op": "is_elliptic", "root_datum": "sl2"},
        {"op": "dual_root_datum", "root_datum": "sl2"},
        {"op": "endoscopic_subsystem", "reductive_pair": "rp_sl3_mu3", "character": "s_third"},
        {"op": "validate_refined", "reductive_pair": "rp_sl2_mu2", "character": "chi_quarter"},
        {"op": "lift_to_refined", "pair": "norm_one_sl2", "character": "chi_half"},
        {"op": "transfer_pairing_term", "pair": "norm_one_sl2",
         "representative": [1], "character": "chi_quarter"},
        {"op": "enlarge_center_invariance", "pair": "swap_small", "pair_prime": "swap_large",
         "representative": rep, "character": "sdot_swap", "character_prime": "sddot_swap"},
        {"op": "valuation", "series": "t"},
        {"op": "abs_value", "series": "t"},
        {"op": "is_strongly_regular", "root_datum": "sl2", "point": ["one_plus_t"]},
        {"op": "delta_IV", "root_datum": "sl2", "sub_datum": "rank1_torus",
         "point": ["one_plus_t_prec8"]},
    ]
    return {"declarations": declarations, "tasks": tasks}


def main():
    doc = build()
    covered = {t["op"] for t in doc["tasks"]}
    missing = set(OPERATIONS) - covered
    if missing:
        sys.exit(f"corpus misses operations: {sorted(missing)}")
    text = canonical_json(doc)
    parse(text)  # must validate
    out = pathlib.Path(__file__).resolve().parent.parent / "src" / "rigidcoh" / "data" / "corpus.json"
    out.write_text(text, encoding="utf-8")
    print(f"wrote {out} ({len(doc['tasks'])} tasks)")


if __name__ == "__main__":
    main()
