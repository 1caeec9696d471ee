"""Batch verification through task documents.

Documents declare named objects and list operation invocations; results come
back in order, in a canonical serialization that is byte-identical for any
parallelism degree.  The same machinery backs the `rigidcoh` command line
(`rigidcoh run`, `rigidcoh check`, `rigidcoh examples`).
"""

from rigidcoh.runner import all_succeeded, render_text, run
from rigidcoh.taskio import canonical_json, parse, serialize

DOC = {
    "declarations": {
        "groups": [{"id": "c2", "table": [[0, 1], [1, 0]]}],
        "lattices": [
            {"id": "Ysign", "group": "c2", "rank": 1, "action": [[[1]], [[-1]]]},
        ],
        "pairs": [
            {"id": "norm_one_sl2", "y": "Ysign", "ybar": "Ysign", "matrix": [[2]]},
        ],
        "levels": [{"id": "L", "group": "c2", "n": 2}],
    },
    "tasks": [
        {"op": "rigid_h1_torus", "pair": "norm_one_sl2"},
        {"op": "infres_check", "pair": "norm_one_sl2"},
        {"op": "h2_u_level", "level": "L"},
        {"op": "alpha_level", "level": "L"},
        {"op": "hom_u_to_Z", "level": "L", "pair": "norm_one_sl2"},
    ],
}

doc = parse(canonical_json(DOC))
print("document round-trips:", parse(serialize(doc)) == doc)

results = run(doc, parallelism=2)
print("all tasks succeeded:", all_succeeded(results))
print("\nhuman-readable rendering:\n")
print(render_text(results))

print("determinism across parallelism degrees:",
      canonical_json(run(doc, 1)) == canonical_json(run(doc, 8)))
