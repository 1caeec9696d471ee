"""Task dispatch: one entry per library operation, deterministic output.

Tasks are pure; the runner may evaluate them on a thread pool, but results
are assembled in task order and rendered canonically, so output bytes do not
depend on the parallelism degree.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable

from . import bands, endoscopy, laurent, modules, rootdata, tori
from .abelian import (
    FinAbGroup,
    QModZ,
    SubLattice,
    TorsionCharacter,
    saturation,
    subquotient,
)
from .errors import RigidcohError, SchemaError
from .intmatrix import IntMatrix, invariant_factor_diagonal, kernel_basis, smith_normal_form
from .taskio import Environment, TaskDocument, canonical_json


# -- payload renderers ---------------------------------------------------------

def render_group(g: FinAbGroup) -> dict:
    return {
        "invariant_factors": list(g.invariant_factors),
        "generator_lifts": [list(v) for v in g.generator_lifts],
        "order": g.order,
    }


def render_matrix(m: IntMatrix) -> list:
    return [list(r) for r in m.entries]


def render_sublattice(s: SubLattice) -> dict:
    return {"ambient_rank": s.ambient_rank, "basis": [list(r) for r in s.hermite_rows()]}


def render_valued(v: laurent.ValuedNumber) -> dict:
    return {"base": v.base, "exponent": f"{v.exponent.numerator}/{v.exponent.denominator}"}


def render_module(q: modules.FiniteGaloisModule) -> dict:
    return {
        "order": q.order,
        "invariant_factors": list(q.abelian_group().invariant_factors),
        "relations": [list(r) for r in q.relations.hermite_rows()],
        "action": [render_matrix(a) for a in q.ambient.action],
    }


def render_character(chi: TorsionCharacter) -> dict:
    return {"values": [str(v) for v in chi.values]}


def render_root_datum(rd: rootdata.RootDatum) -> dict:
    return {
        "rank": rd.rank,
        "roots": [list(a) for a in rd.roots],
        "coroots": [list(a) for a in rd.coroots],
        "simple": list(rd.simple_indices),
    }


def _coords(c) -> list:
    return list(c)


# -- task handlers ---------------------------------------------------------------

def _weyl_bound() -> int:
    raw = os.environ.get("RIGIDCOH_MAX_WEYL")
    return int(raw) if raw else rootdata.DEFAULT_WEYL_BOUND


def _series_point(env: Environment, ids, path) -> tuple:
    return tuple(env.lookup("series", s, path) for s in ids)


def _character(env: Environment, task, key="character"):
    return env.lookup("characters", task[key], f"task.{key}")


# Each entry: op name -> (field specs, handler(env, task) -> payload).
# A field spec is "name" for plain data, "name:kind" for a declaration
# reference, or "name:kind[]" for a list of references.
OPERATIONS: dict[str, tuple[tuple[str, ...], Callable[[Environment, dict], Any]]] = {}


def op(name: str, *fields: str):
    def deco(fn):
        OPERATIONS[name] = (fields, fn)
        return fn

    return deco


def _field_specs(fields: tuple[str, ...]):
    for spec in fields:
        name, _, kind = spec.partition(":")
        many = kind.endswith("[]")
        yield name, (kind[:-2] if many else kind) or None, many


# exact integer linear algebra ------------------------------------------------

@op("smith_normal_form", "matrix")
def _(env, task):
    U, D, V = smith_normal_form(IntMatrix(task["matrix"]))
    return {
        "U": render_matrix(U),
        "D": render_matrix(D),
        "V": render_matrix(V),
        "invariant_factors": [d for d in invariant_factor_diagonal(D) if d],
    }


@op("kernel_basis", "matrix")
def _(env, task):
    K = kernel_basis(IntMatrix(task["matrix"]))
    return {"basis": render_matrix(K)}


@op("subquotient", "ambient_rank", "numerator", "denominator")
def _(env, task):
    n = task["ambient_rank"]
    B = SubLattice.spanned_by(n, task["numerator"])
    A = SubLattice.spanned_by(n, task["denominator"])
    return render_group(subquotient(B, A))


@op("saturation", "ambient_rank", "basis")
def _(env, task):
    s = saturation(SubLattice.spanned_by(task["ambient_rank"], task["basis"]))
    return render_sublattice(s)


# Galois lattices and Tate cohomology ----------------------------------------

@op("norm_matrix", "lattice:lattices")
def _(env, task):
    M = env.lookup("lattices", task["lattice"], "task.lattice")
    return {"matrix": render_matrix(modules.norm_matrix(M))}


@op("augmentation_sublattice", "lattice:lattices")
def _(env, task):
    M = env.lookup("lattices", task["lattice"], "task.lattice")
    return render_sublattice(modules.augmentation_sublattice(M))


@op("invariants_sublattice", "lattice:lattices")
def _(env, task):
    M = env.lookup("lattices", task["lattice"], "task.lattice")
    return render_sublattice(modules.invariants_sublattice(M))


@op("tate_h0", "lattice:lattices")
def _(env, task):
    return render_group(modules.tate_h0(env.lookup("lattices", task["lattice"], "task.lattice")))


@op("tate_h_neg1", "lattice:lattices")
def _(env, task):
    return render_group(modules.tate_h_neg1(env.lookup("lattices", task["lattice"], "task.lattice")))


@op("h1_lattice", "lattice:lattices")
def _(env, task):
    return render_group(modules.h1_lattice(env.lookup("lattices", task["lattice"], "task.lattice")))


@op("tate_h_neg2_finite", "module:modules")
def _(env, task):
    return render_group(modules.tate_h_neg2_finite(env.lookup("modules", task["module"], "task.module")))


@op("h1_finite", "module:modules")
def _(env, task):
    return render_group(modules.h1_finite(env.lookup("modules", task["module"], "task.module")))


@op("dual_module", "module:modules")
def _(env, task):
    return render_module(modules.dual_module(env.lookup("modules", task["module"], "task.module")))


# tori -------------------------------------------------------------------------

@op("rigid_h1_torus", "pair:pairs")
def _(env, task):
    return render_group(tori.rigid_h1_torus(env.lookup("pairs", task["pair"], "task.pair")))


@op("h1_F_torus", "lattice:lattices")
def _(env, task):
    return render_group(tori.h1_F_torus(env.lookup("lattices", task["lattice"], "task.lattice")))


@op("h2_F_torus", "lattice:lattices")
def _(env, task):
    return render_group(tori.h2_F_torus(env.lookup("lattices", task["lattice"], "task.lattice")))


@op("restriction_to_band", "pair:pairs", "representative")
def _(env, task):
    pair = env.lookup("pairs", task["pair"], "task.pair")
    c = tori.RigidClass(pair, tuple(task["representative"]))
    return {"class": _coords(tori.restriction_to_band(pair, c))}


@op("transgression", "pair:pairs", "representative")
def _(env, task):
    pair = env.lookup("pairs", task["pair"], "task.pair")
    return {"class": _coords(tori.transgression(pair, tuple(task["representative"])))}


@op("infres_check", "pair:pairs")
def _(env, task):
    return tori.infres_check(env.lookup("pairs", task["pair"], "task.pair")).as_dict()


@op("induced_class_map", "source_pair:pairs", "target_pair:pairs", "y_matrix", "ybar_matrix", "representative")
def _(env, task):
    src = env.lookup("pairs", task["source_pair"], "task.source_pair")
    tgt = env.lookup("pairs", task["target_pair"], "task.target_pair")
    mor = tori.PairMorphism(src, tgt, IntMatrix(task["y_matrix"]), IntMatrix(task["ybar_matrix"]))
    c = tori.RigidClass(src, tuple(task["representative"]))
    out = tori.induced_class_map(mor, c)
    return {"representative": list(out.representative), "class": _coords(out.coords())}


# band-group levels ---------------------------------------------------------------

@op("char_module", "group:groups", "n")
def _(env, task):
    grp = env.lookup("groups", task["group"], "task.group")
    level = bands.char_module(grp, task["n"])
    return {
        "order": level.char_module.order,
        "invariant_factors": list(level.char_module.abelian_group().invariant_factors),
        "rank": level.char_module.rank,
    }


@op("hom_u_to_Z", "level:levels", "pair:pairs")
def _(env, task):
    level = env.lookup("levels", task["level"], "task.level")
    pair = env.lookup("pairs", task["pair"], "task.pair")
    return render_group(bands.hom_u_to_Z(level, pair))


@op("h2_u_level", "level:levels")
def _(env, task):
    return render_group(bands.h2_u_level(env.lookup("levels", task["level"], "task.level")))


@op("transition_char", "fine:levels", "coarse:levels", "quotient_map:quotient_maps")
def _(env, task):
    t = bands.transition_char(
        env.lookup("levels", task["fine"], "task.fine"),
        env.lookup("levels", task["coarse"], "task.coarse"),
        env.lookup("quotient_maps", task["quotient_map"], "task.quotient_map"),
    )
    return {"matrix": render_matrix(t.matrix)}


@op("transition_h2", "fine:levels", "coarse:levels", "quotient_map:quotient_maps")
def _(env, task):
    m = bands.transition_h2(
        env.lookup("levels", task["fine"], "task.fine"),
        env.lookup("levels", task["coarse"], "task.coarse"),
        env.lookup("quotient_maps", task["quotient_map"], "task.quotient_map"),
    )
    return {
        "matrix": render_matrix(m.matrix),
        "source_factors": list(m.source.invariant_factors),
        "target_factors": list(m.target.invariant_factors),
    }


@op("alpha_level", "level:levels")
def _(env, task):
    return {"class": _coords(bands.alpha_level(env.lookup("levels", task["level"], "task.level")))}


# reductive ------------------------------------------------------------------------

@op("coroot_sublattice", "root_datum:root_data")
def _(env, task):
    rd = env.lookup("root_data", task["root_datum"], "task.root_datum")
    return render_sublattice(rootdata.coroot_sublattice(rd))


@op("rigid_h1_reductive", "reductive_pair:reductive_pairs")
def _(env, task):
    pr = env.lookup("reductive_pairs", task["reductive_pair"], "task.reductive_pair")
    return render_group(rootdata.rigid_h1_reductive(pr))


@op("component_group_dual_center", "reductive_pair:reductive_pairs")
def _(env, task):
    pr = env.lookup("reductive_pairs", task["reductive_pair"], "task.reductive_pair")
    return render_group(rootdata.component_group_dual_center(pr))


@op("tn_pairing", "reductive_pair:reductive_pairs", "representative", "character:characters")
def _(env, task):
    pr = env.lookup("reductive_pairs", task["reductive_pair"], "task.reductive_pair")
    chi = _character(env, task)
    return {"value": str(rootdata.tn_pairing(pr, tuple(task["representative"]), chi))}


@op("pairing_perfectness", "reductive_pair:reductive_pairs")
def _(env, task):
    pr = env.lookup("reductive_pairs", task["reductive_pair"], "task.reductive_pair")
    return rootdata.pairing_perfectness(pr).as_dict()


@op("weyl_group", "root_datum:root_data")
def _(env, task):
    rd = env.lookup("root_data", task["root_datum"], "task.root_datum")
    W = rootdata.weyl_group(rd, _weyl_bound())
    return {"order": len(W), "matrices": [render_matrix(w) for w in W]}


@op("weyl_quotient_triviality", "reductive_pair:reductive_pairs")
def _(env, task):
    pr = env.lookup("reductive_pairs", task["reductive_pair"], "task.reductive_pair")
    return rootdata.weyl_quotient_triviality(pr, _weyl_bound()).as_dict()


@op("is_elliptic", "root_datum:root_data")
def _(env, task):
    rd = env.lookup("root_data", task["root_datum"], "task.root_datum")
    return {"elliptic": rootdata.is_elliptic(rd)}


@op("dual_root_datum", "root_datum:root_data")
def _(env, task):
    rd = env.lookup("root_data", task["root_datum"], "task.root_datum")
    return render_root_datum(rootdata.dual_root_datum(rd))


# endoscopy -----------------------------------------------------------------------

@op("endoscopic_subsystem", "reductive_pair:reductive_pairs", "character:characters")
def _(env, task):
    pr = env.lookup("reductive_pairs", task["reductive_pair"], "task.reductive_pair")
    return render_root_datum(endoscopy.endoscopic_subsystem(pr, _character(env, task)))


@op("validate_refined", "reductive_pair:reductive_pairs", "character:characters")
def _(env, task):
    pr = env.lookup("reductive_pairs", task["reductive_pair"], "task.reductive_pair")
    datum = endoscopy.RefinedEndoscopicDatum.build(pr, _character(env, task))
    out = endoscopy.validate_refined(datum).as_dict()
    out["subsystem"] = render_root_datum(datum.h_datum)
    return out


@op("lift_to_refined", "pair:pairs", "character:characters")
def _(env, task):
    pair = env.lookup("pairs", task["pair"], "task.pair")
    return render_character(endoscopy.lift_to_refined(pair, _character(env, task)))


@op("transfer_pairing_term", "pair:pairs", "representative", "character:characters")
def _(env, task):
    pair = env.lookup("pairs", task["pair"], "task.pair")
    inv = endoscopy.InvariantClass.from_representative(pair, task["representative"])
    return {"value": str(endoscopy.transfer_pairing_term(inv, _character(env, task)))}


@op("enlarge_center_invariance", "pair:pairs", "pair_prime:pairs", "representative", "character:characters", "character_prime:characters")
def _(env, task):
    small = env.lookup("pairs", task["pair"], "task.pair")
    large = env.lookup("pairs", task["pair_prime"], "task.pair_prime")
    inv = endoscopy.InvariantClass.from_representative(small, task["representative"])
    rep = endoscopy.enlarge_center_invariance(
        small, large, inv, _character(env, task),
        env.lookup("characters", task["character_prime"], "task.character_prime"),
    )
    return rep.as_dict()


# local field ------------------------------------------------------------------------

@op("valuation", "series:series")
def _(env, task):
    x = env.lookup("series", task["series"], "task.series")
    return {"valuation": laurent.valuation(x)}


@op("abs_value", "series:series")
def _(env, task):
    x = env.lookup("series", task["series"], "task.series")
    return render_valued(laurent.abs_value(x))


@op("is_strongly_regular", "root_datum:root_data", "point:series[]")
def _(env, task):
    rd = env.lookup("root_data", task["root_datum"], "task.root_datum")
    gamma = _series_point(env, task["point"], "task.point")
    return {"strongly_regular": laurent.is_strongly_regular(rd, gamma)}


@op("delta_IV", "root_datum:root_data", "sub_datum:root_data", "point:series[]")
def _(env, task):
    rd = env.lookup("root_data", task["root_datum"], "task.root_datum")
    sub = env.lookup("root_data", task["sub_datum"], "task.sub_datum")
    gamma = _series_point(env, task["point"], "task.point")
    return render_valued(laurent.delta_IV(rd, sub, gamma))


# -- validation and execution -----------------------------------------------------

def validate_task_fields(task: dict, path: str, env: Environment | None = None) -> None:
    """Check required fields and (when env is given) resolve references."""
    name = task.get("op")
    if name not in OPERATIONS:
        raise SchemaError(f"{path}.op: unknown operation {name!r}")
    fields, _fn = OPERATIONS[name]
    for fname, kind, many in _field_specs(fields):
        if fname not in task:
            raise SchemaError(f"{path}: operation {name!r} requires field {fname!r}")
        if env is None or kind is None:
            continue
        refs = task[fname] if many else [task[fname]]
        if not isinstance(refs, list):
            raise SchemaError(f"{path}.{fname}: expected a list of identifiers")
        for ref in refs:
            if not isinstance(ref, str):
                raise SchemaError(f"{path}.{fname}: identifiers must be strings")
            env.lookup(kind, ref, f"{path}.{fname}")


def run_task(env: Environment, index: int, task: dict) -> dict:
    name = task["op"]
    _, fn = OPERATIONS[name]
    record: dict[str, Any] = {"index": index, "op": name}
    try:
        record["status"] = "ok"
        record["payload"] = fn(env, task)
    except RigidcohError as e:
        record["status"] = "error"
        record["code"] = e.code
        record["message"] = str(e)
        record.pop("payload", None)
    except (ValueError, ZeroDivisionError) as e:
        record["status"] = "error"
        record["code"] = "InvalidInput"
        record["message"] = str(e)
        record.pop("payload", None)
    return record


def run(doc: TaskDocument, parallelism: int = 1) -> dict:
    """Execute all tasks; results are listed in task order regardless of jobs."""
    if parallelism < 1:
        raise ValueError("parallelism must be at least 1")
    items = list(enumerate(doc.tasks))
    if parallelism == 1 or len(items) <= 1:
        results = [run_task(doc.env, i, t) for i, t in items]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(lambda it: run_task(doc.env, *it), items))
    return {"results": results}


def all_succeeded(result_doc: dict) -> bool:
    return all(r["status"] == "ok" for r in result_doc["results"])


# -- human-readable rendering -------------------------------------------------------

def _group_text(payload: dict) -> str:
    factors = payload.get("invariant_factors", [])
    if not factors:
        return "0"
    return " ⊕ ".join(f"ℤ/{d}" for d in factors)


def render_text(result_doc: dict) -> str:
    lines = []
    for r in result_doc["results"]:
        head = f"[{r['index']}] {r['op']}: "
        if r["status"] != "ok":
            lines.append(head + f"ERROR {r['code']}: {r['message']}")
            continue
        p = r["payload"]
        if isinstance(p, dict) and "invariant_factors" in p and "U" not in p:
            lines.append(head + _group_text(p))
        elif isinstance(p, dict) and "value" in p:
            lines.append(head + p["value"])
        elif isinstance(p, dict) and "valuation" in p:
            lines.append(head + str(p["valuation"]))
        elif isinstance(p, dict) and "base" in p and "exponent" in p:
            exp = p["exponent"]
            exp = exp[:-2] if exp.endswith("/1") else exp
            lines.append(head + f"{p['base']}^{exp}")
        elif isinstance(p, dict) and "elliptic" in p:
            lines.append(head + str(p["elliptic"]).lower())
        elif isinstance(p, dict) and "strongly_regular" in p:
            lines.append(head + str(p["strongly_regular"]).lower())
        elif isinstance(p, dict) and ("exact" in p or "perfect" in p or "passed" in p or "valid" in p or "equal" in p):
            verdict = p.get("exact", p.get("perfect", p.get("passed", p.get("valid", p.get("equal")))))
            lines.append(head + ("pass" if verdict else "FAIL"))
        elif isinstance(p, dict) and "class" in p:
            lines.append(head + str(tuple(p["class"])))
        else:
            lines.append(head + canonical_json(p).strip())
    return "\n".join(lines) + "\n"
