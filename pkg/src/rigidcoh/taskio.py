"""Task documents: schema validation, reference resolution, canonical JSON.

A document declares named objects (groups, lattices, pairs, ...) and an
ordered list of operation invocations referencing them.  Parsing validates
against the published JSON schema, then semantically (constructor invariants),
then resolves references; any failure carries a machine-readable code and the
JSON path of the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

import jsonschema

from .abelian import QModZ, TorsionCharacter
from .errors import DanglingReference, ParseError, SchemaError
from .groups import FiniteGroup, GroupHom
from .intmatrix import IntMatrix
from .laurent import LaurentSeries
from .modules import EquivariantMap, FiniteGaloisModule, GaloisLattice
from .abelian import SubLattice
from .bands import ULevel
from .rootdata import ReductivePair, RootDatum
from .tori import IsogenyPair


def canonical_json(obj: Any) -> str:
    """The one serialization used everywhere: sorted keys, fixed separators."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_schema() -> dict:
    text = resources.files("rigidcoh.data").joinpath("schema.json").read_text("utf-8")
    return json.loads(text)


@dataclass
class Environment:
    """Resolved declaration objects by identifier."""

    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    quotient_maps: dict[str, GroupHom] = field(default_factory=dict)
    lattices: dict[str, GaloisLattice] = field(default_factory=dict)
    maps: dict[str, EquivariantMap] = field(default_factory=dict)
    pairs: dict[str, IsogenyPair] = field(default_factory=dict)
    modules: dict[str, FiniteGaloisModule] = field(default_factory=dict)
    levels: dict[str, ULevel] = field(default_factory=dict)
    root_data: dict[str, RootDatum] = field(default_factory=dict)
    reductive_pairs: dict[str, ReductivePair] = field(default_factory=dict)
    characters: dict[str, TorsionCharacter] = field(default_factory=dict)
    series: dict[str, LaurentSeries] = field(default_factory=dict)

    def lookup(self, kind: str, ident: str, path: str):
        table = getattr(self, kind)
        if ident not in table:
            raise DanglingReference(f"{path}: no {kind[:-1] if kind.endswith('s') else kind} named {ident!r}")
        return table[ident]


@dataclass
class TaskDocument:
    """A validated document: raw canonical data plus resolved objects."""

    raw: dict
    env: Environment
    tasks: list[dict]

    def __eq__(self, other) -> bool:
        return isinstance(other, TaskDocument) and canonical_json(self.raw) == canonical_json(other.raw)


def serialize(doc: TaskDocument) -> str:
    return canonical_json(doc.raw)


def parse(text: str) -> TaskDocument:
    """Parse and validate a task document from JSON text."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    try:
        jsonschema.validate(raw, load_schema())
    except jsonschema.ValidationError as e:
        path = "$" + "".join(
            f"[{p}]" if isinstance(p, int) else f".{p}" for p in e.absolute_path
        )
        raise SchemaError(f"{path}: {e.message}") from None
    env = _resolve(raw.get("declarations", {}))
    tasks = list(raw.get("tasks", []))
    from .runner import validate_task_fields

    for i, task in enumerate(tasks):
        validate_task_fields(task, f"$.tasks[{i}]", env)
    return TaskDocument(raw=raw, env=env, tasks=tasks)


def _matrix(data, path: str) -> IntMatrix:
    try:
        return IntMatrix(data)
    except ValueError as e:
        raise SchemaError(f"{path}: {e}") from None


def _resolve(decls: dict) -> Environment:
    env = Environment()
    seen: set[str] = set()

    def claim(ident: str, path: str):
        if ident in seen:
            raise SchemaError(f"{path}: duplicate identifier {ident!r}")
        seen.add(ident)

    for i, d in enumerate(decls.get("groups", [])):
        path = f"$.declarations.groups[{i}]"
        claim(d["id"], path)
        try:
            env.groups[d["id"]] = FiniteGroup(d["table"], name=d["id"])
        except ValueError as e:
            raise SchemaError(f"{path}.table: {e}") from None

    for i, d in enumerate(decls.get("quotient_maps", [])):
        path = f"$.declarations.quotient_maps[{i}]"
        claim(d["id"], path)
        src = env.lookup("groups", d["source"], path + ".source")
        tgt = env.lookup("groups", d["target"], path + ".target")
        try:
            env.quotient_maps[d["id"]] = GroupHom(src, tgt, d["images"])
        except ValueError as e:
            raise SchemaError(f"{path}.images: {e}") from None

    for i, d in enumerate(decls.get("lattices", [])):
        path = f"$.declarations.lattices[{i}]"
        claim(d["id"], path)
        grp = env.lookup("groups", d["group"], path + ".group")
        rank = d["rank"]
        if "action" in d:
            mats = [_matrix(m, f"{path}.action[{k}]") for k, m in enumerate(d["action"])]
        else:
            mats = [IntMatrix.identity(rank)] * grp.order
        try:
            env.lattices[d["id"]] = GaloisLattice(grp, rank, mats)
        except ValueError as e:
            raise SchemaError(f"{path}: {e}") from None

    for i, d in enumerate(decls.get("maps", [])):
        path = f"$.declarations.maps[{i}]"
        claim(d["id"], path)
        src = env.lookup("lattices", d["source"], path + ".source")
        tgt = env.lookup("lattices", d["target"], path + ".target")
        try:
            env.maps[d["id"]] = EquivariantMap(src, tgt, _matrix(d["matrix"], path + ".matrix"))
        except Exception as e:
            raise SchemaError(f"{path}: {e}") from None

    for i, d in enumerate(decls.get("pairs", [])):
        path = f"$.declarations.pairs[{i}]"
        claim(d["id"], path)
        y = env.lookup("lattices", d["y"], path + ".y")
        ybar = env.lookup("lattices", d["ybar"], path + ".ybar")
        try:
            inc = EquivariantMap(y, ybar, _matrix(d["matrix"], path + ".matrix"))
            env.pairs[d["id"]] = IsogenyPair(inc)
        except Exception as e:
            raise SchemaError(f"{path}: {e}") from None

    for i, d in enumerate(decls.get("modules", [])):
        path = f"$.declarations.modules[{i}]"
        claim(d["id"], path)
        amb = env.lookup("lattices", d["ambient"], path + ".ambient")
        try:
            rel = SubLattice.spanned_by(amb.rank, d["relations"])
            env.modules[d["id"]] = FiniteGaloisModule(amb, rel)
        except ValueError as e:
            raise SchemaError(f"{path}.relations: {e}") from None

    for i, d in enumerate(decls.get("levels", [])):
        path = f"$.declarations.levels[{i}]"
        claim(d["id"], path)
        grp = env.lookup("groups", d["group"], path + ".group")
        try:
            env.levels[d["id"]] = ULevel(grp, d["n"])
        except ValueError as e:
            raise SchemaError(f"{path}: {e}") from None

    for i, d in enumerate(decls.get("root_data", [])):
        path = f"$.declarations.root_data[{i}]"
        claim(d["id"], path)
        grp = env.lookup("groups", d["group"], path + ".group")
        rank = d["rank"]
        if "action" in d:
            mats = [_matrix(m, f"{path}.action[{k}]") for k, m in enumerate(d["action"])]
        else:
            mats = [IntMatrix.identity(rank)] * grp.order
        try:
            lat = GaloisLattice(grp, rank, mats)
            env.root_data[d["id"]] = RootDatum(lat, d["roots"], d["coroots"], d["simple"])
        except ValueError as e:
            raise SchemaError(f"{path}: {e}") from None

    for i, d in enumerate(decls.get("reductive_pairs", [])):
        path = f"$.declarations.reductive_pairs[{i}]"
        claim(d["id"], path)
        datum = env.lookup("root_data", d["datum"], path + ".datum")
        try:
            pair = IsogenyPair.from_y_action(
                datum.group, _matrix(d["center_matrix"], path + ".center_matrix"),
                datum.cochar.action,
            )
            env.reductive_pairs[d["id"]] = ReductivePair(datum, pair)
        except Exception as e:
            raise SchemaError(f"{path}: {e}") from None

    for i, d in enumerate(decls.get("characters", [])):
        path = f"$.declarations.characters[{i}]"
        claim(d["id"], path)
        try:
            values = [QModZ.parse(v) for v in d["values"]]
        except (ValueError, ZeroDivisionError) as e:
            raise SchemaError(f"{path}.values: {e}") from None
        env.characters[d["id"]] = TorsionCharacter(values)

    for i, d in enumerate(decls.get("series", [])):
        path = f"$.declarations.series[{i}]"
        claim(d["id"], path)
        try:
            env.series[d["id"]] = LaurentSeries(
                d["p"], d["lead"], d["coeffs"], d.get("precision")
            )
        except ValueError as e:
            raise SchemaError(f"{path}: {e}") from None

    return env
