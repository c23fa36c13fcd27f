"""JSON documents for posets, representations, families and configurations.

Every document carries a top-level ``"kind"``. Subsets are written as sorted
label lists, and map keys that stand for subsets or pairs of subsets are the
compact JSON encoding of those lists, e.g. ``"[\\"v2\\"]"`` and
``"[[\\"v2\\"],[\\"v1\\",\\"v2\\"]]"``. Output is deterministic.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .config import ConfigMorphism, Configuration, SubobjectFamily, Violation, _require_entries
from .errors import DocumentError, InvariantError, ParseError, PosetConfError
from .exactla import FieldSpec, Matrix
from .poset import FinitePoset, GluingSpec, validate_poset
from .quivercat import Quiver, Rep, RepMor, SubobjectCF


def subset_key(subset) -> str:
    return json.dumps(sorted(subset), separators=(",", ":"))


def pair_key(a, b) -> str:
    return json.dumps([sorted(a), sorted(b)], separators=(",", ":"))


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


# writing


def matrix_doc(m: Matrix) -> list:
    return m.tolist()


def quiver_doc(q: Quiver) -> dict:
    return q.to_dict()


def poset_doc(P: FinitePoset) -> dict:
    return {"kind": "poset", **P.to_dict()}


def rep_body(r: Rep) -> dict:
    return {
        "dims": r.dim_vector(),
        "mats": {a.name: matrix_doc(m) for a, m in zip(r.quiver.arrows, r.mats)},
    }


def rep_doc(r: Rep) -> dict:
    return {"kind": "rep", "quiver": quiver_doc(r.quiver), "field": {"p": r.p}, **rep_body(r)}


def mor_body(f: RepMor) -> dict:
    return {v: matrix_doc(m) for v, m in zip(f.source.quiver.vertices, f.mats)}


def morphism_doc(f: RepMor) -> dict:
    return {"kind": "morphism", "source": rep_doc(f.source), "target": rep_doc(f.target), "mats": mor_body(f)}


def subobject_body(s: SubobjectCF) -> dict:
    return {v: matrix_doc(b) for v, b in zip(s.ambient.quiver.vertices, s.bases)}


def family_doc(fam: SubobjectFamily) -> dict:
    return {
        "kind": "family",
        "quiver": quiver_doc(fam.ambient.quiver),
        "field": {"p": fam.ambient.p},
        "poset": fam.poset.to_dict(),
        "ambient": rep_body(fam.ambient),
        "subobjects": {subset_key(k): subobject_body(s) for k, s in fam.table.items()},
    }


def config_doc(c: Configuration) -> dict:
    """Objects are stored once in ``reps`` and referenced by name, named in sorted-key order."""
    names: dict[Rep, str] = {}
    reps: dict[str, dict] = {}
    objects: dict[str, str] = {}
    for k in sorted(c.objects, key=lambda s: (len(s), sorted(s))):
        r = c.objects[k]
        if r not in names:
            names[r] = f"r{len(names)}"
            reps[names[r]] = rep_body(r)
        objects[subset_key(k)] = names[r]
    return {
        "kind": "config",
        "quiver": quiver_doc(c.quiver),
        "field": {"p": c.p},
        "poset": c.poset.to_dict(),
        "reps": reps,
        "objects": objects,
        "iotas": {pair_key(a, b): mor_body(m) for (a, b), m in c.iotas.items()},
        "pis": {pair_key(a, b): mor_body(m) for (a, b), m in c.pis.items()},
    }


def config_morphism_doc(m: ConfigMorphism) -> dict:
    return {"kind": "config_morphism", "alphas": {subset_key(k): mor_body(a) for k, a in m.alphas.items()}}


def violations_doc(vs: list[Violation]) -> Any:
    if not vs:
        return "valid"
    return [str(v) for v in vs]


# reading


def _need(doc: Mapping, key: str, kind: type | tuple = object, where: str = "document"):
    if not isinstance(doc, Mapping):
        raise InvariantError("schema", f"{where} must be an object")
    if key not in doc:
        raise InvariantError("schema", f"{where} is missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise InvariantError("schema", f"field {key!r} of {where} has the wrong type")
    return value


def _guard(fn, *args):
    """Run a constructor, turning library errors into InvariantError named after the violated check."""
    try:
        return fn(*args)
    except DocumentError:
        raise
    except PosetConfError as exc:
        raise InvariantError(type(exc).__name__, str(exc)) from None
    except (TypeError, ValueError, KeyError, IndexError) as exc:
        raise InvariantError("schema", str(exc)) from None


def check_kind(doc: Any, *kinds: str) -> None:
    kind = _need(doc, "kind", str)
    if kind not in kinds:
        raise InvariantError("schema", f"expected a document of kind {' or '.join(kinds)}, got {kind!r}")


def read_field(doc: Mapping, override: int | None = None) -> int:
    if "field" in doc:
        p = _need(_need(doc, "field", dict), "p", int, "field")
        if override is not None and override != p:
            raise InvariantError("NotPrime", f"document is over F_{p} but --field {override} was given")
    elif override is not None:
        p = override
    else:
        raise InvariantError("schema", "no field given; add {\"p\": ...} or pass --field")
    return _guard(lambda: FieldSpec(p).p)


def read_poset(doc: Mapping) -> FinitePoset:
    elements = _need(doc, "elements", list, "poset")
    relations = doc.get("relations", [])
    if not isinstance(relations, list) or any(not isinstance(r, list) or len(r) != 2 for r in relations):
        raise InvariantError("schema", "relations must be a list of 2-element lists")
    return _guard(validate_poset, [str(e) for e in elements], [tuple(map(str, r)) for r in relations])


def read_quiver(doc: Mapping) -> Quiver:
    vertices = _need(doc, "vertices", list, "quiver")
    arrows = doc.get("arrows", [])
    relations = doc.get("relations", [])
    return _guard(lambda: Quiver(tuple(vertices), tuple(tuple(a) for a in arrows), tuple(relations)))


def read_matrix(p: int, rows: Any, shape: tuple[int, int], where: str) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InvariantError("schema", f"{where} must be a list of rows")
    if shape[0] == 0 and rows in ([], [[]]):
        return Matrix.zeros(p, 0, shape[1])
    if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
        raise InvariantError("ShapeMismatch", f"{where} must be {shape[0]}x{shape[1]}")
    if any(not isinstance(x, int) or isinstance(x, bool) for r in rows for x in r):
        raise InvariantError("schema", f"{where} must contain integers")
    return Matrix(p, rows, shape=shape)


def read_rep_body(q: Quiver, p: int, body: Mapping, where: str = "rep") -> Rep:
    dims = _need(body, "dims", dict, where)
    mats_doc = body.get("mats", {})
    if not isinstance(mats_doc, dict):
        raise InvariantError("schema", f"mats of {where} must be an object")
    dims_i = {}
    for v, d in dims.items():
        if not isinstance(d, int) or isinstance(d, bool):
            raise InvariantError("schema", f"dimension of {v} in {where} must be an integer")
        dims_i[v] = d
    mats = {}
    for a, rows in mats_doc.items():
        arrow = _guard(q.arrow, a)
        shape = (dims_i.get(arrow.target, 0), dims_i.get(arrow.source, 0))
        mats[a] = read_matrix(p, rows, shape, f"matrix of arrow {a} in {where}")
    return _guard(lambda: Rep(q, p, dims_i, mats))


def read_rep(doc: Mapping, field: int | None = None) -> Rep:
    check_kind(doc, "rep")
    q = read_quiver(_need(doc, "quiver", dict))
    return read_rep_body(q, read_field(doc, field), doc)


def read_mor_body(source: Rep, target: Rep, body: Mapping, where: str) -> RepMor:
    if not isinstance(body, Mapping):
        raise InvariantError("schema", f"{where} must map vertices to matrices")
    q = source.quiver
    mats = []
    for v, ds, dt in zip(q.vertices, source.dims, target.dims):
        rows = body.get(v)
        if rows is None:
            mats.append(Matrix.zeros(source.p, dt, ds))
        else:
            mats.append(read_matrix(source.p, rows, (dt, ds), f"{where} at vertex {v}"))
    unknown = set(body) - set(q.vertices)
    if unknown:
        raise InvariantError("ShapeMismatch", f"{where} names unknown vertices {sorted(unknown)}")
    return _guard(lambda: RepMor(source, target, mats))


def read_morphism(doc: Mapping, field: int | None = None) -> RepMor:
    check_kind(doc, "morphism")
    src = read_rep(_need(doc, "source", dict), field)
    tgt = read_rep(_need(doc, "target", dict), field)
    return read_mor_body(src, tgt, _need(doc, "mats", dict), "morphism")


def _subset_from_key(key: str, where: str) -> frozenset:
    try:
        value = json.loads(key)
    except json.JSONDecodeError:
        raise InvariantError("schema", f"{where} key {key!r} is not a JSON list") from None
    if not isinstance(value, list):
        raise InvariantError("schema", f"{where} key {key!r} is not a list")
    return frozenset(str(x) for x in value)


def _pair_from_key(key: str, where: str) -> tuple[frozenset, frozenset]:
    try:
        value = json.loads(key)
    except json.JSONDecodeError:
        raise InvariantError("schema", f"{where} key {key!r} is not JSON") from None
    if not isinstance(value, list) or len(value) != 2 or not all(isinstance(x, list) for x in value):
        raise InvariantError("schema", f"{where} key {key!r} is not a pair of lists")
    return frozenset(map(str, value[0])), frozenset(map(str, value[1]))


def read_family(doc: Mapping, field: int | None = None) -> SubobjectFamily:
    check_kind(doc, "family")
    q = read_quiver(_need(doc, "quiver", dict))
    p = read_field(doc, field)
    P = read_poset(_need(doc, "poset", dict))
    x = read_rep_body(q, p, _need(doc, "ambient", dict), "ambient")
    table = {}
    for key, body in _need(doc, "subobjects", dict).items():
        k = _subset_from_key(key, "subobjects")
        if not isinstance(body, Mapping):
            raise InvariantError("schema", f"subobject {key} must map vertices to bases")
        bases = []
        for v, d in zip(q.vertices, x.dims):
            rows = body.get(v, [[] for _ in range(d)])
            width = len(rows[0]) if rows else 0
            bases.append(read_matrix(p, rows, (d, width), f"basis of subobject {key} at {v}"))
        table[k] = _guard(lambda: SubobjectCF(x, bases))
    return _guard(lambda: SubobjectFamily(x, P, table))


def read_config(doc: Mapping, field: int | None = None) -> Configuration:
    check_kind(doc, "config")
    q = read_quiver(_need(doc, "quiver", dict))
    p = read_field(doc, field)
    P = read_poset(_need(doc, "poset", dict))
    named = {name: read_rep_body(q, p, body, f"rep {name}") for name, body in doc.get("reps", {}).items()}
    objects = {}
    for key, entry in _need(doc, "objects", dict).items():
        k = _subset_from_key(key, "objects")
        if isinstance(entry, str):
            if entry not in named:
                raise InvariantError("schema", f"object {key} refers to unknown rep {entry!r}")
            objects[k] = named[entry]
        else:
            objects[k] = read_rep_body(q, p, entry, f"object {key}")

    def morphisms(field_name: str) -> dict:
        out = {}
        for key, body in _need(doc, field_name, dict).items():
            a, b = _pair_from_key(key, field_name)
            if a not in objects or b not in objects:
                raise InvariantError("MissingEntry", f"{field_name} entry {key} refers to a set without an object")
            out[(a, b)] = read_mor_body(objects[a], objects[b], body, f"{field_name} entry {key}")
        return out

    c = Configuration(P, objects, morphisms("iotas"), morphisms("pis"))
    _guard(_require_entries, c)
    return c


def read_gluing(doc: Mapping) -> GluingSpec:
    check_kind(doc, "gluing")
    J = read_poset(_need(doc, "sub_poset", dict))
    K = read_poset(_need(doc, "ambient_poset", dict))
    L = _need(doc, "glue_fset", list)
    psi = _need(doc, "psi", dict)
    return GluingSpec(J, K, frozenset(map(str, L)), psi)


def read_map(doc: Mapping) -> tuple[FinitePoset, dict]:
    check_kind(doc, "map")
    target = read_poset(_need(doc, "target", dict))
    phi = _need(doc, "phi", dict)
    return target, {str(k): str(v) for k, v in phi.items()}


def read_config_morphism(doc: Mapping, source: Configuration, target: Configuration) -> ConfigMorphism:
    check_kind(doc, "config_morphism")
    alphas = {}
    for key, body in _need(doc, "alphas", dict).items():
        k = _subset_from_key(key, "alphas")
        if k not in source.objects or k not in target.objects:
            raise InvariantError("MissingEntry", f"alpha component {key} is not an f-set of the configuration")
        alphas[k] = read_mor_body(source.objects[k], target.objects[k], body, f"alpha at {key}")
    return ConfigMorphism(source, target, alphas)


READERS = {
    "poset": lambda doc, field: read_poset(doc),
    "quiver": lambda doc, field: read_quiver(doc),
    "rep": read_rep,
    "morphism": read_morphism,
    "family": read_family,
    "config": read_config,
    "gluing": lambda doc, field: read_gluing(doc),
    "map": lambda doc, field: read_map(doc),
}


def parse_document(text: str, field: int | None = None):
    """Parse any document, dispatching on its ``"kind"``."""
    doc = loads(text)
    kind = _need(doc, "kind", str)
    reader = READERS.get(kind)
    if reader is None:
        raise InvariantError("schema", f"unknown document kind {kind!r}")
    return reader(doc, field)


def to_document(value) -> dict:
    if isinstance(value, FinitePoset):
        return poset_doc(value)
    if isinstance(value, Quiver):
        return {"kind": "quiver", **quiver_doc(value)}
    if isinstance(value, Rep):
        return rep_doc(value)
    if isinstance(value, RepMor):
        return morphism_doc(value)
    if isinstance(value, SubobjectFamily):
        return family_doc(value)
    if isinstance(value, Configuration):
        return config_doc(value)
    if isinstance(value, ConfigMorphism):
        return config_morphism_doc(value)
    raise TypeError(f"no document form for {type(value).__name__}")
