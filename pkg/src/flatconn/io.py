"""Instance documents: JSON parsing, validation and serialization.

A document is one JSON object with sections "group", "complex", "voltage"
and optionally "covering".  Word strings use space-separated tokens like
"e3" / "e3^-1", or aliases declared under "complex.aliases".  Validation
failures raise :class:`InputError` with a JSON-pointer style location.
"""

from __future__ import annotations

import json
import re
from typing import Any, Mapping, Optional

from .complexes import (
    BaseComplex,
    Edge,
    EdgeWord,
    loop_to_generator_word,
    spanning_tree,
    validate_complex,
)
from .connections import Voltage, check_flatness
from .errors import ComplexError, FlatConnError, InputError
from .groups import GroupTable, catalog_group, group_from_permutations
from .subgroups import SubgroupSpec
from .theorems import Instance

_TOKEN_RE = re.compile(r"^(?P<name>[A-Za-z_][A-Za-z_0-9]*)(?P<inv>\^-1)?$")


def parse_word_string(
    text: str, aliases: Mapping[str, int], known_edges: set, location: str
) -> EdgeWord:
    """Parse "e3 a^-1 b" into an edge word using aliases and eNN tokens."""
    steps = []
    for tok in text.split():
        m = _TOKEN_RE.match(tok)
        if not m:
            raise InputError(f"cannot parse word token {tok!r}", location)
        name = m.group("name")
        sign = -1 if m.group("inv") else 1
        if name in aliases:
            eid = aliases[name]
        elif name.startswith("e") and name[1:].isdigit():
            eid = int(name[1:])
        else:
            raise InputError(f"unknown edge or alias {name!r} in word", location)
        if eid not in known_edges:
            raise InputError(f"word references unknown edge {eid}", location)
        steps.append((eid, sign))
    return tuple(steps)


def word_to_string(w: EdgeWord) -> str:
    return " ".join(f"e{eid}" + ("" if sign > 0 else "^-1") for eid, sign in w)


def resolve_element(g: GroupTable, ref: Any, location: str) -> int:
    """An element reference is an index or a unique label."""
    if isinstance(ref, bool):
        raise InputError("element reference must be an index or label", location)
    if isinstance(ref, int):
        if not 0 <= ref < g.order:
            raise InputError(f"element index {ref} out of range 0..{g.order - 1}", location)
        return ref
    if isinstance(ref, str):
        try:
            return g.labels.index(ref)
        except ValueError:
            raise InputError(f"no element labelled {ref!r}", location) from None
    raise InputError(f"element reference must be an index or label, got {ref!r}", location)


def parse_group(data: Any, location: str = "/group") -> GroupTable:
    if isinstance(data, str):
        try:
            return catalog_group(data)
        except ValueError as exc:
            raise InputError(str(exc), location) from None
    if not isinstance(data, dict):
        raise InputError("group must be a catalog name or an object", location)
    try:
        degree = int(data["degree"])
        generators = data["generators"]
    except (KeyError, TypeError, ValueError):
        raise InputError("permutation group needs 'degree' and 'generators'", location) from None
    try:
        return group_from_permutations(
            degree,
            [tuple(p) for p in generators],
            labels=data.get("labels"),
            name=data.get("name"),
        )
    except (ValueError, FlatConnError) as exc:
        raise InputError(str(exc), location) from None


def parse_complex(data: Any, location: str = "/complex") -> tuple[BaseComplex, dict]:
    """Returns (validated complex, alias table)."""
    if not isinstance(data, dict):
        raise InputError("complex must be an object", location)
    try:
        vertices = int(data["vertices"])
    except (KeyError, TypeError, ValueError):
        raise InputError("complex needs a 'vertices' count", location) from None
    edges = []
    raw_edges = data.get("edges", [])
    for k, rec in enumerate(raw_edges):
        loc = f"{location}/edges/{k}"
        if not isinstance(rec, dict):
            raise InputError("edge must be an object with id/tail/head", loc)
        try:
            edges.append(Edge(int(rec["id"]), int(rec["tail"]), int(rec["head"])))
        except (KeyError, TypeError, ValueError):
            raise InputError("edge needs integer 'id', 'tail', 'head'", loc) from None
    aliases = {}
    for name, eid in (data.get("aliases") or {}).items():
        aliases[str(name)] = int(eid)
    known = {e.id for e in edges}
    for name, eid in aliases.items():
        if eid not in known:
            raise InputError(f"alias {name!r} refers to unknown edge {eid}", f"{location}/aliases")
    relators = []
    for k, text in enumerate(data.get("relators", [])):
        loc = f"{location}/relators/{k}"
        if not isinstance(text, str):
            raise InputError("relator must be a word string", loc)
        relators.append(parse_word_string(text, aliases, known, loc))
    basepoint = int(data.get("basepoint", 0))
    try:
        c = BaseComplex(vertices, edges, basepoint=basepoint, relators=relators)
        validate_complex(c)
    except ComplexError as exc:
        raise InputError(str(exc), location) from None
    return c, aliases


def parse_voltage(
    data: Any, c: BaseComplex, g: GroupTable, aliases: Mapping[str, int], location: str = "/voltage"
) -> Voltage:
    if not isinstance(data, list):
        raise InputError("voltage must be a list of {edge, element} entries", location)
    assignment = {}
    for k, rec in enumerate(data):
        loc = f"{location}/{k}"
        if not isinstance(rec, dict) or "edge" not in rec or "element" not in rec:
            raise InputError("voltage entry needs 'edge' and 'element'", loc)
        ref = rec["edge"]
        if isinstance(ref, str):
            if ref not in aliases:
                raise InputError(f"unknown edge alias {ref!r}", f"{loc}/edge")
            eid = aliases[ref]
        else:
            eid = int(ref)
        if eid in assignment:
            raise InputError(f"duplicate voltage for edge {eid}", f"{loc}/edge")
        assignment[eid] = resolve_element(g, rec["element"], f"{loc}/element")
    try:
        return Voltage(c, g, assignment)
    except ValueError as exc:
        raise InputError(str(exc), location) from None


def parse_covering(
    data: Any,
    c: BaseComplex,
    g: GroupTable,
    aliases: Mapping[str, int],
    location: str = "/covering",
) -> SubgroupSpec:
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError("covering must be an object with a 'kind'", location)
    kind = data["kind"]
    if kind == "words":
        tree = spanning_tree(c)
        known = {e.id for e in c.edges}
        words = []
        for k, text in enumerate(data.get("words", [])):
            loc = f"{location}/words/{k}"
            ew = parse_word_string(text, aliases, known, loc)
            try:
                words.append(loop_to_generator_word(c, tree, ew))
            except ComplexError as exc:
                raise InputError(f"covering word must be a closed loop at the basepoint: {exc}", loc) from None
        return SubgroupSpec(kind="words", words=tuple(words))
    if kind == "quotient":
        target = g
        images: Optional[tuple] = None
        if "group" in data and data["group"] is not None:
            target = parse_group(data["group"], f"{location}/group")
        if "images" in data and data["images"] is not None:
            refs = data["images"]
            if not isinstance(refs, list):
                raise InputError("'images' must be a list of element references", f"{location}/images")
            images = tuple(
                resolve_element(target, ref, f"{location}/images/{k}") for k, ref in enumerate(refs)
            )
        elif "group" in data and data["group"] is not None:
            raise InputError(
                "a covering with an explicit group needs explicit images", f"{location}/images"
            )
        members = data.get("subgroup", [])
        if not isinstance(members, list):
            raise InputError("'subgroup' must be a list of element references", f"{location}/subgroup")
        sub = tuple(
            resolve_element(target, ref, f"{location}/subgroup/{k}") for k, ref in enumerate(members)
        )
        spec_group = target if images is not None else None
        return SubgroupSpec(kind="quotient", group=spec_group, images=images, subgroup=sub or (0,))
    raise InputError(f"unknown covering kind {kind!r}", f"{location}/kind")


def parse_instance_data(data: Any, name: str = "document") -> Instance:
    """Validate a loaded document into an Instance (flatness included)."""
    if not isinstance(data, dict):
        raise InputError("document must be a JSON object", "/")
    for section in ("group", "complex", "voltage"):
        if section not in data:
            raise InputError(f"missing section '{section}'", f"/{section}")
    g = parse_group(data["group"])
    c, aliases = parse_complex(data["complex"])
    v = parse_voltage(data["voltage"], c, g, aliases)
    violations = check_flatness(v)
    if violations:
        details = "; ".join(str(x) for x in violations)
        raise InputError(f"voltage is not flat: {details}", "/voltage")
    spec = None
    cap = None
    if "covering" in data and data["covering"] is not None:
        spec = parse_covering(data["covering"], c, g, aliases)
        raw_cap = data["covering"].get("cap")
        if raw_cap is not None:
            try:
                cap = int(raw_cap)
            except (TypeError, ValueError):
                raise InputError("'cap' must be an integer", "/covering/cap") from None
            if cap < 1:
                raise InputError("'cap' must be positive", "/covering/cap")
    return Instance(c, g, v, spec, name=name, tc_cap=cap)


def parse_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read document: {exc}", "/") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}", "/") from None
    return parse_instance_data(data, name=path)


def complex_to_json(c: BaseComplex) -> dict:
    """Serialize a complex into the document's 'complex' section shape."""
    return {
        "vertices": c.vertex_count,
        "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in c.edges],
        "basepoint": c.basepoint,
        "relators": [word_to_string(w) for w in c.relators],
    }
