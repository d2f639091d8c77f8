"""JSON file formats for algebras, contexts, frames, models and lattices.

Every loader accepts either a path or an already-parsed dict.  An
algebra inside a context file may be given inline as an object or as a
path string, resolved relative to the referencing file.
"""

from __future__ import annotations

import json
import os
from typing import Mapping, Optional

from .algebra import TruthAlgebra, construct_chain, custom_algebra, validate_algebra
from .canonical import ModalLattice
from .context import Concept, Context
from .errors import InputError, UsageError
from .frames import EnrichedContext
from .mvsets import MvRelation, MvSet
from .semantics import Model


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None


def _need(data: Mapping, key: str, what: str):
    if key not in data:
        raise InputError(f'{what} needs a "{key}" entry')
    return data[key]


def algebra_from_dict(data) -> TruthAlgebra:
    if not isinstance(data, Mapping):
        raise InputError("an algebra must be a JSON object")
    kind = _need(data, "kind", "an algebra")
    size = _need(data, "size", "an algebra")
    if not isinstance(size, int) or isinstance(size, bool):
        raise InputError('"size" must be an integer')
    if kind in ("lukasiewicz", "goedel", "boolean"):
        return construct_chain(kind, size)
    if kind == "custom":
        tables = [_need(data, key, "a custom algebra") for key in ("join", "meet", "otimes", "residuum")]
        try:
            alg = custom_algebra(size, *tables)
        except UsageError as e:
            raise InputError(str(e)) from None
        report = validate_algebra(alg)
        if not report.ok:
            laws = ", ".join(c.law for c in report.failures())
            raise InputError(f"the custom tables violate: {laws}")
        return alg
    raise InputError(f"unknown algebra kind {kind!r}")


def algebra_from_spec(spec: str, base_dir: str = ".") -> TruthAlgebra:
    """Inline form "lukasiewicz:5" / "goedel:3" / "boolean", or a file path."""
    head, sep, tail = spec.partition(":")
    if head in ("lukasiewicz", "goedel"):
        try:
            n = int(tail)
        except ValueError:
            raise InputError(f"expected a chain size after {head!r}, got {tail!r}") from None
        return construct_chain(head, n)
    if spec == "boolean":
        return construct_chain("boolean", 2)
    path = spec if os.path.isabs(spec) else os.path.join(base_dir, spec)
    return algebra_from_dict(load_json(path))


def _resolve_algebra(data, base_dir: str) -> TruthAlgebra:
    raw = _need(data, "algebra", "a context")
    if isinstance(raw, str):
        path = raw if os.path.isabs(raw) else os.path.join(base_dir, raw)
        return algebra_from_dict(load_json(path))
    return algebra_from_dict(raw)


def _relation(algebra, source, target, rows, what: str) -> MvRelation:
    try:
        return MvRelation(algebra, source, target, rows)
    except (InputError, UsageError) as e:
        raise InputError(f"bad {what} matrix: {e}") from None


def context_from_dict(data, base_dir: str = ".") -> Context:
    if not isinstance(data, Mapping):
        raise InputError("a context must be a JSON object")
    algebra = _resolve_algebra(data, base_dir)
    objects = _need(data, "objects", "a context")
    attributes = _need(data, "attributes", "a context")
    rows = _need(data, "I", "a context")
    return Context(_relation(algebra, objects, attributes, rows, "I"))


_RELATION_SHAPES = (
    ("R_box", "objects", "attributes"),
    ("R_diamond", "attributes", "objects"),
    ("R_rhd", "objects", "objects"),
    ("R_lhd", "attributes", "attributes"),
)


def frame_from_dict(data, base_dir: str = ".") -> EnrichedContext:
    base = context_from_dict(data, base_dir)
    carriers = {"objects": base.objects, "attributes": base.attributes}
    rels = {}
    for key, src, tgt in _RELATION_SHAPES:
        if key in data:
            rels[key.lower()] = _relation(base.algebra, carriers[src], carriers[tgt], data[key], key)
    return EnrichedContext(
        base,
        r_box=rels.get("r_box"),
        r_diamond=rels.get("r_diamond"),
        r_rhd=rels.get("r_rhd"),
        r_lhd=rels.get("r_lhd"),
    )


def model_from_dict(data, base_dir: str = ".") -> Model:
    frame = frame_from_dict(data, base_dir)
    raw = _need(data, "V", "a model")
    if not isinstance(raw, Mapping):
        raise InputError('"V" must map atoms to one-sided degree lists')
    base = frame.base
    valuation = {}
    for name, sides in raw.items():
        if not isinstance(sides, Mapping) or set(sides) not in ({"extent"}, {"intent"}):
            raise InputError(f'valuation of {name!r} must give exactly one of "extent" or "intent"')
        try:
            if "extent" in sides:
                ext = MvSet(base.algebra, base.objects, sides["extent"])
                intn = base.up(ext)
                if base.down(intn) != ext:
                    raise InputError(f"the given extent for {name!r} is not stable")
            else:
                intn = MvSet(base.algebra, base.attributes, sides["intent"])
                ext = base.down(intn)
                if base.up(ext) != intn:
                    raise InputError(f"the given intent for {name!r} is not stable")
        except UsageError as e:
            raise InputError(f"bad degrees for {name!r}: {e}") from None
        valuation[name] = Concept(ext, intn)
    return Model(frame, valuation)


def modal_lattice_from_dict(data) -> ModalLattice:
    if not isinstance(data, Mapping):
        raise InputError("a modal lattice must be a JSON object")
    return ModalLattice(
        _need(data, "elements", "a modal lattice"),
        _need(data, "leq", "a modal lattice"),
        _need(data, "box", "a modal lattice"),
        _need(data, "dia", "a modal lattice"),
        atoms=data.get("atoms", ()),
    )


def load_context(path: str) -> Context:
    return context_from_dict(load_json(path), os.path.dirname(path) or ".")


def load_frame(path: str) -> EnrichedContext:
    return frame_from_dict(load_json(path), os.path.dirname(path) or ".")


def load_model(path: str) -> Model:
    return model_from_dict(load_json(path), os.path.dirname(path) or ".")


def load_modal_lattice(path: str) -> ModalLattice:
    return modal_lattice_from_dict(load_json(path))
