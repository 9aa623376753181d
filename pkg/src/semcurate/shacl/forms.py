"""Compile shapes into the form schema consumed by editing interfaces.

Field kind selection, in priority order: an enumerated value list becomes a
dropdown; a class constraint or IRI node kind becomes an entity reference;
a node shape reference becomes a nested form; string-like datatypes become
plain text; any other datatype becomes a typed literal input.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..namespaces import RDFS_RESOURCE
from ..rdf import RDF_LANG_STRING, XSD_STRING, Term
from ..termjson import term_to_json
from .model import NodeKind, PropertyShape, ShapesModel

KIND_TEXT = "text"
KIND_TYPED = "typed-literal"
KIND_DROPDOWN = "dropdown"
KIND_REFERENCE = "entity-reference"
KIND_NESTED = "nested-form"

_STRING_LIKE = {XSD_STRING, RDF_LANG_STRING}


@dataclass(frozen=True)
class FormField:
    predicate: str
    label: str
    kind: str
    required: bool
    repeatable: bool
    options: tuple[Term, ...] | None = None
    datatype: str | None = None
    referenced_class: str | None = None
    nested_shape: str | None = None


@dataclass(frozen=True)
class FormSchema:
    entries: dict[str, tuple[FormField, ...]]


def local_name(iri: str) -> str:
    if "#" in iri:
        return iri.rsplit("#", 1)[1]
    return iri.rstrip("/").rsplit("/", 1)[-1]


def _field_for(prop: PropertyShape, shapes: ShapesModel) -> FormField:
    required = (prop.min_count or 0) >= 1
    repeatable = prop.max_count is None or prop.max_count > 1
    label = prop.display_name or local_name(prop.path)

    if prop.in_list is not None:
        kind = KIND_DROPDOWN
    elif prop.class_constraint is not None or prop.node_kind is NodeKind.IRI:
        kind = KIND_REFERENCE
    elif prop.node_shape is not None:
        kind = KIND_NESTED
    elif prop.datatype is None or prop.datatype in _STRING_LIKE:
        kind = KIND_TEXT
    else:
        kind = KIND_TYPED

    nested_shape = None
    if kind == KIND_NESTED:
        # Export the referenced shape's target class when it has one: the
        # schema JSON is keyed by class, so this keeps nested forms
        # resolvable by consumers without extra lookups.
        referenced = shapes.by_iri.get(prop.node_shape)
        nested_shape = (
            referenced.target_class
            if referenced is not None and referenced.target_class
            else prop.node_shape
        )

    return FormField(
        predicate=prop.path,
        label=label,
        kind=kind,
        required=required,
        repeatable=repeatable,
        options=prop.in_list if kind == KIND_DROPDOWN else None,
        datatype=prop.datatype,
        referenced_class=(
            (prop.class_constraint or RDFS_RESOURCE) if kind == KIND_REFERENCE else None
        ),
        nested_shape=nested_shape,
    )


def derive_form_schema(shapes: ShapesModel) -> FormSchema:
    entries: dict[str, tuple[FormField, ...]] = {}
    for shape in shapes.shapes:
        if shape.target_class is None:
            continue
        entries[shape.target_class] = tuple(
            _field_for(p, shapes) for p in shape.properties
        )
    return FormSchema(entries=entries)


def field_to_json(field: FormField) -> dict:
    out: dict = {
        "predicate": field.predicate,
        "label": field.label,
        "kind": field.kind,
        "required": field.required,
        "repeatable": field.repeatable,
    }
    if field.options is not None:
        out["options"] = [term_to_json(o) for o in field.options]
    if field.datatype is not None:
        out["datatype"] = field.datatype
    if field.referenced_class is not None:
        out["referencedClass"] = field.referenced_class
    if field.nested_shape is not None:
        out["nestedShape"] = field.nested_shape
    return out


def schema_to_json(schema: FormSchema) -> dict:
    return {
        target: [field_to_json(f) for f in fields]
        for target, fields in sorted(schema.entries.items())
    }
