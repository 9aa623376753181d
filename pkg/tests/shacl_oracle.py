"""Independent brute-force constraint checker used as the validation oracle.

Deliberately primitive: raw iteration over the triple set, one explicit
check per constraint, no shared code with the engine beyond the data
classes. Returns violation tuples (focus, path, component name, offending
value or None).
"""

from __future__ import annotations

import re

from semcurate.rdf import RDF_TYPE, BlankNode, Graph, Iri, Literal, Term
from semcurate.shacl import NodeKind, NodeShape, PropertyShape, ShapesModel

Violation = tuple[Term, str, str, Term | None]


def _values(data: Graph, focus: Term, prop: PropertyShape) -> list[Term]:
    if prop.inverse:
        return [t.subject for t in data if t.predicate.value == prop.path and t.object == focus]
    return [t.object for t in data if t.subject == focus and t.predicate.value == prop.path]


def _typed_as(data: Graph, node: Term, class_iri: str) -> bool:
    for t in data:
        if (
            t.subject == node
            and t.predicate.value == RDF_TYPE
            and isinstance(t.object, Iri)
            and t.object.value == class_iri
        ):
            return True
    return False


def _kind_ok(value: Term, kind: NodeKind) -> bool:
    if kind is NodeKind.IRI:
        return isinstance(value, Iri)
    if kind is NodeKind.LITERAL:
        return isinstance(value, Literal)
    return isinstance(value, (Iri, BlankNode))


def _text_of(value: Term) -> str:
    if isinstance(value, Literal):
        return value.lexical
    if isinstance(value, Iri):
        return value.value
    return value.label


def _check_property(
    data: Graph,
    shapes: ShapesModel,
    focus: Term,
    prop: PropertyShape,
    visited: frozenset,
) -> list[Violation]:
    values = _values(data, focus, prop)
    out: list[Violation] = []

    if prop.min_count is not None and len(values) < prop.min_count:
        out.append((focus, prop.path, "MinCount", None))
    if prop.max_count is not None and len(values) > prop.max_count:
        out.append((focus, prop.path, "MaxCount", None))
    if prop.has_value is not None and prop.has_value not in values:
        out.append((focus, prop.path, "HasValue", None))

    for value in values:
        if prop.datatype is not None:
            if not (isinstance(value, Literal) and value.datatype == prop.datatype):
                out.append((focus, prop.path, "Datatype", value))
        if prop.class_constraint is not None:
            if not _typed_as(data, value, prop.class_constraint):
                out.append((focus, prop.path, "Class", value))
        if prop.node_kind is not None:
            if not _kind_ok(value, prop.node_kind):
                out.append((focus, prop.path, "NodeKind", value))
        if prop.in_list is not None:
            if value not in prop.in_list:
                out.append((focus, prop.path, "In", value))
        if prop.pattern is not None:
            if re.search(prop.pattern, _text_of(value)) is None:
                out.append((focus, prop.path, "Pattern", value))
        if prop.node_shape is not None:
            referenced = shapes.by_iri[prop.node_shape]
            if not _node_ok(data, shapes, value, referenced, visited):
                out.append((focus, prop.path, "Node", value))

    return out


def _node_ok(
    data: Graph,
    shapes: ShapesModel,
    focus: Term,
    shape: NodeShape,
    visited: frozenset,
) -> bool:
    if (focus, shape.iri) in visited:
        return True
    visited = visited | {(focus, shape.iri)}
    for prop in shape.properties:
        if _check_property(data, shapes, focus, prop, visited):
            return False
    return True


def oracle_violations(data: Graph, shapes: ShapesModel) -> set[Violation]:
    found: set[Violation] = set()
    for shape in shapes.shapes:
        if shape.target_class is None:
            continue
        focuses = {
            t.subject
            for t in data
            if t.predicate.value == RDF_TYPE
            and isinstance(t.object, Iri)
            and t.object.value == shape.target_class
        }
        for focus in focuses:
            seed = frozenset({(focus, shape.iri)})
            for prop in shape.properties:
                found.update(_check_property(data, shapes, focus, prop, seed))
    return found
