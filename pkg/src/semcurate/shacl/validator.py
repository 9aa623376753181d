"""Constraint validation over data graphs.

Targeting reads direct rdf:type assertions only. Reports are deterministic:
results are sorted by focus node, path, component and offending value.
Recursive sh:node checks carry a visited set so cyclic data terminates.
"""

from __future__ import annotations

import re

from ..rdf import RDF_TYPE, BlankNode, Graph, Iri, Literal, Term, term_sort_key
from .model import (
    Component,
    NodeKind,
    NodeShape,
    PropertyShape,
    ShapesModel,
    ValidationReport,
    ValidationResult,
)


def _path_values(data: Graph, focus: Term, prop: PropertyShape) -> list[Term]:
    predicate = Iri(prop.path)
    if prop.inverse:
        return sorted(
            (t.subject for t in data.match(None, predicate, focus)), key=term_sort_key
        )
    return data.objects(focus, predicate)


def _has_type(data: Graph, node: Term, class_iri: str) -> bool:
    if isinstance(node, Literal):
        return False
    return any(data.match(node, Iri(RDF_TYPE), Iri(class_iri)))


def _matches_node_kind(value: Term, kind: NodeKind) -> bool:
    if kind is NodeKind.IRI:
        return isinstance(value, Iri)
    if kind is NodeKind.LITERAL:
        return isinstance(value, Literal)
    return isinstance(value, (Iri, BlankNode))


def _pattern_text(value: Term) -> str:
    if isinstance(value, Literal):
        return value.lexical
    if isinstance(value, Iri):
        return value.value
    return value.label


def _conforms_to(
    data: Graph,
    shapes: ShapesModel,
    focus: Term,
    shape: NodeShape,
    visited: frozenset[tuple[Term, str]],
) -> bool:
    """True when `focus` satisfies every property constraint of `shape`.

    Re-visiting a (focus, shape) pair short-circuits to true, which keeps
    cyclic node references from recursing forever.
    """
    if (focus, shape.iri) in visited:
        return True
    visited = visited | {(focus, shape.iri)}
    for prop in shape.properties:
        if _property_violations(data, shapes, focus, prop, visited):
            return False
    return True


def _property_violations(
    data: Graph,
    shapes: ShapesModel,
    focus: Term,
    prop: PropertyShape,
    visited: frozenset[tuple[Term, str]],
) -> list[ValidationResult]:
    values = _path_values(data, focus, prop)
    results: list[ValidationResult] = []

    def report(component: Component, message: str, offending: Term | None = None) -> None:
        results.append(ValidationResult(focus, prop.path, component, offending, message))

    if prop.min_count is not None and len(values) < prop.min_count:
        report(
            Component.MIN_COUNT,
            f"expected at least {prop.min_count} value(s) for <{prop.path}>, found {len(values)}",
        )
    if prop.max_count is not None and len(values) > prop.max_count:
        report(
            Component.MAX_COUNT,
            f"expected at most {prop.max_count} value(s) for <{prop.path}>, found {len(values)}",
        )
    if prop.has_value is not None and prop.has_value not in values:
        report(
            Component.HAS_VALUE,
            f"missing required value {prop.has_value!r} for <{prop.path}>",
        )

    for value in values:
        if prop.datatype is not None:
            if not isinstance(value, Literal) or value.datatype != prop.datatype:
                report(
                    Component.DATATYPE,
                    f"value {value!r} does not have datatype <{prop.datatype}>",
                    value,
                )
        if prop.class_constraint is not None and not _has_type(data, value, prop.class_constraint):
            report(
                Component.CLASS,
                f"value {value!r} is not an instance of <{prop.class_constraint}>",
                value,
            )
        if prop.node_kind is not None and not _matches_node_kind(value, prop.node_kind):
            report(
                Component.NODE_KIND,
                f"value {value!r} is not of node kind {prop.node_kind.value}",
                value,
            )
        if prop.in_list is not None and value not in prop.in_list:
            report(
                Component.IN,
                f"value {value!r} is not in the allowed value list for <{prop.path}>",
                value,
            )
        if prop.pattern is not None and not re.search(prop.pattern, _pattern_text(value)):
            report(
                Component.PATTERN,
                f"value {value!r} does not match pattern {prop.pattern!r}",
                value,
            )
        if prop.node_shape is not None:
            referenced = shapes.by_iri[prop.node_shape]
            if not _conforms_to(data, shapes, value, referenced, visited):
                report(
                    Component.NODE,
                    f"value {value!r} does not conform to shape <{prop.node_shape}>",
                    value,
                )

    return results


def validate(data: Graph, shapes: ShapesModel) -> ValidationReport:
    """Check every typed node against the shape targeting its class."""
    results: list[ValidationResult] = []
    for shape in shapes.shapes:
        if shape.target_class is None:
            continue
        for focus in data.subjects(Iri(RDF_TYPE), Iri(shape.target_class)):
            visited = frozenset({(focus, shape.iri)})
            for prop in shape.properties:
                results.extend(_property_violations(data, shapes, focus, prop, visited))
    results.sort(key=ValidationResult.sort_key)
    return ValidationReport(results=tuple(results))
