"""Shape graph loading.

Reads node shapes and their property constraints from a parsed shapes graph.
Supported constraint terms: targetClass, property, path (plain predicate or
inversePath), minCount, maxCount, datatype, class, nodeKind, in, pattern,
hasValue, node, name, description, order. Anything else in the SHACL
namespace is collected as a warning rather than an error. List values
(sh:in) are read from rdf:first/rdf:rest structure.
"""

from __future__ import annotations

import re

from ..namespaces import SH
from ..rdf import (
    RDF_FIRST,
    RDF_NIL,
    RDF_REST,
    RDF_TYPE,
    BlankNode,
    Graph,
    Iri,
    Literal,
    Term,
)
from .model import NodeKind, NodeShape, PropertyShape, ShapesModel

SH_NODE_SHAPE = SH + "NodeShape"
SH_TARGET_CLASS = SH + "targetClass"
SH_PROPERTY = SH + "property"
SH_PATH = SH + "path"
SH_INVERSE_PATH = SH + "inversePath"
SH_MIN_COUNT = SH + "minCount"
SH_MAX_COUNT = SH + "maxCount"
SH_DATATYPE = SH + "datatype"
SH_CLASS = SH + "class"
SH_NODE_KIND = SH + "nodeKind"
SH_IN = SH + "in"
SH_PATTERN = SH + "pattern"
SH_HAS_VALUE = SH + "hasValue"
SH_NODE = SH + "node"
SH_NAME = SH + "name"
SH_DESCRIPTION = SH + "description"
SH_ORDER = SH + "order"

_NODE_KINDS = {
    SH + "IRI": NodeKind.IRI,
    SH + "Literal": NodeKind.LITERAL,
    SH + "BlankNodeOrIRI": NodeKind.BLANK_OR_IRI,
}

_SUPPORTED_SHAPE_TERMS = {SH_TARGET_CLASS, SH_PROPERTY, SH_NAME, SH_DESCRIPTION}
_SUPPORTED_PROPERTY_TERMS = {
    SH_PATH,
    SH_MIN_COUNT,
    SH_MAX_COUNT,
    SH_DATATYPE,
    SH_CLASS,
    SH_NODE_KIND,
    SH_IN,
    SH_PATTERN,
    SH_HAS_VALUE,
    SH_NODE,
    SH_NAME,
    SH_DESCRIPTION,
    SH_ORDER,
}

_BACKREFERENCE_RE = re.compile(r"\\[1-9]")


class ShapeLoadError(Exception):
    pass


def _literal_value(term: Term, what: str) -> str:
    if not isinstance(term, Literal):
        raise ShapeLoadError(f"{what} must be a literal, found {term!r}")
    return term.lexical


def _int_value(term: Term, what: str) -> int:
    try:
        return int(_literal_value(term, what))
    except ValueError:
        raise ShapeLoadError(f"{what} must be an integer, found {term!r}") from None


def _read_list(graph: Graph, head: Term, what: str) -> tuple[Term, ...]:
    items: list[Term] = []
    seen: set[Term] = set()
    node = head
    while True:
        if node == Iri(RDF_NIL):
            return tuple(items)
        if node in seen:
            raise ShapeLoadError(f"cyclic list structure in {what}")
        seen.add(node)
        first = graph.value(node, Iri(RDF_FIRST))
        rest = graph.value(node, Iri(RDF_REST))
        if first is None or rest is None:
            raise ShapeLoadError(f"malformed list structure in {what}")
        items.append(first)
        node = rest


def _load_property(graph: Graph, shape_iri: str, node: Term, warnings: list[str]) -> tuple[float, PropertyShape]:
    path_term = graph.value(node, Iri(SH_PATH))
    if path_term is None:
        raise ShapeLoadError(f"property shape in <{shape_iri}> has no path")

    inverse = False
    if isinstance(path_term, Iri):
        path = path_term.value
    elif isinstance(path_term, BlankNode):
        inner = graph.value(path_term, Iri(SH_INVERSE_PATH))
        if not isinstance(inner, Iri):
            raise ShapeLoadError(
                f"property shape in <{shape_iri}> uses an unsupported path; "
                "only plain predicates and inversePath are supported"
            )
        path = inner.value
        inverse = True
    else:
        raise ShapeLoadError(f"property shape in <{shape_iri}> has a non-IRI path")

    kwargs: dict = {"path": path, "inverse": inverse}
    order = 0.0

    for triple in graph.match(node, None, None):
        pred = triple.predicate.value
        if not pred.startswith(SH):
            continue
        if pred not in _SUPPORTED_PROPERTY_TERMS:
            warnings.append(f"unsupported SHACL term <{pred}> on property shape in <{shape_iri}>")

    min_count = graph.value(node, Iri(SH_MIN_COUNT))
    if min_count is not None:
        kwargs["min_count"] = _int_value(min_count, "minCount")
        if kwargs["min_count"] < 0:
            raise ShapeLoadError("minCount must be non-negative")
    max_count = graph.value(node, Iri(SH_MAX_COUNT))
    if max_count is not None:
        kwargs["max_count"] = _int_value(max_count, "maxCount")
        if kwargs["max_count"] < 1:
            raise ShapeLoadError("maxCount must be positive")
    if (
        kwargs.get("min_count") is not None
        and kwargs.get("max_count") is not None
        and kwargs["min_count"] > kwargs["max_count"]
    ):
        raise ShapeLoadError(f"minCount exceeds maxCount on <{path}> in <{shape_iri}>")

    datatype = graph.value(node, Iri(SH_DATATYPE))
    if datatype is not None:
        if not isinstance(datatype, Iri):
            raise ShapeLoadError("datatype must be an IRI")
        kwargs["datatype"] = datatype.value
    class_constraint = graph.value(node, Iri(SH_CLASS))
    if class_constraint is not None:
        if not isinstance(class_constraint, Iri):
            raise ShapeLoadError("class constraint must be an IRI")
        kwargs["class_constraint"] = class_constraint.value
    if "datatype" in kwargs and "class_constraint" in kwargs:
        raise ShapeLoadError(
            f"property <{path}> in <{shape_iri}> declares both datatype and class"
        )

    node_kind = graph.value(node, Iri(SH_NODE_KIND))
    if node_kind is not None:
        if not isinstance(node_kind, Iri) or node_kind.value not in _NODE_KINDS:
            warnings.append(f"unsupported nodeKind {node_kind!r} in <{shape_iri}>")
        else:
            kwargs["node_kind"] = _NODE_KINDS[node_kind.value]

    in_head = graph.value(node, Iri(SH_IN))
    if in_head is not None:
        values = _read_list(graph, in_head, f"sh:in on <{path}>")
        if not values:
            raise ShapeLoadError(f"sh:in on <{path}> in <{shape_iri}> is empty")
        kwargs["in_list"] = values

    pattern = graph.value(node, Iri(SH_PATTERN))
    if pattern is not None:
        text = _literal_value(pattern, "pattern")
        if _BACKREFERENCE_RE.search(text):
            raise ShapeLoadError(f"pattern {text!r} uses backreferences, which are not supported")
        try:
            re.compile(text)
        except re.error as exc:
            raise ShapeLoadError(f"invalid pattern {text!r}: {exc}") from None
        kwargs["pattern"] = text

    has_value = graph.value(node, Iri(SH_HAS_VALUE))
    if has_value is not None:
        kwargs["has_value"] = has_value

    node_ref = graph.value(node, Iri(SH_NODE))
    if node_ref is not None:
        if not isinstance(node_ref, Iri):
            raise ShapeLoadError(f"sh:node on <{path}> must reference a shape IRI")
        kwargs["node_shape"] = node_ref.value

    name = graph.value(node, Iri(SH_NAME))
    if name is not None:
        kwargs["display_name"] = _literal_value(name, "name")
    description = graph.value(node, Iri(SH_DESCRIPTION))
    if description is not None:
        kwargs["description"] = _literal_value(description, "description")

    order_term = graph.value(node, Iri(SH_ORDER))
    if order_term is not None:
        try:
            order = float(_literal_value(order_term, "order"))
        except ValueError:
            raise ShapeLoadError(f"sh:order must be numeric in <{shape_iri}>") from None

    return order, PropertyShape(**kwargs)


def load_shapes(graph: Graph) -> ShapesModel:
    """Build a ShapesModel from a shapes graph.

    Raises ShapeLoadError on dangling node references, conflicting
    datatype/class constraints, or inverted cardinality bounds.
    """
    warnings: list[str] = []

    shape_subjects: list[Term] = graph.subjects(Iri(RDF_TYPE), Iri(SH_NODE_SHAPE))
    targeted = graph.subjects(Iri(SH_TARGET_CLASS), None)
    for subject in targeted:
        if subject not in shape_subjects:
            shape_subjects.append(subject)

    shapes: list[NodeShape] = []
    for subject in shape_subjects:
        if not isinstance(subject, Iri):
            warnings.append(f"ignoring blank-node shape {subject!r}; shapes must be IRIs")
            continue

        for triple in graph.match(subject, None, None):
            pred = triple.predicate.value
            if not pred.startswith(SH):
                continue
            if pred not in _SUPPORTED_SHAPE_TERMS:
                warnings.append(f"unsupported SHACL term <{pred}> on shape <{subject.value}>")

        target = graph.value(subject, Iri(SH_TARGET_CLASS))
        if target is not None and not isinstance(target, Iri):
            raise ShapeLoadError(f"targetClass of <{subject.value}> must be an IRI")

        ordered: list[tuple[float, int, PropertyShape]] = []
        for position, triple in enumerate(
            sorted(graph.match(subject, Iri(SH_PROPERTY)), key=lambda t: t.sort_key())
        ):
            order, prop = _load_property(graph, subject.value, triple.object, warnings)
            ordered.append((order, position, prop))
        ordered.sort(key=lambda item: (item[0], item[1]))

        label = graph.value(subject, Iri(SH_NAME))
        shapes.append(
            NodeShape(
                iri=subject.value,
                target_class=target.value if isinstance(target, Iri) else None,
                properties=tuple(prop for _, _, prop in ordered),
                label=label.lexical if isinstance(label, Literal) else None,
            )
        )

    shapes.sort(key=lambda s: s.iri)

    by_iri = {s.iri for s in shapes}
    if len(by_iri) != len(shapes):
        raise ShapeLoadError("duplicate shape IRIs in shapes graph")
    targets = [s.target_class for s in shapes if s.target_class]
    duplicates = {t for t in targets if targets.count(t) > 1}
    if duplicates:
        raise ShapeLoadError(f"multiple shapes target the same class: {sorted(duplicates)}")

    for shape in shapes:
        for prop in shape.properties:
            if prop.node_shape is not None and prop.node_shape not in by_iri:
                raise ShapeLoadError(
                    f"sh:node reference <{prop.node_shape}> in <{shape.iri}> "
                    "does not resolve to a declared shape"
                )

    return ShapesModel(shapes=tuple(shapes), warnings=tuple(warnings))
