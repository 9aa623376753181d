"""Entity documents: the JSON projection of an entity's graph.

A document carries the entity's type, a predicate-to-values map, and its
keyword set. Values are RDF terms; nested nodes (identifiers, contributor
roles) appear as embedded sub-documents that keep their node id, so
resubmitting an unchanged document rebuilds the identical graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..namespaces import PRISM_KEYWORD
from ..rdf import RDF_TYPE, BlankNode, Graph, Iri, Literal, Term, Triple, term_sort_key
from ..termjson import term_from_json, term_to_json

GENID_MARKER = "/.well-known/genid/"


class DocumentError(Exception):
    pass


@dataclass(frozen=True)
class NestedNode:
    id: str | None
    node_type: str | None
    fields: dict[str, tuple]

    def sort_key(self) -> tuple:
        return (self.id or "", self.node_type or "")


Value = Term | NestedNode


@dataclass
class EntityDocument:
    iri: str | None
    type: str | None
    fields: dict[str, tuple]
    keywords: frozenset[str] = field(default_factory=frozenset)


def _value_sort_key(value: Value) -> tuple:
    if isinstance(value, NestedNode):
        return (3, *value.sort_key())
    return term_sort_key(value)


def _value_to_json(value: Value) -> dict:
    if isinstance(value, NestedNode):
        out: dict = {"type": "node", "fields": _fields_to_json(value.fields)}
        if value.id is not None:
            out["id"] = value.id
        if value.node_type is not None:
            out["nodeType"] = value.node_type
        return out
    return term_to_json(value)


def _fields_to_json(fields: dict[str, tuple]) -> dict:
    return {
        predicate: [_value_to_json(v) for v in values]
        for predicate, values in sorted(fields.items())
    }


def _value_from_json(data: dict) -> Value:
    if not isinstance(data, dict):
        raise DocumentError(f"field values must be objects, got {data!r}")
    if data.get("type") == "node":
        raw_fields = data.get("fields", {})
        if not isinstance(raw_fields, dict):
            raise DocumentError("nested node 'fields' must be an object")
        return NestedNode(
            id=data.get("id"),
            node_type=data.get("nodeType"),
            fields=_fields_from_json(raw_fields),
        )
    try:
        return term_from_json(data)
    except (KeyError, ValueError) as exc:
        raise DocumentError(f"bad term encoding: {exc}") from None


def _fields_from_json(raw: dict) -> dict[str, tuple]:
    fields: dict[str, tuple] = {}
    for predicate, values in raw.items():
        if not isinstance(values, list):
            raise DocumentError(f"values of <{predicate}> must be an array")
        fields[predicate] = tuple(_value_from_json(v) for v in values)
    return fields


def document_to_json(doc: EntityDocument) -> dict:
    return {
        "iri": doc.iri,
        "type": doc.type,
        "fields": _fields_to_json(doc.fields),
        "keywords": sorted(doc.keywords),
    }


def document_from_json(data: dict) -> EntityDocument:
    if not isinstance(data, dict):
        raise DocumentError("document body must be a JSON object")
    keywords = data.get("keywords", [])
    if not isinstance(keywords, list) or not all(isinstance(k, str) for k in keywords):
        raise DocumentError("'keywords' must be an array of strings")
    raw_fields = data.get("fields", {})
    if not isinstance(raw_fields, dict):
        raise DocumentError("'fields' must be an object")
    return EntityDocument(
        iri=data.get("iri"),
        type=data.get("type"),
        fields=_fields_from_json(raw_fields),
        keywords=frozenset(keywords),
    )


def graph_from_document(doc: EntityDocument) -> Graph:
    """Build the entity graph; nested nodes without ids get fresh blank nodes
    (skolemized later, on the store path)."""
    if not doc.iri:
        raise DocumentError("document has no entity IRI")
    root = Iri(doc.iri)
    triples: list[Triple] = []
    counter = [0]

    if doc.type:
        triples.append(Triple(root, Iri(RDF_TYPE), Iri(doc.type)))
    for keyword in doc.keywords:
        triples.append(Triple(root, Iri(PRISM_KEYWORD), Literal(keyword)))

    def emit(subject: Term, fields: dict[str, tuple]) -> None:
        for predicate, values in fields.items():
            for value in values:
                if isinstance(value, NestedNode):
                    if value.id:
                        node: Term = Iri(value.id)
                    else:
                        counter[0] += 1
                        node = BlankNode(f"doc{counter[0]}")
                    triples.append(Triple(subject, Iri(predicate), node))
                    if value.node_type:
                        triples.append(Triple(node, Iri(RDF_TYPE), Iri(value.node_type)))
                    emit(node, value.fields)
                else:
                    triples.append(Triple(subject, Iri(predicate), value))

    emit(root, doc.fields)
    return Graph(triples)


def _is_nested_node(graph: Graph, term: Term) -> bool:
    if isinstance(term, BlankNode):
        return True
    return (
        isinstance(term, Iri)
        and GENID_MARKER in term.value
        and any(graph.match(term, None, None))
    )


def _collect_fields(
    graph: Graph, subject: Term, visited: frozenset[Term]
) -> tuple[str | None, dict[str, tuple]]:
    node_type: str | None = None
    fields: dict[str, list] = {}
    for triple in sorted(graph.match(subject, None, None), key=Triple.sort_key):
        if triple.predicate.value == RDF_TYPE and isinstance(triple.object, Iri):
            if node_type is None:
                node_type = triple.object.value
                continue
        value: Value
        if _is_nested_node(graph, triple.object) and triple.object not in visited:
            child_type, child_fields = _collect_fields(
                graph, triple.object, visited | {triple.object}
            )
            node_id = triple.object.value if isinstance(triple.object, Iri) else None
            value = NestedNode(id=node_id, node_type=child_type, fields=child_fields)
        else:
            value = triple.object
        fields.setdefault(triple.predicate.value, []).append(value)
    return node_type, {
        predicate: tuple(sorted(values, key=_value_sort_key))
        for predicate, values in fields.items()
    }


def document_from_graph(entity: str, graph: Graph) -> EntityDocument:
    root = Iri(entity)
    node_type, fields = _collect_fields(graph, root, frozenset({root}))
    keywords = frozenset(
        v.lexical for v in (t.object for t in graph.match(root, Iri(PRISM_KEYWORD)))
        if isinstance(v, Literal)
    )
    fields.pop(PRISM_KEYWORD, None)
    return EntityDocument(iri=entity, type=node_type, fields=fields, keywords=keywords)
