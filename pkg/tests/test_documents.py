import pytest

from semcurate.api.documents import (
    DocumentError,
    EntityDocument,
    NestedNode,
    document_from_graph,
    document_from_json,
    document_to_json,
    graph_from_document,
)
from semcurate.rdf import Graph, Iri, Literal, parse_turtle, skolemize

from corpus import FIXTURE_DIR

BASE = "https://db.example.org"
ENTITY = BASE + "/journal-article/1"


def martis_graph() -> Graph:
    text = (FIXTURE_DIR / "martis-record.ttl").read_text(encoding="utf-8")
    full = parse_turtle(text)
    # Just the article's own subgraph (the agent is a separate entity).
    article = Graph(
        t for t in full if t.subject != Iri(BASE + "/responsible-agent/1")
    )
    return skolemize(article, BASE)


def test_document_extracts_keywords_and_type():
    doc = document_from_graph(ENTITY, martis_graph())
    assert doc.type == "http://purl.org/spar/fabio/JournalArticle"
    assert doc.keywords == {"commented edition", "exegetical products"}
    assert "http://prismstandard.org/namespaces/basic/2.0/keyword" not in doc.fields


def test_nested_identifiers_become_subdocuments():
    doc = document_from_graph(ENTITY, martis_graph())
    identifiers = doc.fields["http://purl.org/spar/datacite/hasIdentifier"]
    assert len(identifiers) == 3
    assert all(isinstance(v, NestedNode) for v in identifiers)
    values = {
        v.fields["http://www.essepuntato.it/2010/06/literalreification/hasLiteralValue"][0].lexical
        for v in identifiers
    }
    assert values == {"10.1400/213891", "1724-6156", "1824-7326"}
    assert all(v.id and "/.well-known/genid/" in v.id for v in identifiers)


def test_graph_round_trips_through_document():
    graph = martis_graph()
    doc = document_from_graph(ENTITY, graph)
    assert graph_from_document(doc) == graph


def test_json_round_trips_through_document():
    doc = document_from_graph(ENTITY, martis_graph())
    data = document_to_json(doc)
    again = document_from_json(data)
    assert document_to_json(again) == data
    assert graph_from_document(again) == graph_from_document(doc)


def test_unidentified_nested_nodes_get_blank_nodes():
    doc = EntityDocument(
        iri=ENTITY,
        type="http://purl.org/spar/fabio/JournalArticle",
        fields={
            "http://purl.org/spar/datacite/hasIdentifier": (
                NestedNode(
                    id=None,
                    node_type="http://purl.org/spar/datacite/Identifier",
                    fields={
                        "http://www.essepuntato.it/2010/06/literalreification/hasLiteralValue": (
                            Literal("10.1400/213891"),
                        )
                    },
                ),
            )
        },
    )
    graph = graph_from_document(doc)
    blanks = [t.object for t in graph if t.predicate.value.endswith("hasIdentifier")]
    assert len(blanks) == 1
    skolemized = skolemize(graph, BASE)
    assert all(not repr(t.object).startswith("_:") for t in skolemized)


def test_document_without_iri_is_rejected():
    doc = EntityDocument(iri=None, type=None, fields={})
    with pytest.raises(DocumentError):
        graph_from_document(doc)


def test_bad_json_shapes_are_rejected():
    with pytest.raises(DocumentError):
        document_from_json({"fields": {"http://x/p": "not-a-list"}})
    with pytest.raises(DocumentError):
        document_from_json({"keywords": "not-a-list"})
    with pytest.raises(DocumentError):
        document_from_json({"fields": {"http://x/p": [{"type": "mystery"}]}})


def test_cyclic_nested_nodes_round_trip():
    a = BASE + "/.well-known/genid/aaa"
    b = BASE + "/.well-known/genid/bbb"
    graph = Graph([
        *parse_turtle(
            f"<{ENTITY}> <http://x/p> <{a}> ."
            f"<{a}> <http://x/q> <{b}> ."
            f"<{b}> <http://x/r> <{a}> ."
        )
    ])
    doc = document_from_graph(ENTITY, graph)
    assert graph_from_document(doc) == graph
