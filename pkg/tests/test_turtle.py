import random

import pytest

from semcurate.rdf import (
    XSD_GYEAR,
    Graph,
    Iri,
    Literal,
    ParseError,
    RelativeIriError,
    parse_turtle,
    serialize_turtle,
)

import martis
from corpus import PREFIXES, turtle_documents
from randgen import random_graph


def test_minimal_statement():
    g = parse_turtle("<http://x/a> <http://x/b> <http://x/c> .")
    assert len(g) == 1
    (t,) = list(g)
    assert t.subject == Iri("http://x/a")
    assert t.object == Iri("http://x/c")


def test_empty_document():
    assert len(parse_turtle("")) == 0
    assert len(parse_turtle("  # just a comment\n")) == 0


def test_a_keyword_and_object_lists():
    g = parse_turtle(
        "@prefix ex: <http://x/> . ex:s a ex:T ; ex:p ex:o1, ex:o2 ."
    )
    assert len(g) == 3


def test_anonymous_blank_nodes_do_not_collide_with_labels():
    g = parse_turtle(
        "@prefix ex: <http://x/> . ex:s ex:p _:anon1 . ex:s ex:q [ ex:r 1 ] ."
    )
    # The [] node must be distinct from the explicit _:anon1.
    objects = {t.object for t in g.match(Iri("http://x/s"), Iri("http://x/q"))}
    explicit = {t.object for t in g.match(Iri("http://x/s"), Iri("http://x/p"))}
    assert objects and explicit and objects.isdisjoint(explicit)


def test_collections_are_rejected():
    with pytest.raises(ParseError) as exc:
        parse_turtle("@prefix ex: <http://x/> . ex:s ex:p (1 2) .")
    assert "collection" in str(exc.value)


def test_quoted_triples_are_rejected():
    with pytest.raises(ParseError):
        parse_turtle("<http://x/s> <http://x/p> << <http://x/a> <http://x/b> <http://x/c> >> .")


def test_relative_iri_without_base_errors():
    with pytest.raises(RelativeIriError):
        parse_turtle("<doc1> <http://x/p> <http://x/o> .")


def test_relative_iri_resolved_against_base():
    g = parse_turtle("<doc1> <http://x/p> <../up> .", base="http://example.org/dir/")
    (t,) = list(g)
    assert t.subject == Iri("http://example.org/dir/doc1")
    assert t.object == Iri("http://example.org/up")


def test_syntax_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse_turtle("<http://x/a> <http://x/b>\n  %%% .")
    assert exc.value.line == 2
    assert exc.value.column >= 1


def test_undeclared_prefix_errors():
    with pytest.raises(ParseError) as exc:
        parse_turtle("ex:s ex:p ex:o .")
    assert "prefix" in str(exc.value)


def test_martis_fixture_literals():
    (text,) = [d for n, d in turtle_documents() if n == "martis-record.ttl"]
    g = parse_turtle(text)
    lexicals = {t.object.lexical for t in g if isinstance(t.object, Literal)}
    assert martis.DOI in lexicals
    assert martis.PAGES in lexicals
    assert martis.ISSN in lexicals
    assert martis.EISSN in lexicals
    assert Literal(martis.YEAR, XSD_GYEAR) in {t.object for t in g if isinstance(t.object, Literal)}


def test_fixture_corpus_round_trips():
    docs = turtle_documents()
    assert len(docs) >= 35
    for name, text in docs:
        first = parse_turtle(text, base="http://example.org/base/")
        serialized = serialize_turtle(first, PREFIXES)
        second = parse_turtle(serialized)
        assert second == first, f"round-trip mismatch for {name}"


def test_serialization_is_deterministic():
    rng = random.Random(7)
    for _ in range(20):
        g = random_graph(rng)
        assert serialize_turtle(g, PREFIXES) == serialize_turtle(Graph(g.triples), PREFIXES)


def test_one_triple_one_statement_line():
    g = parse_turtle("<http://x/a> <http://x/b> <http://x/c> .")
    out = serialize_turtle(g, {})
    statements = [line for line in out.splitlines() if line.strip()]
    assert len(statements) == 1


def test_empty_graph_serializes_to_prefixes_only():
    assert serialize_turtle(Graph(), PREFIXES) == ""


def test_crlf_input_normalized():
    g = parse_turtle("<http://x/a> <http://x/b>\r\n  \"line\" .")
    (t,) = list(g)
    assert t.object == Literal("line")
