import pytest

from semcurate.rdf import (
    RDF_LANG_STRING,
    XSD_INTEGER,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    Quad,
    Triple,
    term_sort_key,
)


def test_iri_requires_scheme():
    Iri("http://example.org/x")
    Iri("urn:uuid:1234")
    with pytest.raises(ValueError):
        Iri("relative/path")
    with pytest.raises(ValueError):
        Iri(":nocolonprefix")


def test_language_tag_requires_langstring_datatype():
    lit = Literal("ciao", RDF_LANG_STRING, "IT")
    assert lit.lang == "it"  # tags normalize to lowercase
    with pytest.raises(ValueError):
        Literal("ciao", XSD_STRING, "it")
    with pytest.raises(ValueError):
        Literal("ciao", RDF_LANG_STRING)


def test_literal_equality_is_lexical_not_value_based():
    assert Literal("01", XSD_INTEGER) != Literal("1", XSD_INTEGER)
    assert Literal("a") == Literal("a", XSD_STRING)


def test_triple_position_restrictions():
    s = Iri("http://x/s")
    p = Iri("http://x/p")
    with pytest.raises(ValueError):
        Triple(Literal("no"), p, s)
    with pytest.raises(ValueError):
        Triple(s, BlankNode("b"), s)  # type: ignore[arg-type]


def test_quad_graph_must_be_absolute():
    s, p, o = Iri("http://x/s"), Iri("http://x/p"), Literal("v")
    assert Quad(s, p, o).graph is None
    assert Quad(s, p, o, "http://x/g").graph == "http://x/g"
    with pytest.raises(ValueError):
        Quad(s, p, o, "not-absolute")


def test_term_sort_key_orders_iri_blank_literal():
    keys = [
        term_sort_key(Literal("a")),
        term_sort_key(BlankNode("a")),
        term_sort_key(Iri("http://x/a")),
    ]
    assert sorted(keys) == [keys[2], keys[1], keys[0]]
