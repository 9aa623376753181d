"""RDF data model, Turtle/N-Quads parsing and serialization, set algebra."""

from .graphs import Dataset, Graph, apply_diff, graph_diff, skolemize
from .nquads import parse_nquad_line, parse_nquads, quad_to_line, serialize_nquads
from .terms import (
    RDF_FIRST,
    RDF_LANG_STRING,
    RDF_NIL,
    RDF_NS,
    RDF_REST,
    RDF_TYPE,
    RDFS_NS,
    XSD_BOOLEAN,
    XSD_DATETIME,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_GYEAR,
    XSD_INTEGER,
    XSD_NS,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    Quad,
    Term,
    Triple,
    quad_of,
    term_sort_key,
)
from .turtle import ParseError, RelativeIriError, parse_turtle, serialize_turtle

__all__ = [
    "BlankNode",
    "Dataset",
    "Graph",
    "Iri",
    "Literal",
    "ParseError",
    "Quad",
    "RDF_FIRST",
    "RDF_LANG_STRING",
    "RDF_NIL",
    "RDF_NS",
    "RDF_REST",
    "RDF_TYPE",
    "RDFS_NS",
    "RelativeIriError",
    "Term",
    "Triple",
    "XSD_BOOLEAN",
    "XSD_DATETIME",
    "XSD_DECIMAL",
    "XSD_DOUBLE",
    "XSD_GYEAR",
    "XSD_INTEGER",
    "XSD_NS",
    "XSD_STRING",
    "apply_diff",
    "graph_diff",
    "parse_nquad_line",
    "parse_nquads",
    "parse_turtle",
    "quad_of",
    "quad_to_line",
    "serialize_nquads",
    "serialize_turtle",
    "skolemize",
    "term_sort_key",
]
