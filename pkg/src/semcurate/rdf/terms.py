"""RDF term model: IRIs, blank nodes, literals, triples and quads.

Terms are immutable values with structural equality. Literal comparison is
by lexical form only: "01"^^xsd:integer and "1"^^xsd:integer are distinct
terms, which keeps diffs reproducible and independent of datatype
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

RDF_TYPE = RDF_NS + "type"
RDF_FIRST = RDF_NS + "first"
RDF_REST = RDF_NS + "rest"
RDF_NIL = RDF_NS + "nil"
RDF_LANG_STRING = RDF_NS + "langString"
XSD_STRING = XSD_NS + "string"
XSD_INTEGER = XSD_NS + "integer"
XSD_DECIMAL = XSD_NS + "decimal"
XSD_DOUBLE = XSD_NS + "double"
XSD_BOOLEAN = XSD_NS + "boolean"
XSD_DATETIME = XSD_NS + "dateTime"
XSD_GYEAR = XSD_NS + "gYear"


def _is_absolute_iri(value: str) -> bool:
    # Absolute = scheme ':' rest, scheme per RFC 3986 (ALPHA *(ALPHA/DIGIT/+/-/.)).
    colon = value.find(":")
    if colon < 1:
        return False
    scheme = value[:colon]
    if not scheme[0].isalpha():
        return False
    return all(c.isalnum() or c in "+-." for c in scheme)


@dataclass(frozen=True)
class Iri:
    value: str

    def __post_init__(self) -> None:
        if not _is_absolute_iri(self.value):
            raise ValueError(f"not an absolute IRI: {self.value!r}")

    def __repr__(self) -> str:
        return f"<{self.value}>"


@dataclass(frozen=True)
class BlankNode:
    label: str

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("blank node label must be non-empty")

    def __repr__(self) -> str:
        return f"_:{self.label}"


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: str = XSD_STRING
    lang: str | None = None

    def __post_init__(self) -> None:
        if self.lang is not None:
            if self.datatype != RDF_LANG_STRING:
                raise ValueError("language-tagged literal must use rdf:langString")
            object.__setattr__(self, "lang", self.lang.lower())
        elif self.datatype == RDF_LANG_STRING:
            raise ValueError("rdf:langString literal requires a language tag")
        if not _is_absolute_iri(self.datatype):
            raise ValueError(f"datatype must be an absolute IRI: {self.datatype!r}")

    def __repr__(self) -> str:
        if self.lang:
            return f'"{self.lexical}"@{self.lang}'
        if self.datatype == XSD_STRING:
            return f'"{self.lexical}"'
        return f'"{self.lexical}"^^<{self.datatype}>'


Term = Iri | BlankNode | Literal


def term_sort_key(term: Term) -> tuple:
    """Total order over terms: IRIs, then blank nodes, then literals."""
    if isinstance(term, Iri):
        return (0, term.value, "", "")
    if isinstance(term, BlankNode):
        return (1, term.label, "", "")
    return (2, term.lexical, term.datatype, term.lang or "")


@dataclass(frozen=True)
class Triple:
    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self) -> None:
        if isinstance(self.subject, Literal):
            raise ValueError("triple subject cannot be a literal")
        if not isinstance(self.predicate, Iri):
            raise ValueError("triple predicate must be an IRI")

    def sort_key(self) -> tuple:
        return (
            term_sort_key(self.subject),
            term_sort_key(self.predicate),
            term_sort_key(self.object),
        )


@dataclass(frozen=True)
class Quad:
    subject: Term
    predicate: Term
    object: Term
    graph: str | None = field(default=None)

    def __post_init__(self) -> None:
        if isinstance(self.subject, Literal):
            raise ValueError("quad subject cannot be a literal")
        if not isinstance(self.predicate, Iri):
            raise ValueError("quad predicate must be an IRI")
        if self.graph is not None and not _is_absolute_iri(self.graph):
            raise ValueError(f"graph name must be an absolute IRI: {self.graph!r}")

    def triple(self) -> Triple:
        return Triple(self.subject, self.predicate, self.object)

    def sort_key(self) -> tuple:
        return (
            self.graph or "",
            term_sort_key(self.subject),
            term_sort_key(self.predicate),
            term_sort_key(self.object),
        )


def quad_of(triple: Triple, graph: str | None) -> Quad:
    return Quad(triple.subject, triple.predicate, triple.object, graph)
