"""JSON encoding of RDF terms shared by the form-schema export and the API."""

from __future__ import annotations

from .rdf import RDF_LANG_STRING, XSD_STRING, BlankNode, Iri, Literal, Term


def term_to_json(term: Term) -> dict:
    if isinstance(term, Iri):
        return {"type": "iri", "value": term.value}
    if isinstance(term, BlankNode):
        return {"type": "bnode", "value": term.label}
    out: dict = {"type": "literal", "value": term.lexical}
    if term.lang is not None:
        out["lang"] = term.lang
    elif term.datatype != XSD_STRING:
        out["datatype"] = term.datatype
    return out


def term_from_json(data: dict) -> Term:
    kind = data.get("type")
    if kind == "iri":
        return Iri(data["value"])
    if kind == "bnode":
        return BlankNode(data["value"])
    if kind == "literal":
        if data.get("lang"):
            return Literal(data["value"], RDF_LANG_STRING, data["lang"])
        return Literal(data["value"], data.get("datatype", XSD_STRING))
    raise ValueError(f"unknown term encoding: {data!r}")
