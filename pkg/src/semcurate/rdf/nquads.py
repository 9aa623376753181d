"""N-Quads parser and serializer.

This is the persistence format: one quad per line, sorted, LF line endings,
so equal datasets always serialize to byte-identical files.
"""

from __future__ import annotations

import re

from .graphs import Dataset
from .terms import (
    RDF_LANG_STRING,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    Quad,
    Term,
)
from .turtle import ParseError

_IRIREF = r"<(?P<{0}>[^<>\s\"{{}}|^`\\]*)>"
_BLANK = r"_:(?P<{0}>[A-Za-z0-9_][A-Za-z0-9_.\-]*)"
_LITERAL = (
    r'"(?P<{0}>(?:[^"\\\n]|\\.)*)"'
    r"(?:\^\^<(?P<{0}_dt>[^<>\s]*)>|@(?P<{0}_lang>[A-Za-z]+(?:-[A-Za-z0-9]+)*))?"
)

_LINE_RE = re.compile(
    r"^\s*"
    + rf"(?:{_IRIREF.format('s_iri')}|{_BLANK.format('s_blank')})"
    + r"\s+"
    + _IRIREF.format("p_iri")
    + r"\s+"
    + rf"(?:{_IRIREF.format('o_iri')}|{_BLANK.format('o_blank')}|{_LITERAL.format('o_lit')})"
    + r"\s*"
    + rf"(?:{_IRIREF.format('g_iri')}\s*)?"
    + r"\.\s*$"
)

_UNESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}


def _unescape(value: str, line_no: int) -> str:
    if "\\" not in value:
        return value
    out: list[str] = []
    i = 0
    while i < len(value):
        c = value[i]
        if c != "\\":
            out.append(c)
            i += 1
            continue
        if i + 1 >= len(value):
            raise ParseError("dangling escape", line_no)
        nxt = value[i + 1]
        if nxt in _UNESCAPES:
            out.append(_UNESCAPES[nxt])
            i += 2
        elif nxt in "uU":
            width = 4 if nxt == "u" else 8
            hexdigits = value[i + 2 : i + 2 + width]
            if len(hexdigits) < width:
                raise ParseError("malformed \\u escape", line_no)
            try:
                out.append(chr(int(hexdigits, 16)))
            except ValueError:
                raise ParseError("malformed \\u escape", line_no) from None
            i += 2 + width
        else:
            raise ParseError(f"invalid escape '\\{nxt}'", line_no)
    return "".join(out)


def _escape(value: str) -> str:
    out = value.replace("\\", "\\\\").replace('"', '\\"')
    return out.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")


def parse_nquad_line(line: str, line_no: int = 1) -> Quad | None:
    """Parse one N-Quads line; returns None for blank and comment lines."""
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    m = _LINE_RE.match(line)
    if not m:
        raise ParseError(f"malformed N-Quads statement: {stripped!r}", line_no)
    g = m.groupdict()

    subject: Term
    if g["s_iri"] is not None:
        subject = Iri(_unescape(g["s_iri"], line_no))
    else:
        subject = BlankNode(g["s_blank"])

    predicate = Iri(_unescape(g["p_iri"], line_no))

    obj: Term
    if g["o_iri"] is not None:
        obj = Iri(_unescape(g["o_iri"], line_no))
    elif g["o_blank"] is not None:
        obj = BlankNode(g["o_blank"])
    else:
        lexical = _unescape(g["o_lit"], line_no)
        if g["o_lit_lang"] is not None:
            obj = Literal(lexical, RDF_LANG_STRING, g["o_lit_lang"])
        elif g["o_lit_dt"] is not None:
            obj = Literal(lexical, _unescape(g["o_lit_dt"], line_no))
        else:
            obj = Literal(lexical, XSD_STRING)

    graph = _unescape(g["g_iri"], line_no) if g["g_iri"] is not None else None
    try:
        return Quad(subject, predicate, obj, graph)
    except ValueError as exc:
        raise ParseError(str(exc), line_no) from None


def parse_nquads(text: str) -> Dataset:
    dataset = Dataset()
    for line_no, line in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        quad = parse_nquad_line(line, line_no)
        if quad is not None:
            dataset.add(quad)
    return dataset


def _render_term(term: Term) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    lex = _escape(term.lexical)
    if term.lang:
        return f'"{lex}"@{term.lang}'
    if term.datatype == XSD_STRING:
        return f'"{lex}"'
    return f'"{lex}"^^<{term.datatype}>'


def quad_to_line(quad: Quad) -> str:
    parts = [
        _render_term(quad.subject),
        _render_term(quad.predicate),
        _render_term(quad.object),
    ]
    if quad.graph is not None:
        parts.append(f"<{quad.graph}>")
    return " ".join(parts) + " ."


def serialize_nquads(dataset: Dataset) -> str:
    lines = [quad_to_line(q) for q in dataset.sorted_quads()]
    return "\n".join(lines) + "\n" if lines else ""
