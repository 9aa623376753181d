"""Turtle parser and serializer.

The parser covers the subset this project needs: prefix/base directives
(both @-style and SPARQL-style), the 'a' keyword, predicate and object
lists, typed and language-tagged literals, numeric and boolean shorthand,
labelled and anonymous blank nodes. RDF collections `( ... )` and quoted
triples `<< ... >>` are rejected with a clear error rather than misparsed;
list structure, where needed, is written out as rdf:first/rdf:rest triples.

Serialization is deterministic: subjects, predicates and objects are
sorted, prefixes are applied stably, and the output always re-parses to an
equal graph.
"""

from __future__ import annotations

import re
from urllib.parse import urljoin

from .graphs import Graph
from .terms import (
    RDF_LANG_STRING,
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    Term,
    Triple,
    term_sort_key,
)


class ParseError(Exception):
    """Syntax error with 1-based line and column of the offending input."""

    def __init__(self, message: str, line: int, column: int = 0) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class RelativeIriError(ParseError):
    """A relative IRI was found and no base IRI is in effect."""


_ESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_PNAME_RE = re.compile(
    r"(?P<prefix>[A-Za-z][A-Za-z0-9_.\-]*)?:(?P<local>[A-Za-z0-9_%\\][A-Za-z0-9_%\\.\-]*)?"
)
_BLANK_RE = re.compile(r"_:(?P<label>[A-Za-z0-9_][A-Za-z0-9_.\-]*)")
_NUMBER_RE = re.compile(
    r"[+-]?(?:\d+\.\d*[eE][+-]?\d+|\.?\d+[eE][+-]?\d+|\d*\.\d+|\d+)"
)
_LANGTAG_RE = re.compile(r"@(?P<tag>[A-Za-z]+(?:-[A-Za-z0-9]+)*)")
_PN_LOCAL_ESC = set("_~.-!$&'()*+,;=/?#@%")


class _Token:
    __slots__ = ("kind", "value", "line", "column")

    def __init__(self, kind: str, value: str, line: int, column: int) -> None:
        self.kind = kind
        self.value = value
        self.line = line
        self.column = column

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"_Token({self.kind}, {self.value!r}, {self.line}:{self.column})"


class _Lexer:
    def __init__(self, text: str) -> None:
        # Normalize line endings up front; serializers always emit LF.
        self.text = text.replace("\r\n", "\n").replace("\r", "\n")
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.col)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos < len(self.text) and self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def _peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def _skip_ws_and_comments(self) -> None:
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c in " \t\n":
                self._advance()
            elif c == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self._advance()
            else:
                return

    def tokens(self) -> list[_Token]:
        out: list[_Token] = []
        while True:
            self._skip_ws_and_comments()
            if self.pos >= len(self.text):
                out.append(_Token("eof", "", self.line, self.col))
                return out
            out.append(self._next_token())

    def _next_token(self) -> _Token:
        line, col = self.line, self.col
        c = self._peek()

        if c == "<":
            if self._peek(1) == "<":
                raise self.error("quoted triples are not supported")
            return self._iriref(line, col)
        if c in "\"'":
            return self._string(line, col)
        if c == "(":
            raise self.error(
                "RDF collections '( ... )' are not supported; "
                "write rdf:first/rdf:rest triples instead"
            )
        if c == ")":
            raise self.error("unexpected ')'")
        if c == "[":
            self._advance()
            return _Token("lbracket", "[", line, col)
        if c == "]":
            self._advance()
            return _Token("rbracket", "]", line, col)
        if c == ";":
            self._advance()
            return _Token("semicolon", ";", line, col)
        if c == ",":
            self._advance()
            return _Token("comma", ",", line, col)
        if c == "^" and self._peek(1) == "^":
            self._advance(2)
            return _Token("hathat", "^^", line, col)
        if c == "@":
            rest = self.text[self.pos :]
            if rest.startswith("@prefix"):
                self._advance(len("@prefix"))
                return _Token("at_prefix", "@prefix", line, col)
            if rest.startswith("@base"):
                self._advance(len("@base"))
                return _Token("at_base", "@base", line, col)
            m = _LANGTAG_RE.match(rest)
            if m:
                self._advance(m.end())
                return _Token("langtag", m.group("tag"), line, col)
            raise self.error("malformed '@' directive or language tag")
        if c == "_" and self._peek(1) == ":":
            m = _BLANK_RE.match(self.text, self.pos)
            if not m:
                raise self.error("malformed blank node label")
            self._advance(m.end() - self.pos)
            return _Token("blank", m.group("label"), line, col)
        if c.isdigit() or (c in "+-." and (self._peek(1).isdigit() or c == "." and self._peek(1).isdigit())):
            m = _NUMBER_RE.match(self.text, self.pos)
            if not m:
                raise self.error(f"malformed numeric literal near {c!r}")
            self._advance(m.end() - self.pos)
            return _Token("number", m.group(0), line, col)
        if c == ".":
            self._advance()
            return _Token("dot", ".", line, col)

        word = self._word()
        if word is None:
            raise self.error(f"unexpected character {c!r}")
        return word

    def _word(self) -> _Token | None:
        line, col = self.line, self.col
        rest = self.text[self.pos :]

        for keyword, kind in (("PREFIX", "sparql_prefix"), ("BASE", "sparql_base")):
            if rest[: len(keyword)].upper() == keyword and not (
                len(rest) > len(keyword) and (rest[len(keyword)].isalnum() or rest[len(keyword)] in "_:")
            ):
                self._advance(len(keyword))
                return _Token(kind, keyword, line, col)

        m = _PNAME_RE.match(rest)
        if m:
            self._advance(m.end())
            return _Token("pname", m.group(0), line, col)

        bare = re.match(r"[A-Za-z][A-Za-z0-9_\-]*", rest)
        if bare:
            word = bare.group(0)
            self._advance(len(word))
            if word == "a":
                return _Token("a", word, line, col)
            if word in ("true", "false"):
                return _Token("boolean", word, line, col)
            raise ParseError(f"unexpected bare word {word!r}", line, col)
        return None

    def _iriref(self, line: int, col: int) -> _Token:
        self._advance()  # '<'
        chars: list[str] = []
        while True:
            c = self._peek()
            if c == "":
                raise ParseError("unterminated IRI reference", line, col)
            if c == ">":
                self._advance()
                return _Token("iriref", "".join(chars), line, col)
            if c in " \n\t":
                raise self.error("whitespace inside IRI reference")
            if c == "\\":
                chars.append(self._unicode_escape())
                continue
            chars.append(c)
            self._advance()

    def _unicode_escape(self) -> str:
        self._advance()  # backslash
        kind = self._peek()
        if kind == "u":
            width = 4
        elif kind == "U":
            width = 8
        else:
            raise self.error(f"invalid IRI escape '\\{kind}'")
        self._advance()
        hexdigits = self.text[self.pos : self.pos + width]
        if len(hexdigits) < width or not all(h in "0123456789abcdefABCDEF" for h in hexdigits):
            raise self.error("malformed \\u escape")
        self._advance(width)
        return chr(int(hexdigits, 16))

    def _string(self, line: int, col: int) -> _Token:
        quote = self._peek()
        long_form = self.text[self.pos : self.pos + 3] == quote * 3
        self._advance(3 if long_form else 1)
        chars: list[str] = []
        while True:
            c = self._peek()
            if c == "":
                raise ParseError("unterminated string literal", line, col)
            if not long_form and c == "\n":
                raise self.error("newline in single-line string literal")
            if c == quote:
                if long_form:
                    if self.text[self.pos : self.pos + 3] == quote * 3:
                        self._advance(3)
                        return _Token("string", "".join(chars), line, col)
                    chars.append(c)
                    self._advance()
                    continue
                self._advance()
                return _Token("string", "".join(chars), line, col)
            if c == "\\":
                nxt = self._peek(1)
                if nxt in _ESCAPES:
                    chars.append(_ESCAPES[nxt])
                    self._advance(2)
                elif nxt in "uU":
                    chars.append(self._unicode_escape())
                else:
                    raise self.error(f"invalid string escape '\\{nxt}'")
                continue
            chars.append(c)
            self._advance()


class _Parser:
    def __init__(self, text: str, base: str | None) -> None:
        self.tokens = _Lexer(text).tokens()
        self.index = 0
        self.base = base
        self.prefixes: dict[str, str] = {}
        self.triples: list[Triple] = []
        self._anon_counter = 0
        # Labels the document declares explicitly; fresh anonymous-node
        # labels must not collide with them.
        self._taken_labels = {t.value for t in self.tokens if t.kind == "blank"}

    def _peek(self) -> _Token:
        return self.tokens[self.index]

    def _next(self) -> _Token:
        tok = self.tokens[self.index]
        if tok.kind != "eof":
            self.index += 1
        return tok

    def _expect(self, kind: str, what: str) -> _Token:
        tok = self._next()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.value!r}", tok.line, tok.column)
        return tok

    def parse(self) -> Graph:
        while True:
            tok = self._peek()
            if tok.kind == "eof":
                return Graph(self.triples)
            if tok.kind == "at_prefix":
                self._next()
                self._prefix_directive(require_dot=True)
            elif tok.kind == "at_base":
                self._next()
                self._base_directive(require_dot=True)
            elif tok.kind == "sparql_prefix":
                self._next()
                self._prefix_directive(require_dot=False)
            elif tok.kind == "sparql_base":
                self._next()
                self._base_directive(require_dot=False)
            else:
                self._statement()

    def _prefix_directive(self, require_dot: bool) -> None:
        name_tok = self._expect("pname", "prefix name")
        if not name_tok.value.endswith(":"):
            raise ParseError("prefix declaration must end with ':'", name_tok.line, name_tok.column)
        prefix = name_tok.value[:-1]
        iri_tok = self._expect("iriref", "namespace IRI")
        self.prefixes[prefix] = self._resolve_iri(iri_tok)
        if require_dot:
            self._expect("dot", "'.' after @prefix")

    def _base_directive(self, require_dot: bool) -> None:
        iri_tok = self._expect("iriref", "base IRI")
        self.base = self._resolve_iri(iri_tok)
        if require_dot:
            self._expect("dot", "'.' after @base")

    def _resolve_iri(self, tok: _Token) -> str:
        value = tok.value
        if ":" in value and re.match(r"^[A-Za-z][A-Za-z0-9+.\-]*:", value):
            return value
        if self.base is None:
            raise RelativeIriError(
                f"relative IRI {value!r} with no base in effect", tok.line, tok.column
            )
        return urljoin(self.base, value)

    def _statement(self) -> None:
        subject = self._subject()
        self._predicate_object_list(subject)
        self._expect("dot", "'.' at end of statement")

    def _subject(self) -> Term:
        tok = self._peek()
        if tok.kind == "iriref":
            self._next()
            return Iri(self._resolve_iri(tok))
        if tok.kind == "pname":
            self._next()
            return Iri(self._expand_pname(tok))
        if tok.kind == "blank":
            self._next()
            return BlankNode(tok.value)
        if tok.kind == "lbracket":
            return self._blank_node_property_list()
        raise ParseError(f"expected subject, found {tok.value!r}", tok.line, tok.column)

    def _blank_node_property_list(self) -> BlankNode:
        self._expect("lbracket", "'['")
        node = self._fresh_blank()
        if self._peek().kind != "rbracket":
            self._predicate_object_list(node)
        self._expect("rbracket", "']'")
        return node

    def _fresh_blank(self) -> BlankNode:
        while True:
            self._anon_counter += 1
            label = f"anon{self._anon_counter}"
            if label not in self._taken_labels:
                self._taken_labels.add(label)
                return BlankNode(label)

    def _predicate_object_list(self, subject: Term) -> None:
        while True:
            predicate = self._predicate()
            self._object_list(subject, predicate)
            if self._peek().kind == "semicolon":
                while self._peek().kind == "semicolon":
                    self._next()
                if self._peek().kind in ("dot", "rbracket", "eof"):
                    return
                continue
            return

    def _predicate(self) -> Iri:
        tok = self._peek()
        if tok.kind == "a":
            self._next()
            return Iri(RDF_TYPE)
        if tok.kind == "iriref":
            self._next()
            return Iri(self._resolve_iri(tok))
        if tok.kind == "pname":
            self._next()
            return Iri(self._expand_pname(tok))
        raise ParseError(f"expected predicate, found {tok.value!r}", tok.line, tok.column)

    def _object_list(self, subject: Term, predicate: Iri) -> None:
        while True:
            obj = self._object()
            self.triples.append(Triple(subject, predicate, obj))
            if self._peek().kind == "comma":
                self._next()
                continue
            return

    def _object(self) -> Term:
        tok = self._peek()
        if tok.kind == "iriref":
            self._next()
            return Iri(self._resolve_iri(tok))
        if tok.kind == "pname":
            self._next()
            return Iri(self._expand_pname(tok))
        if tok.kind == "blank":
            self._next()
            return BlankNode(tok.value)
        if tok.kind == "lbracket":
            return self._blank_node_property_list()
        if tok.kind == "string":
            self._next()
            return self._literal_tail(tok.value)
        if tok.kind == "number":
            self._next()
            return _numeric_literal(tok.value)
        if tok.kind == "boolean":
            self._next()
            return Literal(tok.value, XSD_BOOLEAN)
        raise ParseError(f"expected object, found {tok.value!r}", tok.line, tok.column)

    def _literal_tail(self, lexical: str) -> Literal:
        tok = self._peek()
        if tok.kind == "langtag":
            self._next()
            return Literal(lexical, RDF_LANG_STRING, tok.value)
        if tok.kind == "hathat":
            self._next()
            dt_tok = self._next()
            if dt_tok.kind == "iriref":
                return Literal(lexical, self._resolve_iri(dt_tok))
            if dt_tok.kind == "pname":
                return Literal(lexical, self._expand_pname(dt_tok))
            raise ParseError(
                f"expected datatype IRI after '^^', found {dt_tok.value!r}",
                dt_tok.line,
                dt_tok.column,
            )
        return Literal(lexical, XSD_STRING)

    def _expand_pname(self, tok: _Token) -> str:
        prefix, _, local = tok.value.partition(":")
        if prefix not in self.prefixes:
            raise ParseError(f"undeclared prefix {prefix + ':'!r}", tok.line, tok.column)
        return self.prefixes[prefix] + _unescape_local(local, tok)


def _unescape_local(local: str, tok: _Token) -> str:
    if "\\" not in local:
        return local
    out: list[str] = []
    i = 0
    while i < len(local):
        c = local[i]
        if c == "\\":
            if i + 1 >= len(local) or local[i + 1] not in _PN_LOCAL_ESC:
                raise ParseError(f"invalid local name escape in {local!r}", tok.line, tok.column)
            out.append(local[i + 1])
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def _numeric_literal(lexical: str) -> Literal:
    if "e" in lexical.lower():
        return Literal(lexical, XSD_DOUBLE)
    if "." in lexical:
        return Literal(lexical, XSD_DECIMAL)
    return Literal(lexical, XSD_INTEGER)


def parse_turtle(text: str, base: str | None = None) -> Graph:
    """Parse a Turtle document into a Graph."""
    return _Parser(text, base).parse()


_LOCAL_OK_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_\-]*$")


def _escape_string(value: str) -> str:
    out = value.replace("\\", "\\\\").replace('"', '\\"')
    return out.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")


def serialize_turtle(graph: Graph, prefixes: dict[str, str] | None = None) -> str:
    """Serialize deterministically; output re-parses to an equal graph."""
    prefixes = dict(prefixes or {})
    # Longest namespace wins when several cover the same IRI.
    by_length = sorted(prefixes.items(), key=lambda kv: (-len(kv[1]), kv[0]))
    used: set[str] = set()

    def shrink(iri: str) -> str | None:
        for name, ns in by_length:
            if iri.startswith(ns):
                local = iri[len(ns) :]
                if _LOCAL_OK_RE.match(local):
                    used.add(name)
                    return f"{name}:{local}"
        return None

    def render(term: Term, as_predicate: bool = False) -> str:
        if isinstance(term, Iri):
            if as_predicate and term.value == RDF_TYPE:
                return "a"
            short = shrink(term.value)
            return short if short is not None else f"<{term.value}>"
        if isinstance(term, BlankNode):
            return f"_:{term.label}"
        lex = _escape_string(term.lexical)
        if term.lang:
            return f'"{lex}"@{term.lang}'
        if term.datatype == XSD_STRING:
            return f'"{lex}"'
        dt = shrink(term.datatype)
        return f'"{lex}"^^{dt}' if dt is not None else f'"{lex}"^^<{term.datatype}>'

    lines: list[str] = []
    by_subject: dict[Term, list[Triple]] = {}
    for t in graph.sorted():
        by_subject.setdefault(t.subject, []).append(t)

    for subject in sorted(by_subject, key=term_sort_key):
        triples = by_subject[subject]
        subj_text = render(subject)
        parts: list[str] = []
        by_predicate: dict[Iri, list[Term]] = {}
        for t in triples:
            by_predicate.setdefault(t.predicate, []).append(t.object)
        for predicate in sorted(by_predicate, key=term_sort_key):
            objs = ", ".join(
                render(o) for o in sorted(by_predicate[predicate], key=term_sort_key)
            )
            parts.append(f"{render(predicate, as_predicate=True)} {objs}")
        joiner = " ;\n" + " " * (len(subj_text) + 1)
        lines.append(f"{subj_text} {joiner.join(parts)} .")

    header = [
        f"@prefix {name}: <{prefixes[name]}> ."
        for name in sorted(used)
    ]
    body = "\n".join(lines)
    if header and body:
        return "\n".join(header) + "\n\n" + body + "\n"
    if header:
        return "\n".join(header) + "\n"
    return body + "\n" if body else ""
