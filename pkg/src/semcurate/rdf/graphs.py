"""Graph and dataset containers plus set algebra over them.

Graph is an immutable set of triples; all operations return new graphs.
Dataset is the one mutable container (default graph + named graphs) and is
meant to be owned by a single writer (the store) -- it is not safe to share
across threads without external locking.
"""

from __future__ import annotations

import uuid
from typing import Callable, Iterable, Iterator

from .terms import BlankNode, Iri, Quad, Term, Triple, term_sort_key

GENID_PATH = "/.well-known/genid/"


class Graph:
    """Immutable set of triples with deterministic iteration for output."""

    __slots__ = ("_triples",)

    def __init__(self, triples: Iterable[Triple] = ()) -> None:
        object.__setattr__(self, "_triples", frozenset(triples))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Graph is immutable")

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self) -> int:
        return hash(self._triples)

    def __repr__(self) -> str:
        return f"Graph({len(self._triples)} triples)"

    def __or__(self, other: "Graph") -> "Graph":
        return Graph(self._triples | other._triples)

    def __sub__(self, other: "Graph") -> "Graph":
        return Graph(self._triples - other._triples)

    @property
    def triples(self) -> frozenset[Triple]:
        return self._triples

    def sorted(self) -> list[Triple]:
        return sorted(self._triples, key=Triple.sort_key)

    def match(
        self,
        subject: Term | None = None,
        predicate: Iri | None = None,
        obj: Term | None = None,
    ) -> Iterator[Triple]:
        for t in self._triples:
            if subject is not None and t.subject != subject:
                continue
            if predicate is not None and t.predicate != predicate:
                continue
            if obj is not None and t.object != obj:
                continue
            yield t

    def objects(self, subject: Term, predicate: Iri) -> list[Term]:
        return sorted(
            (t.object for t in self.match(subject, predicate)), key=term_sort_key
        )

    def subjects(self, predicate: Iri | None = None, obj: Term | None = None) -> list[Term]:
        seen = {t.subject for t in self.match(None, predicate, obj)}
        return sorted(seen, key=term_sort_key)

    def value(self, subject: Term, predicate: Iri) -> Term | None:
        values = list(self.match(subject, predicate))
        if not values:
            return None
        return min(values, key=Triple.sort_key).object


class Dataset:
    """Default graph plus named graphs, keyed by graph IRI.

    Named graphs that become empty are dropped, so presence of a graph name
    always implies at least one triple.
    """

    def __init__(self) -> None:
        self._default: set[Triple] = set()
        self._named: dict[str, set[Triple]] = {}

    def add(self, quad: Quad) -> None:
        if quad.graph is None:
            self._default.add(quad.triple())
        else:
            self._named.setdefault(quad.graph, set()).add(quad.triple())

    def remove(self, quad: Quad) -> None:
        if quad.graph is None:
            self._default.discard(quad.triple())
        else:
            triples = self._named.get(quad.graph)
            if triples is None:
                return
            triples.discard(quad.triple())
            if not triples:
                del self._named[quad.graph]

    def graph(self, name: str | None) -> Graph:
        if name is None:
            return Graph(self._default)
        return Graph(self._named.get(name, ()))

    def set_graph(self, name: str | None, graph: Graph) -> None:
        if name is None:
            self._default = set(graph.triples)
        elif len(graph) == 0:
            self._named.pop(name, None)
        else:
            self._named[name] = set(graph.triples)

    def graph_names(self) -> list[str]:
        return sorted(self._named)

    def quads(self) -> Iterator[Quad]:
        for t in self._default:
            yield Quad(t.subject, t.predicate, t.object, None)
        for name, triples in self._named.items():
            for t in triples:
                yield Quad(t.subject, t.predicate, t.object, name)

    def sorted_quads(self) -> list[Quad]:
        return sorted(self.quads(), key=Quad.sort_key)

    def __len__(self) -> int:
        return len(self._default) + sum(len(ts) for ts in self._named.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self._default == other._default and self._named == other._named

    def copy(self) -> "Dataset":
        out = Dataset()
        out._default = set(self._default)
        out._named = {name: set(ts) for name, ts in self._named.items()}
        return out


def graph_diff(before: Graph, after: Graph) -> tuple[frozenset[Triple], frozenset[Triple]]:
    """Added and removed triple sets such that applying them to `before`
    yields `after`."""
    return after.triples - before.triples, before.triples - after.triples


def apply_diff(graph: Graph, added: Iterable[Triple], removed: Iterable[Triple]) -> Graph:
    return Graph((graph.triples - frozenset(removed)) | frozenset(added))


def skolemize(
    graph: Graph,
    base: str,
    fresh_id: Callable[[str], str] | None = None,
) -> Graph:
    """Replace every blank node with a fresh genid IRI under `base`.

    Equal labels map to the same IRI within one call; the result contains no
    blank nodes, so it diffs stably across versions. `fresh_id` receives the
    blank node label, so callers that need reproducible identifiers (bulk
    import) can derive them from stable keys; the default is a random UUID.
    """
    make_id = fresh_id or (lambda label: uuid.uuid4().hex)
    mapping: dict[str, Iri] = {}

    def resolve(term: Term) -> Term:
        if isinstance(term, BlankNode):
            if term.label not in mapping:
                mapping[term.label] = Iri(f"{base}{GENID_PATH}{make_id(term.label)}")
            return mapping[term.label]
        return term

    return Graph(
        Triple(resolve(t.subject), t.predicate, resolve(t.object)) for t in graph
    )
