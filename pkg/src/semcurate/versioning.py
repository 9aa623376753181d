"""Snapshot-based change tracking with full provenance per entity.

Every commit stores the delta against the previous state plus provenance
metadata (agent, timestamp, optional source and description). Only the
latest state is kept materialized; earlier states are reconstructed by
reverse-applying deltas, which the test suite checks against independently
retained full copies.

Provenance is persisted as RDF in the per-snapshot named graphs
`<entity>/prov/se/<n>`. Snapshot n's graph also carries the invalidation
timestamp of snapshot n-1, so earlier provenance graphs are never touched
after being written.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace
from datetime import datetime, timedelta, timezone
from typing import Callable

from .namespaces import (
    DCTERMS_DESCRIPTION,
    PROV_ATTRIBUTED_TO,
    PROV_ENTITY,
    PROV_GENERATED_AT,
    PROV_INVALIDATED_AT,
    PROV_PRIMARY_SOURCE,
    PROV_SPECIALIZATION_OF,
    TRACK_ADDED,
    TRACK_REMOVED,
)
from .rdf import (
    RDF_TYPE,
    XSD_DATETIME,
    Graph,
    Iri,
    Literal,
    Quad,
    Term,
    Triple,
    graph_diff,
    parse_nquad_line,
    quad_of,
    quad_to_line,
)
from .store import QuadStore, TxChange, data_graph_name, prov_graph_name, prov_index_for_graph


class VersioningError(Exception):
    pass


class NoChangeError(VersioningError):
    pass


class MissingAgentError(VersioningError):
    pass


class UnknownEntityError(VersioningError):
    pass


class IndexOutOfRangeError(VersioningError):
    pass


class TimestampBeforeCreationError(VersioningError):
    pass


def format_timestamp(dt: datetime) -> str:
    dt = dt.astimezone(timezone.utc)
    return dt.strftime("%Y-%m-%dT%H:%M:%S.") + f"{dt.microsecond // 1000:03d}Z"


def parse_timestamp(text: str) -> datetime:
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    return datetime.fromisoformat(text)


@dataclass(frozen=True)
class Delta:
    added: frozenset[Triple]
    removed: frozenset[Triple]

    def __post_init__(self) -> None:
        if self.added & self.removed:
            raise ValueError("delta adds and removes the same triples")

    def is_empty(self) -> bool:
        return not self.added and not self.removed

    def to_json(self) -> dict:
        return {
            "added": [quad_to_line(quad_of(t, None)) for t in sorted(self.added, key=Triple.sort_key)],
            "removed": [quad_to_line(quad_of(t, None)) for t in sorted(self.removed, key=Triple.sort_key)],
        }


@dataclass(frozen=True)
class SnapshotRecord:
    entity: str
    index: int
    generated_at: str
    invalidated_at: str | None
    agent: str
    primary_source: Term | None
    description: str | None
    delta: Delta

    def to_json(self) -> dict:
        from .termjson import term_to_json

        out: dict = {
            "entity": self.entity,
            "index": self.index,
            "generatedAt": self.generated_at,
            "invalidatedAt": self.invalidated_at,
            "agent": self.agent,
            "description": self.description,
            "delta": self.delta.to_json(),
        }
        out["primarySource"] = term_to_json(self.primary_source) if self.primary_source else None
        return out


@dataclass(frozen=True)
class EntityHistory:
    entity: str
    snapshots: tuple[SnapshotRecord, ...]
    tombstoned: bool


def _triples_block(triples: frozenset[Triple]) -> str:
    return "\n".join(quad_to_line(quad_of(t, None)) for t in sorted(triples, key=Triple.sort_key))


def _parse_block(text: str) -> frozenset[Triple]:
    triples = set()
    for line_no, line in enumerate(text.splitlines(), start=1):
        quad = parse_nquad_line(line, line_no)
        if quad is not None:
            triples.add(quad.triple())
    return frozenset(triples)


class VersionStore:
    """Versioned entity states layered over the quad store."""

    def __init__(self, store: QuadStore, clock: Callable[[], datetime] | None = None) -> None:
        self._store = store
        self._clock = clock or (lambda: datetime.now(timezone.utc))
        self._mutex = threading.RLock()
        self._histories: dict[str, list[SnapshotRecord]] = {}
        self._load_histories()

    @property
    def store(self) -> QuadStore:
        return self._store

    # -- loading ----------------------------------------------------------

    def _load_histories(self) -> None:
        per_entity: dict[str, dict[int, Graph]] = {}
        for name in self._store.graph_names():
            index = prov_index_for_graph(name)
            if index is None:
                continue
            entity = name.rsplit("/prov/se/", 1)[0]
            per_entity.setdefault(entity, {})[index] = self._store.graph(name)

        for entity, graphs in per_entity.items():
            indexes = sorted(graphs)
            if indexes != list(range(1, len(indexes) + 1)):
                raise VersioningError(
                    f"provenance chain for <{entity}> is not contiguous: {indexes}"
                )
            invalidations: dict[int, str] = {}
            records: list[SnapshotRecord] = []
            for index in indexes:
                graph = graphs[index]
                subject = Iri(prov_graph_name(entity, index))
                generated = graph.value(subject, Iri(PROV_GENERATED_AT))
                agent = graph.value(subject, Iri(PROV_ATTRIBUTED_TO))
                if not isinstance(generated, Literal) or not isinstance(agent, Iri):
                    raise VersioningError(f"snapshot {index} of <{entity}> lacks provenance")
                source = graph.value(subject, Iri(PROV_PRIMARY_SOURCE))
                description = graph.value(subject, Iri(DCTERMS_DESCRIPTION))
                added = graph.value(subject, Iri(TRACK_ADDED))
                removed = graph.value(subject, Iri(TRACK_REMOVED))
                if index > 1:
                    prev_subject = Iri(prov_graph_name(entity, index - 1))
                    inv = graph.value(prev_subject, Iri(PROV_INVALIDATED_AT))
                    if isinstance(inv, Literal):
                        invalidations[index - 1] = inv.lexical
                records.append(
                    SnapshotRecord(
                        entity=entity,
                        index=index,
                        generated_at=generated.lexical,
                        invalidated_at=None,
                        agent=agent.value,
                        primary_source=source,
                        description=description.lexical if isinstance(description, Literal) else None,
                        delta=Delta(
                            added=_parse_block(added.lexical if isinstance(added, Literal) else ""),
                            removed=_parse_block(removed.lexical if isinstance(removed, Literal) else ""),
                        ),
                    )
                )
            stitched = [
                replace(rec, invalidated_at=invalidations.get(rec.index))
                for rec in records
            ]
            self._histories[entity] = stitched

    # -- helpers ----------------------------------------------------------

    def _next_timestamp(self, entity: str) -> str:
        now = self._clock()
        history = self._histories.get(entity)
        if history:
            last = parse_timestamp(history[-1].generated_at)
            if now <= last:
                now = last + timedelta(milliseconds=1)
        return format_timestamp(now)

    def current_state(self, entity: str) -> Graph:
        return self._store.graph(data_graph_name(entity))

    def entities(self) -> list[str]:
        with self._mutex:
            return sorted(self._histories)

    def _prov_quads(self, record: SnapshotRecord) -> set[Quad]:
        graph_name = prov_graph_name(record.entity, record.index)
        subject = Iri(graph_name)
        quads = {
            Quad(subject, Iri(RDF_TYPE), Iri(PROV_ENTITY), graph_name),
            Quad(subject, Iri(PROV_SPECIALIZATION_OF), Iri(record.entity), graph_name),
            Quad(subject, Iri(PROV_GENERATED_AT), Literal(record.generated_at, XSD_DATETIME), graph_name),
            Quad(subject, Iri(PROV_ATTRIBUTED_TO), Iri(record.agent), graph_name),
            Quad(subject, Iri(TRACK_ADDED), Literal(_triples_block(record.delta.added)), graph_name),
            Quad(subject, Iri(TRACK_REMOVED), Literal(_triples_block(record.delta.removed)), graph_name),
        }
        if record.primary_source is not None:
            quads.add(Quad(subject, Iri(PROV_PRIMARY_SOURCE), record.primary_source, graph_name))
        if record.description is not None:
            quads.add(Quad(subject, Iri(DCTERMS_DESCRIPTION), Literal(record.description), graph_name))
        if record.index > 1:
            prev = Iri(prov_graph_name(record.entity, record.index - 1))
            quads.add(
                Quad(prev, Iri(PROV_INVALIDATED_AT), Literal(record.generated_at, XSD_DATETIME), graph_name)
            )
        return quads

    # -- operations ---------------------------------------------------------

    def commit(
        self,
        entity: str,
        new_state: Graph,
        agent: str,
        source: Term | str | None = None,
        description: str | None = None,
    ) -> SnapshotRecord:
        if not agent:
            raise MissingAgentError("commits must be attributed to an agent")
        if len(new_state) and Iri(entity) not in {t.subject for t in new_state}:
            raise ValueError(f"new state does not describe <{entity}>")

        primary_source: Term | None
        if isinstance(source, str):
            try:
                primary_source = Iri(source)
            except ValueError:
                primary_source = Literal(source)
        else:
            primary_source = source

        with self._store.entity_writer(entity):
            with self._mutex:
                current = self.current_state(entity)
                if current == new_state:
                    raise NoChangeError(f"state of <{entity}> is unchanged")
                added, removed = graph_diff(current, new_state)
                history = self._histories.setdefault(entity, [])
                record = SnapshotRecord(
                    entity=entity,
                    index=len(history) + 1,
                    generated_at=self._next_timestamp(entity),
                    invalidated_at=None,
                    agent=agent,
                    primary_source=primary_source,
                    description=description,
                    delta=Delta(added=added, removed=removed),
                )

                graph_name = data_graph_name(entity)
                additions = {quad_of(t, graph_name) for t in added} | self._prov_quads(record)
                removals = {quad_of(t, graph_name) for t in removed}
                self._store.apply_tx(
                    TxChange(additions=frozenset(additions), removals=frozenset(removals))
                )

                if history:
                    history[-1] = replace(history[-1], invalidated_at=record.generated_at)
                history.append(record)
                return record

    def history(self, entity: str) -> EntityHistory:
        with self._mutex:
            snapshots = tuple(self._histories.get(entity, ()))
        tombstoned = bool(snapshots) and len(self.current_state(entity)) == 0
        return EntityHistory(entity=entity, snapshots=snapshots, tombstoned=tombstoned)

    def _resolve_index(self, entity: str, at: int | str | datetime) -> int:
        snapshots = self._histories.get(entity)
        if not snapshots:
            raise UnknownEntityError(f"no history for <{entity}>")
        if isinstance(at, int):
            if not 1 <= at <= len(snapshots):
                raise IndexOutOfRangeError(
                    f"snapshot {at} of <{entity}> does not exist (1..{len(snapshots)})"
                )
            return at
        moment = parse_timestamp(at) if isinstance(at, str) else at
        chosen = None
        for record in snapshots:
            if parse_timestamp(record.generated_at) <= moment:
                chosen = record.index
        if chosen is None:
            raise TimestampBeforeCreationError(
                f"<{entity}> did not exist at {format_timestamp(moment) if isinstance(moment, datetime) else at}"
            )
        return chosen

    def materialize(self, entity: str, at: int | str | datetime) -> Graph:
        """Entity state as of a snapshot index or timestamp.

        Starts from the current state and reverse-applies deltas from the
        latest snapshot down to the requested one.
        """
        with self._mutex:
            index = self._resolve_index(entity, at)
            snapshots = self._histories[entity]
            state = set(self.current_state(entity).triples)
            for record in reversed(snapshots[index:]):
                state -= record.delta.added
                state |= record.delta.removed
            return Graph(state)

    def diff_versions(self, entity: str, i: int, j: int) -> Delta:
        with self._mutex:
            added, removed = graph_diff(self.materialize(entity, i), self.materialize(entity, j))
            return Delta(added=added, removed=removed)

    def restore(self, entity: str, index: int, agent: str) -> SnapshotRecord:
        """Non-destructive restore: appends a snapshot whose state equals the
        target version; nothing is deleted or rewritten."""
        with self._mutex:
            target = self.materialize(entity, index)
            if target == self.current_state(entity):
                raise NoChangeError(f"<{entity}> already matches snapshot {index}")
        return self.commit(
            entity,
            target,
            agent,
            source=Iri(prov_graph_name(entity, index)),
            description="restore",
        )

    def delete_entity(self, entity: str, agent: str) -> SnapshotRecord:
        with self._mutex:
            if entity not in self._histories:
                raise UnknownEntityError(f"no history for <{entity}>")
            if len(self.current_state(entity)) == 0:
                raise NoChangeError(f"<{entity}> is already tombstoned")
        return self.commit(entity, Graph(), agent, description="delete")
