"""Transactional quad store with per-entity named graphs and file persistence.

Layout on disk: `data.nq` is the sorted N-Quads snapshot, `journal.log` is a
write-ahead journal of transaction frames. A transaction is journalled
before it is applied in memory, so recovery after a crash replays complete
frames and discards a torn tail; readers never observe a partial
transaction.

Graph naming convention: an entity's current data lives in the named graph
`<entity>/graph`; its provenance snapshots live in `<entity>/prov/se/<n>`.
Provenance graphs are append-only: once written they are never modified.
"""

from __future__ import annotations

import os
import struct
import threading
import zlib
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

from .rdf import Dataset, Graph, Quad, parse_nquad_line, parse_nquads, quad_to_line, serialize_nquads

DATA_FILE = "data.nq"
JOURNAL_FILE = "journal.log"

# Distinguishes "graph position unbound" from "the default graph" in match().
UNBOUND = object()

_FRAME_HEADER = struct.Struct(">I")
_FRAME_CRC = struct.Struct(">I")


class StoreError(Exception):
    pass


class ConflictError(StoreError):
    """Another writer currently holds the affected entity."""


def data_graph_name(entity: str) -> str:
    return f"{entity}/graph"

def prov_graph_name(entity: str, index: int) -> str:
    return f"{entity}/prov/se/{index}"


def entity_for_graph(graph_name: str) -> str | None:
    """Entity an internal graph belongs to, or None for foreign graphs."""
    if graph_name.endswith("/graph"):
        return graph_name[: -len("/graph")]
    if "/prov/se/" in graph_name:
        return graph_name.rsplit("/prov/se/", 1)[0]
    return None


def prov_index_for_graph(graph_name: str) -> int | None:
    if "/prov/se/" not in graph_name:
        return None
    tail = graph_name.rsplit("/prov/se/", 1)[1]
    return int(tail) if tail.isdigit() else None


@dataclass(frozen=True)
class TxChange:
    additions: frozenset[Quad]
    removals: frozenset[Quad]

    def __post_init__(self) -> None:
        overlap = self.additions & self.removals
        if overlap:
            raise ValueError(f"transaction adds and removes the same quads: {overlap}")

    def is_empty(self) -> bool:
        return not self.additions and not self.removals

    def touched_entities(self) -> set[str]:
        entities = set()
        for quad in list(self.additions) + list(self.removals):
            if quad.graph is not None:
                entity = entity_for_graph(quad.graph)
                if entity is not None:
                    entities.add(entity)
        return entities

    def encode(self) -> bytes:
        lines = [f"+ {quad_to_line(q)}" for q in sorted(self.additions, key=Quad.sort_key)]
        lines += [f"- {quad_to_line(q)}" for q in sorted(self.removals, key=Quad.sort_key)]
        return ("\n".join(lines) + "\n").encode("utf-8")

    @classmethod
    def decode(cls, payload: bytes) -> "TxChange":
        additions: set[Quad] = set()
        removals: set[Quad] = set()
        for line_no, line in enumerate(payload.decode("utf-8").splitlines(), start=1):
            if not line.strip():
                continue
            sign, rest = line[0], line[2:]
            quad = parse_nquad_line(rest, line_no)
            if quad is None:
                continue
            if sign == "+":
                additions.add(quad)
            elif sign == "-":
                removals.add(quad)
            else:
                raise StoreError(f"corrupt journal record line: {line!r}")
        return cls(additions=frozenset(additions), removals=frozenset(removals))


def _read_frames(raw: bytes) -> list[bytes]:
    """Complete, checksummed frames; a torn or corrupt tail is dropped."""
    frames: list[bytes] = []
    pos = 0
    while pos + _FRAME_HEADER.size <= len(raw):
        (length,) = _FRAME_HEADER.unpack_from(raw, pos)
        end = pos + _FRAME_HEADER.size + length + _FRAME_CRC.size
        if end > len(raw):
            break
        payload = raw[pos + _FRAME_HEADER.size : pos + _FRAME_HEADER.size + length]
        (crc,) = _FRAME_CRC.unpack_from(raw, pos + _FRAME_HEADER.size + length)
        if zlib.crc32(payload) != crc:
            break
        frames.append(payload)
        pos = end
    return frames


class QuadStore:
    """Single source of truth for current data and provenance graphs."""

    def __init__(self, data_dir: str | Path | None = None) -> None:
        self._mutex = threading.RLock()
        self._dataset = Dataset()
        self._entity_locks: dict[str, tuple[threading.Lock, int]] = {}
        self._tx_counter = 0
        self._dirty = False
        self._data_dir = Path(data_dir) if data_dir is not None else None
        self._journal_fh = None
        if self._data_dir is not None:
            self._data_dir.mkdir(parents=True, exist_ok=True)
            self._recover()
            self._journal_fh = open(self._journal_path, "ab")

    @classmethod
    def load(cls, data_dir: str | Path) -> "QuadStore":
        return cls(data_dir)

    @property
    def _data_path(self) -> Path:
        assert self._data_dir is not None
        return self._data_dir / DATA_FILE

    @property
    def _journal_path(self) -> Path:
        assert self._data_dir is not None
        return self._data_dir / JOURNAL_FILE

    def _recover(self) -> None:
        if self._data_path.exists():
            self._dataset = parse_nquads(self._data_path.read_text(encoding="utf-8"))
        if self._journal_path.exists():
            raw = self._journal_path.read_bytes()
            for payload in _read_frames(raw):
                self._apply_to_dataset(TxChange.decode(payload))
                self._dirty = True

    def _apply_to_dataset(self, change: TxChange) -> None:
        for quad in change.removals:
            self._dataset.remove(quad)
        for quad in change.additions:
            self._dataset.add(quad)

    # -- reads ------------------------------------------------------------

    def match(
        self,
        subject=None,
        predicate=None,
        obj=None,
        graph: str | None | object = UNBOUND,
    ) -> list[Quad]:
        """All quads matching every bound position, in deterministic order.

        An unbound graph position matches every graph; pass `None` to
        address the default graph explicitly.
        """
        with self._mutex:
            quads = list(self._dataset.quads())
        out = []
        for q in quads:
            if subject is not None and q.subject != subject:
                continue
            if predicate is not None and q.predicate != predicate:
                continue
            if obj is not None and q.object != obj:
                continue
            if graph is not UNBOUND and q.graph != graph:
                continue
            out.append(q)
        return sorted(out, key=Quad.sort_key)

    def graph(self, name: str | None) -> Graph:
        with self._mutex:
            return self._dataset.graph(name)

    def graph_names(self) -> list[str]:
        with self._mutex:
            return self._dataset.graph_names()

    def dataset_copy(self) -> Dataset:
        with self._mutex:
            return self._dataset.copy()

    @property
    def dirty(self) -> bool:
        return self._dirty

    # -- writes -----------------------------------------------------------

    @contextmanager
    def entity_writer(self, entity: str, timeout: float = 10.0):
        """Serializes writers per entity; commits inside run one at a time."""
        with self._mutex:
            lock, _ = self._entity_locks.get(entity, (None, 0))
            if lock is None:
                lock = threading.Lock()
        acquired = lock.acquire(timeout=timeout)
        if not acquired:
            raise ConflictError(f"timed out waiting for writer lock on <{entity}>")
        with self._mutex:
            self._entity_locks[entity] = (lock, threading.get_ident())
        try:
            yield
        finally:
            with self._mutex:
                self._entity_locks.pop(entity, None)
            lock.release()

    def apply_tx(self, change: TxChange) -> int:
        """Apply atomically; returns a monotonically increasing commit token."""
        if change.is_empty():
            with self._mutex:
                return self._tx_counter
        me = threading.get_ident()
        with self._mutex:
            for entity in change.touched_entities():
                held = self._entity_locks.get(entity)
                if held is not None and held[1] != me:
                    raise ConflictError(f"entity <{entity}> is held by another writer")
            if self._journal_fh is not None:
                payload = change.encode()
                frame = (
                    _FRAME_HEADER.pack(len(payload))
                    + payload
                    + _FRAME_CRC.pack(zlib.crc32(payload))
                )
                self._journal_fh.write(frame)
                self._journal_fh.flush()
                os.fsync(self._journal_fh.fileno())
            self._apply_to_dataset(change)
            self._dirty = True
            self._tx_counter += 1
            return self._tx_counter

    def replace_graph(self, name: str, graph: Graph) -> int:
        """Convenience transaction: replace one named graph's content."""
        current = self.graph(name)
        additions = frozenset(
            Quad(t.subject, t.predicate, t.object, name) for t in graph.triples - current.triples
        )
        removals = frozenset(
            Quad(t.subject, t.predicate, t.object, name) for t in current.triples - graph.triples
        )
        return self.apply_tx(TxChange(additions=additions, removals=removals))

    # -- persistence --------------------------------------------------------

    def persist(self) -> None:
        """Write the snapshot atomically and compact the journal."""
        if self._data_dir is None:
            raise StoreError("store has no persistence path")
        with self._mutex:
            text = serialize_nquads(self._dataset)
            tmp = self._data_path.with_suffix(".nq.tmp")
            with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, self._data_path)
            if self._journal_fh is not None:
                self._journal_fh.close()
            with open(self._journal_path, "wb") as fh:
                fh.flush()
                os.fsync(fh.fileno())
            self._journal_fh = open(self._journal_path, "ab")
            self._dirty = False

    def close(self) -> None:
        with self._mutex:
            if self._journal_fh is not None:
                self._journal_fh.close()
                self._journal_fh = None
