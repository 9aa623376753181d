"""Shape model and validation report types."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..rdf import Iri, Term, term_sort_key


class NodeKind(str, Enum):
    IRI = "IRI"
    LITERAL = "Literal"
    BLANK_OR_IRI = "BlankNodeOrIRI"


class Component(str, Enum):
    MIN_COUNT = "MinCount"
    MAX_COUNT = "MaxCount"
    DATATYPE = "Datatype"
    CLASS = "Class"
    NODE_KIND = "NodeKind"
    IN = "In"
    PATTERN = "Pattern"
    HAS_VALUE = "HasValue"
    NODE = "Node"


@dataclass(frozen=True)
class PropertyShape:
    path: str
    inverse: bool = False
    min_count: int | None = None
    max_count: int | None = None
    datatype: str | None = None
    class_constraint: str | None = None
    node_kind: NodeKind | None = None
    in_list: tuple[Term, ...] | None = None
    pattern: str | None = None
    has_value: Term | None = None
    node_shape: str | None = None
    display_name: str | None = None
    description: str | None = None


@dataclass(frozen=True)
class NodeShape:
    iri: str
    target_class: str | None = None
    properties: tuple[PropertyShape, ...] = ()
    label: str | None = None


@dataclass(frozen=True)
class ShapesModel:
    shapes: tuple[NodeShape, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def by_target(self) -> dict[str, NodeShape]:
        return {s.target_class: s for s in self.shapes if s.target_class}

    @property
    def by_iri(self) -> dict[str, NodeShape]:
        return {s.iri: s for s in self.shapes}


@dataclass(frozen=True)
class ValidationResult:
    focus: Term
    path: str
    component: Component
    offending: Term | None
    message: str

    def sort_key(self) -> tuple:
        return (
            term_sort_key(self.focus),
            self.path,
            self.component.value,
            term_sort_key(self.offending) if self.offending is not None else (),
        )


@dataclass(frozen=True)
class ValidationReport:
    results: tuple[ValidationResult, ...] = ()

    @property
    def conforms(self) -> bool:
        return not self.results

    def to_json(self) -> dict:
        from ..termjson import term_to_json

        return {
            "conforms": self.conforms,
            "results": [
                {
                    "focusNode": term_to_json(r.focus),
                    "path": r.path,
                    "component": r.component.value,
                    "offendingValue": term_to_json(r.offending) if r.offending else None,
                    "message": r.message,
                }
                for r in self.results
            ],
        }
