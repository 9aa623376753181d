"""Profile bundle: shapes, keyword vocabulary and display configuration.

A profile directory contains shapes.ttl, vocabulary.yaml and display.json.
Loading cross-validates the three parts and derives the citation link
types from the CiTO properties declared in the shapes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .namespaces import CITO
from .rdf import ParseError, parse_turtle
from .shacl import (
    FormSchema,
    ShapeLoadError,
    ShapesModel,
    derive_form_schema,
    load_shapes,
    schema_to_json,
)
from .vocab import ControlledVocabulary, VocabularyError, load_vocabulary


class ProfileError(Exception):
    def __init__(self, problems: list[str]) -> None:
        self.problems = problems
        super().__init__("; ".join(problems))


@dataclass(frozen=True)
class ProfileBundle:
    shapes: ShapesModel
    vocabulary: ControlledVocabulary
    display_labels: dict[str, str]
    link_types: frozenset[str]
    form_schema: FormSchema

    def label_for(self, class_iri: str) -> str:
        return self.display_labels.get(class_iri, class_iri)

    def schema_json(self) -> dict:
        return schema_to_json(self.form_schema)

    def vocabulary_json(self) -> dict:
        return {
            "categories": {
                category: sorted(terms)
                for category, terms in sorted(self.vocabulary.categories.items())
            }
        }


def load_profile(path: str | Path) -> ProfileBundle:
    root = Path(path)
    problems: list[str] = []

    shapes: ShapesModel | None = None
    try:
        shapes_text = (root / "shapes.ttl").read_text(encoding="utf-8")
        shapes = load_shapes(parse_turtle(shapes_text))
    except OSError as exc:
        problems.append(f"cannot read shapes.ttl: {exc}")
    except (ParseError, ShapeLoadError) as exc:
        problems.append(f"shapes.ttl: {exc}")

    vocabulary: ControlledVocabulary | None = None
    try:
        vocab_text = (root / "vocabulary.yaml").read_text(encoding="utf-8")
        vocabulary = load_vocabulary(vocab_text)
    except OSError as exc:
        problems.append(f"cannot read vocabulary.yaml: {exc}")
    except VocabularyError as exc:
        problems.append(f"vocabulary.yaml: {exc}")

    display_labels: dict[str, str] = {}
    try:
        raw = json.loads((root / "display.json").read_text(encoding="utf-8"))
        if not isinstance(raw, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in raw.items()
        ):
            problems.append("display.json: must map class IRIs to label strings")
        else:
            display_labels = raw
    except OSError as exc:
        problems.append(f"cannot read display.json: {exc}")
    except json.JSONDecodeError as exc:
        problems.append(f"display.json: {exc}")

    if shapes is not None:
        targets = {s.target_class for s in shapes.shapes if s.target_class}
        for class_iri in display_labels:
            if class_iri not in targets:
                problems.append(
                    f"display.json references class <{class_iri}> not defined in shapes"
                )

    link_types: frozenset[str] = frozenset()
    if shapes is not None:
        link_types = frozenset(
            prop.path
            for shape in shapes.shapes
            for prop in shape.properties
            if prop.path.startswith(CITO)
        )
        if not link_types:
            problems.append("shapes declare no citation link properties")

    if problems:
        raise ProfileError(problems)

    assert shapes is not None and vocabulary is not None
    return ProfileBundle(
        shapes=shapes,
        vocabulary=vocabulary,
        display_labels=display_labels,
        link_types=link_types,
        form_schema=derive_form_schema(shapes),
    )
