"""SHACL subset: shape loading, validation, and form-schema derivation."""

from .forms import (
    FormField,
    FormSchema,
    derive_form_schema,
    field_to_json,
    local_name,
    schema_to_json,
)
from .loader import ShapeLoadError, load_shapes
from .model import (
    Component,
    NodeKind,
    NodeShape,
    PropertyShape,
    ShapesModel,
    ValidationReport,
    ValidationResult,
)
from .validator import validate

__all__ = [
    "Component",
    "FormField",
    "FormSchema",
    "NodeKind",
    "NodeShape",
    "PropertyShape",
    "ShapeLoadError",
    "ShapesModel",
    "ValidationReport",
    "ValidationResult",
    "derive_form_schema",
    "field_to_json",
    "load_shapes",
    "local_name",
    "schema_to_json",
    "validate",
]
