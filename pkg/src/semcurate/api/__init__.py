"""HTTP service: app factory, configuration, identity, entity documents."""

from .app import DOCUMENTED_ROUTES, ApiProblem, CurationService, create_app
from .auth import (
    AuthError,
    OrcidIdentityProvider,
    Principal,
    SessionCodec,
    StubIdentityProvider,
    orcid_iri,
)
from .config import AppConfig, ConfigError, StubUser, load_config
from .documents import (
    DocumentError,
    EntityDocument,
    NestedNode,
    document_from_graph,
    document_from_json,
    document_to_json,
    graph_from_document,
)

__all__ = [
    "ApiProblem",
    "AppConfig",
    "AuthError",
    "ConfigError",
    "CurationService",
    "DOCUMENTED_ROUTES",
    "DocumentError",
    "EntityDocument",
    "NestedNode",
    "OrcidIdentityProvider",
    "Principal",
    "SessionCodec",
    "StubIdentityProvider",
    "StubUser",
    "create_app",
    "document_from_graph",
    "document_from_json",
    "document_to_json",
    "graph_from_document",
    "load_config",
    "orcid_iri",
]
