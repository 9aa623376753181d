"""JSON-over-HTTP service: schemas, entity CRUD with validation and
provenance, history/diff/restore, keyword handling, search, and login."""

from __future__ import annotations

import threading
from typing import Callable

import httpx
from fastapi import Depends, FastAPI, Request, Response
from fastapi.responses import JSONResponse, RedirectResponse
from fastapi.staticfiles import StaticFiles

from ..namespaces import DCTERMS_TITLE, FOAF_NAME, PRISM_KEYWORD, RDFS_LABEL
from ..profile import ProfileBundle, load_profile
from ..rdf import RDF_TYPE, Graph, Iri, Literal, skolemize
from ..shacl import ValidationReport, local_name, validate
from ..store import QuadStore, data_graph_name
from ..termjson import term_to_json
from ..vocab import expand_keywords, validate_keywords
from ..versioning import (
    IndexOutOfRangeError,
    NoChangeError,
    SnapshotRecord,
    UnknownEntityError,
    VersionStore,
)
from .auth import (
    AuthError,
    OrcidIdentityProvider,
    Principal,
    SessionCodec,
    StubIdentityProvider,
)
from .config import AppConfig
from .documents import (
    DocumentError,
    EntityDocument,
    document_from_graph,
    document_from_json,
    document_to_json,
    graph_from_document,
)

DOCUMENTED_ROUTES = [
    "GET /api/schema",
    "GET /api/vocabulary",
    "GET /api/entities",
    "POST /api/entities",
    "GET /api/entities/{id}",
    "PUT /api/entities/{id}",
    "DELETE /api/entities/{id}",
    "GET /api/entities/{id}/history",
    "GET /api/entities/{id}/version/{n}",
    "GET /api/entities/{id}/diff/{i}/{j}",
    "POST /api/entities/{id}/restore/{n}",
    "GET /auth/login",
    "GET /auth/callback",
    "POST /auth/logout",
]


class ApiProblem(Exception):
    def __init__(self, status: int, code: str, message: str, **extra) -> None:
        self.status = status
        self.code = code
        self.message = message
        self.extra = extra
        super().__init__(message)


def _problem_response(problem: ApiProblem) -> JSONResponse:
    body = {"code": problem.code, "message": problem.message}
    body.update(problem.extra)
    return JSONResponse(status_code=problem.status, content=body)


class CurationService:
    """Write pipeline and read helpers shared by the HTTP routes."""

    def __init__(self, config: AppConfig, profile: ProfileBundle, versions: VersionStore) -> None:
        self.config = config
        self.profile = profile
        self.versions = versions
        self._mint_lock = threading.Lock()

    # -- IRIs ---------------------------------------------------------------

    def resolve_iri(self, raw: str) -> str:
        if raw.startswith(("http://", "https://", "urn:")):
            return raw
        return f"{self.config.base_iri}/{raw}"

    def _short_name(self, class_iri: str) -> str:
        name = local_name(class_iri)
        out = [name[0].lower()]
        for ch in name[1:]:
            if ch.isupper():
                out.append("-")
                out.append(ch.lower())
            else:
                out.append(ch)
        return "".join(out)

    def mint_iri(self, class_iri: str) -> str:
        prefix = f"{self.config.base_iri}/{self._short_name(class_iri)}/"
        with self._mint_lock:
            highest = 0
            for entity in self.versions.entities():
                if entity.startswith(prefix):
                    tail = entity[len(prefix):]
                    if tail.isdigit():
                        highest = max(highest, int(tail))
            return f"{prefix}{highest + 1}"

    # -- write pipeline -------------------------------------------------------

    def _check_keywords(self, doc: EntityDocument, current_keywords: frozenset[str] | None) -> frozenset[str]:
        vocab = self.profile.vocabulary
        unknown = sorted(k for k in doc.keywords if not vocab.is_known(k))
        if unknown:
            raise ApiProblem(
                422,
                "unknown-keywords",
                f"keywords not in the controlled vocabulary: {', '.join(unknown)}",
                keywords=unknown,
            )
        if current_keywords is not None:
            # An update may not drop a macro-category while one of its terms
            # stays in the submitted set; expansion would silently undo the
            # removal, so reject it instead.
            dropped = {
                v.missing_category
                for v in validate_keywords(doc.keywords, vocab)
                if v.missing_category in current_keywords
            }
            if dropped:
                violations = [
                    v.message
                    for v in validate_keywords(doc.keywords, vocab)
                    if v.missing_category in dropped
                ]
                raise ApiProblem(
                    422,
                    "keyword-closure",
                    "macro-categories cannot be removed while their terms remain",
                    violations=violations,
                )
        return expand_keywords(doc.keywords, vocab)

    def _validated_graph(self, doc: EntityDocument) -> Graph:
        graph = skolemize(graph_from_document(doc), self.config.base_iri)
        context = set(graph.triples)
        own_graph = data_graph_name(doc.iri)
        for entity in self.versions.entities():
            if data_graph_name(entity) != own_graph:
                context |= self.versions.current_state(entity).triples
        report = validate(Graph(context), self.profile.shapes)
        own_subjects = {t.subject for t in graph}
        relevant = tuple(r for r in report.results if r.focus in own_subjects)
        if relevant:
            raise ApiProblem(
                422,
                "validation-failed",
                "entity does not conform to the profile shapes",
                validation=ValidationReport(results=relevant).to_json(),
            )
        return graph

    def stage_and_commit(
        self,
        doc: EntityDocument,
        principal: Principal,
        *,
        current_keywords: frozenset[str] | None = None,
        source: str | None = None,
        description: str | None = None,
    ) -> SnapshotRecord:
        if doc.type not in self.profile.shapes.by_target:
            raise ApiProblem(422, "unknown-type", f"no shape targets class <{doc.type}>")
        doc.keywords = self._check_keywords(doc, current_keywords)
        graph = self._validated_graph(doc)
        try:
            return self.versions.commit(
                doc.iri, graph, principal.id, source=source, description=description
            )
        except NoChangeError:
            raise ApiProblem(409, "no-change", "submitted state equals the current state") from None

    # -- reads ----------------------------------------------------------------

    def current_document(self, entity: str) -> EntityDocument:
        state = self.versions.current_state(entity)
        history = self.versions.history(entity)
        if not history.snapshots:
            raise ApiProblem(404, "unknown-entity", f"<{entity}> does not exist")
        if len(state) == 0:
            raise ApiProblem(404, "entity-tombstoned", f"<{entity}> has been deleted")
        return document_from_graph(entity, state)

    def search(self, type_filter: str | None, query: str | None) -> list[dict]:
        results = []
        needle = (query or "").strip().lower()
        for entity in self.versions.entities():
            state = self.versions.current_state(entity)
            if len(state) == 0:
                continue
            root = Iri(entity)
            types = [
                t.object.value
                for t in state.match(root, Iri(RDF_TYPE))
                if isinstance(t.object, Iri)
            ]
            if type_filter and type_filter not in types:
                continue
            labels = [
                v.lexical
                for pred in (DCTERMS_TITLE, FOAF_NAME, RDFS_LABEL)
                for v in (t.object for t in state.match(root, Iri(pred)))
                if isinstance(v, Literal)
            ]
            keywords = {
                t.object.lexical
                for t in state.match(root, Iri(PRISM_KEYWORD))
                if isinstance(t.object, Literal)
            }
            if needle:
                in_labels = any(needle in label.lower() for label in labels)
                in_keywords = (query or "").strip() in keywords
                if not (in_labels or in_keywords):
                    continue
            results.append(
                {
                    "iri": entity,
                    "type": sorted(types)[0] if types else None,
                    "label": labels[0] if labels else entity,
                }
            )
        return sorted(results, key=lambda r: r["iri"])


def _snapshot_json(record: SnapshotRecord) -> dict:
    return record.to_json()


def create_app(
    config: AppConfig,
    *,
    store: QuadStore | None = None,
    clock: Callable | None = None,
    http_client: httpx.Client | None = None,
) -> FastAPI:
    profile = load_profile(config.profile_dir)
    quad_store = store if store is not None else QuadStore(config.data_dir)
    versions = VersionStore(quad_store, clock=clock)
    service = CurationService(config, profile, versions)
    sessions = SessionCodec(config.session_secret)

    if config.auth_mode == "orcid":
        provider = OrcidIdentityProvider(
            config.provider_url,
            config.client_id,
            config.client_secret,
            config.redirect_uri or f"{config.base_iri}/auth/callback",
            http=http_client,
        )
    else:
        provider = StubIdentityProvider(config.users, config.session_secret)

    app = FastAPI(title="semcurate", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.service = service
    app.state.store = quad_store

    @app.exception_handler(ApiProblem)
    async def handle_problem(_request: Request, problem: ApiProblem):
        return _problem_response(problem)

    def current_principal(request: Request) -> Principal | None:
        return sessions.decode(request.cookies.get(SessionCodec.cookie_name))

    def require_principal(request: Request) -> Principal:
        principal = current_principal(request)
        if principal is None:
            raise ApiProblem(401, "unauthenticated", "login is required for this operation")
        return principal

    # -- meta ------------------------------------------------------------

    @app.get("/")
    def service_info():
        return {"service": "semcurate", "routes": DOCUMENTED_ROUTES}

    @app.get("/api/schema")
    def get_schema():
        return service.profile.schema_json()

    @app.get("/api/vocabulary")
    def get_vocabulary():
        return service.profile.vocabulary_json()

    # -- auth ------------------------------------------------------------

    @app.get("/auth/login")
    def auth_login(request: Request, user: str | None = None):
        state = sessions.new_state()
        try:
            target = provider.authorization_url(state, user=user)
        except AuthError as exc:
            raise ApiProblem(401, "login-failed", str(exc)) from None
        response = RedirectResponse(target, status_code=302)
        response.set_cookie(SessionCodec.state_cookie, state, httponly=True)
        return response

    @app.get("/auth/callback")
    def auth_callback(request: Request, code: str = "", state: str = ""):
        expected = request.cookies.get(SessionCodec.state_cookie)
        if not state or state != expected:
            raise ApiProblem(401, "invalid-state", "state parameter mismatch")
        try:
            principal = provider.exchange_code(code)
        except AuthError as exc:
            raise ApiProblem(401, "invalid-code", str(exc)) from None
        allowed = config.allow_list
        if config.auth_mode == "orcid" and not allowed:
            raise ApiProblem(403, "not-allowed", "no editors are configured")
        if allowed and principal.orcid not in allowed:
            raise ApiProblem(403, "not-allowed", f"ORCID id {principal.orcid} is not an editor")
        response = RedirectResponse("/", status_code=302)
        response.set_cookie(
            SessionCodec.cookie_name, sessions.encode(principal), httponly=True
        )
        response.delete_cookie(SessionCodec.state_cookie)
        return response

    @app.post("/auth/logout")
    def auth_logout():
        response = Response(status_code=204)
        response.delete_cookie(SessionCodec.cookie_name)
        return response

    # -- entity collection -------------------------------------------------

    @app.get("/api/entities")
    def list_entities(type: str | None = None, q: str | None = None):
        return {"results": service.search(type, q)}

    @app.post("/api/entities", status_code=201)
    async def create_entity(request: Request, principal: Principal = Depends(require_principal)):
        body = await request.json()
        try:
            doc = document_from_json(body)
        except DocumentError as exc:
            raise ApiProblem(422, "bad-document", str(exc)) from None
        if doc.iri:
            doc.iri = service.resolve_iri(doc.iri)
            if service.versions.history(doc.iri).snapshots:
                raise ApiProblem(409, "iri-taken", f"<{doc.iri}> already exists")
        else:
            if not doc.type:
                raise ApiProblem(422, "bad-document", "document needs a 'type'")
            doc.iri = service.mint_iri(doc.type)
        record = service.stage_and_commit(
            doc,
            principal,
            source=body.get("primarySource"),
            description=body.get("description"),
        )
        return {"iri": doc.iri, "snapshot": _snapshot_json(record)}

    # -- per-entity routes (specific paths precede the catch-all id) -------

    @app.get("/api/entities/{id:path}/history")
    def get_history(id: str):
        entity = service.resolve_iri(id)
        history = service.versions.history(entity)
        if not history.snapshots:
            raise ApiProblem(404, "unknown-entity", f"<{entity}> does not exist")
        return {
            "entity": entity,
            "tombstoned": history.tombstoned,
            "snapshots": [_snapshot_json(s) for s in history.snapshots],
        }

    @app.get("/api/entities/{id:path}/version/{n}")
    def get_version(id: str, n: int):
        entity = service.resolve_iri(id)
        try:
            state = service.versions.materialize(entity, n)
        except UnknownEntityError:
            raise ApiProblem(404, "unknown-entity", f"<{entity}> does not exist") from None
        except IndexOutOfRangeError as exc:
            raise ApiProblem(404, "unknown-version", str(exc)) from None
        return document_to_json(document_from_graph(entity, state))

    @app.get("/api/entities/{id:path}/diff/{i}/{j}")
    def get_diff(id: str, i: int, j: int):
        entity = service.resolve_iri(id)
        try:
            delta = service.versions.diff_versions(entity, i, j)
        except UnknownEntityError:
            raise ApiProblem(404, "unknown-entity", f"<{entity}> does not exist") from None
        except IndexOutOfRangeError as exc:
            raise ApiProblem(404, "unknown-version", str(exc)) from None
        return {"entity": entity, "from": i, "to": j, **delta.to_json()}

    @app.post("/api/entities/{id:path}/restore/{n}")
    def post_restore(id: str, n: int, principal: Principal = Depends(require_principal)):
        entity = service.resolve_iri(id)
        try:
            record = service.versions.restore(entity, n, principal.id)
        except UnknownEntityError:
            raise ApiProblem(404, "unknown-entity", f"<{entity}> does not exist") from None
        except IndexOutOfRangeError as exc:
            raise ApiProblem(404, "unknown-version", str(exc)) from None
        except NoChangeError:
            raise ApiProblem(409, "no-change", "entity already matches that version") from None
        return {"iri": entity, "snapshot": _snapshot_json(record)}

    @app.get("/api/entities/{id:path}")
    def get_entity(id: str):
        entity = service.resolve_iri(id)
        return document_to_json(service.current_document(entity))

    @app.put("/api/entities/{id:path}")
    async def update_entity(
        id: str, request: Request, principal: Principal = Depends(require_principal)
    ):
        entity = service.resolve_iri(id)
        current = service.current_document(entity)  # 404s for unknown/tombstoned
        body = await request.json()
        try:
            doc = document_from_json(body)
        except DocumentError as exc:
            raise ApiProblem(422, "bad-document", str(exc)) from None
        doc.iri = entity
        if doc.type is None:
            doc.type = current.type
        record = service.stage_and_commit(
            doc,
            principal,
            current_keywords=current.keywords,
            source=body.get("primarySource"),
            description=body.get("description"),
        )
        return {"iri": entity, "snapshot": _snapshot_json(record)}

    @app.delete("/api/entities/{id:path}")
    def delete_entity(id: str, principal: Principal = Depends(require_principal)):
        entity = service.resolve_iri(id)
        try:
            record = service.versions.delete_entity(entity, principal.id)
        except UnknownEntityError:
            raise ApiProblem(404, "unknown-entity", f"<{entity}> does not exist") from None
        except NoChangeError:
            raise ApiProblem(409, "no-change", "entity is already deleted") from None
        return {"iri": entity, "snapshot": _snapshot_json(record)}

    if config.ui_dir is not None and config.ui_dir.is_dir():
        app.mount("/ui", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app
