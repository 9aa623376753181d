import copy

import httpx
import pytest

from semcurate.api import create_app
from semcurate.api.auth import AuthError, OrcidIdentityProvider, orcid_iri
from semcurate.namespaces import DCTERMS_ABSTRACT, DCTERMS_TITLE, FABIO
from semcurate.rdf import parse_nquad_line

import martis
from api_helpers import (
    ALICE_ORCID,
    make_client,
    make_config,
    agent_payload,
    literal,
    login,
    martis_payload,
)
from clocks import SteppingClock


@pytest.fixture
def client(tmp_path):
    with make_client(tmp_path) as c:
        yield c


# -- auth -------------------------------------------------------------------


def test_stub_login_establishes_session(client):
    response = client.get("/auth/login", params={"user": "alice"}, follow_redirects=False)
    assert response.status_code == 302
    callback = client.get(response.headers["location"], follow_redirects=False)
    assert callback.status_code == 302
    assert "semcurate_session" in client.cookies


def test_unknown_stub_user_cannot_login(client):
    response = client.get("/auth/login", params={"user": "nobody"})
    assert response.status_code == 401


def test_unlisted_orcid_id_gets_403(client):
    response = client.get("/auth/login", params={"user": "mallory"}, follow_redirects=False)
    callback = client.get(response.headers["location"], follow_redirects=False)
    assert callback.status_code == 403
    assert callback.json()["code"] == "not-allowed"


def test_callback_with_wrong_state_is_401(client):
    response = client.get("/auth/login", params={"user": "alice"}, follow_redirects=False)
    location = response.headers["location"]
    tampered = location.replace("state=", "state=wrong")
    assert client.get(tampered, follow_redirects=False).status_code == 401


def test_logout_clears_session(client):
    login(client)
    assert client.post("/auth/logout").status_code == 204
    response = client.post("/api/entities", json=martis_payload())
    assert response.status_code == 401


def test_writes_require_authentication(client):
    assert client.post("/api/entities", json=martis_payload()).status_code == 401
    assert client.put("/api/entities/journal-article/1", json={}).status_code == 401
    assert client.delete("/api/entities/journal-article/1").status_code == 401
    assert client.post("/api/entities/journal-article/1/restore/1").status_code == 401


# -- schema and vocabulary -----------------------------------------------------


def test_schema_route_returns_golden_schema(client):
    import json
    from pathlib import Path

    golden = json.loads(
        (Path(__file__).parent / "fixtures" / "form-schema.golden.json").read_text()
    )
    assert client.get("/api/schema").json() == golden


def test_vocabulary_route_lists_categories(client):
    body = client.get("/api/vocabulary").json()
    assert "elegy" in body["categories"]["ancient tradition"]
    assert "scholia" in body["categories"]["exegetical products"]


# -- create -----------------------------------------------------------------


def test_create_martis_record(client):
    login(client)
    response = client.post("/api/entities", json=martis_payload())
    assert response.status_code == 201, response.text
    body = response.json()
    assert body["iri"].startswith("https://db.example.org/journal-article/")
    snapshot = body["snapshot"]
    assert snapshot["index"] == 1
    assert snapshot["agent"] == orcid_iri(ALICE_ORCID)
    assert snapshot["generatedAt"].endswith("Z")


def test_create_without_title_is_422_with_min_count(client):
    login(client)
    payload = martis_payload()
    del payload["fields"][DCTERMS_TITLE]
    response = client.post("/api/entities", json=payload)
    assert response.status_code == 422
    validation = response.json()["validation"]
    assert not validation["conforms"]
    assert any(r["component"] == "MinCount" for r in validation["results"])


def test_keyword_closure_expands_on_create(client):
    login(client)
    payload = martis_payload()
    payload["keywords"] = ["scholia"]
    response = client.post("/api/entities", json=payload)
    assert response.status_code == 201
    doc = client.get(f"/api/entities/{response.json()['iri']}").json()
    assert set(doc["keywords"]) == {"scholia", "exegetical products"}


def test_unknown_keyword_rejected_in_strict_mode(client):
    login(client)
    payload = martis_payload()
    payload["keywords"] = ["totally made up"]
    response = client.post("/api/entities", json=payload)
    assert response.status_code == 422
    assert response.json()["code"] == "unknown-keywords"


def test_unknown_type_is_422(client):
    login(client)
    response = client.post(
        "/api/entities",
        json={"type": "http://example.org/Mystery", "fields": {}},
    )
    assert response.status_code == 422
    assert response.json()["code"] == "unknown-type"


def test_explicit_iri_collision_is_409(client):
    login(client)
    payload = martis_payload()
    payload["iri"] = "journal-article/77"
    assert client.post("/api/entities", json=payload).status_code == 201
    assert client.post("/api/entities", json=payload).status_code == 409


def test_minted_iris_are_sequential_per_type(client):
    login(client)
    first = client.post("/api/entities", json=agent_payload("One")).json()["iri"]
    second = client.post("/api/entities", json=agent_payload("Two")).json()["iri"]
    assert first.endswith("/agent/1")
    assert second.endswith("/agent/2")


# -- read, update, history -------------------------------------------------------


def _create_martis(client) -> str:
    login(client)
    response = client.post("/api/entities", json=martis_payload())
    assert response.status_code == 201
    return response.json()["iri"]


def test_get_entity_round_trips_document(client):
    iri = _create_martis(client)
    doc = client.get(f"/api/entities/{iri}").json()
    assert doc["iri"] == iri
    assert doc["type"] == FABIO + "JournalArticle"
    title = doc["fields"][DCTERMS_TITLE][0]["value"]
    assert title == martis.TITLE
    assert set(doc["keywords"]) == martis.KEYWORDS_V1


def test_get_unknown_entity_is_404(client):
    assert client.get("/api/entities/journal-article/404").status_code == 404


def test_update_revises_abstract_and_adds_keyword(client):
    iri = _create_martis(client)
    doc = client.get(f"/api/entities/{iri}").json()
    doc["fields"][DCTERMS_ABSTRACT] = [literal(martis.ABSTRACT_V2)]
    doc["keywords"] = sorted(set(doc["keywords"]) | {"elegy"})
    response = client.put(f"/api/entities/{iri}", json=doc)
    assert response.status_code == 200, response.text
    assert response.json()["snapshot"]["index"] == 2

    history = client.get(f"/api/entities/{iri}/history").json()
    assert len(history["snapshots"]) == 2
    delta = history["snapshots"][1]["delta"]
    removed_abstracts = [line for line in delta["removed"] if martis.ABSTRACT_V1[:30] in line]
    added_abstracts = [line for line in delta["added"] if martis.ABSTRACT_V2[:30] in line]
    assert removed_abstracts and added_abstracts
    # The macro-category for 'elegy' arrives via expansion.
    stored = client.get(f"/api/entities/{iri}").json()
    assert set(stored["keywords"]) == martis.KEYWORDS_V2


def test_identical_resubmission_is_409(client):
    iri = _create_martis(client)
    doc = client.get(f"/api/entities/{iri}").json()
    response = client.put(f"/api/entities/{iri}", json=doc)
    assert response.status_code == 409
    assert response.json()["code"] == "no-change"


def test_removing_category_of_surviving_term_is_422(client):
    iri = _create_martis(client)
    doc = client.get(f"/api/entities/{iri}").json()
    # 'commented edition' stays but its macro-category goes away.
    doc["keywords"] = ["commented edition"]
    response = client.put(f"/api/entities/{iri}", json=doc)
    assert response.status_code == 422
    assert response.json()["code"] == "keyword-closure"


def test_422_never_grows_history(client):
    iri = _create_martis(client)

    def history_len():
        return len(client.get(f"/api/entities/{iri}/history").json()["snapshots"])

    before = history_len()
    doc = client.get(f"/api/entities/{iri}").json()
    bad = copy.deepcopy(doc)
    del bad["fields"][DCTERMS_TITLE]
    assert client.put(f"/api/entities/{iri}", json=bad).status_code == 422
    bad = copy.deepcopy(doc)
    bad["keywords"] = ["nonsense keyword"]
    assert client.put(f"/api/entities/{iri}", json=bad).status_code == 422
    assert history_len() == before


def test_version_and_diff_routes(client):
    iri = _create_martis(client)
    doc = client.get(f"/api/entities/{iri}").json()
    doc["fields"][DCTERMS_ABSTRACT] = [literal(martis.ABSTRACT_V2)]
    client.put(f"/api/entities/{iri}", json=doc)

    v1 = client.get(f"/api/entities/{iri}/version/1").json()
    assert v1["fields"][DCTERMS_ABSTRACT][0]["value"] == martis.ABSTRACT_V1

    empty = client.get(f"/api/entities/{iri}/diff/1/1").json()
    assert empty["added"] == [] and empty["removed"] == []

    diff = client.get(f"/api/entities/{iri}/diff/1/2").json()
    assert any(martis.ABSTRACT_V2[:30] in line for line in diff["added"])
    for line in diff["added"] + diff["removed"]:
        assert parse_nquad_line(line) is not None

    assert client.get(f"/api/entities/{iri}/version/9").status_code == 404
    assert client.get(f"/api/entities/{iri}/diff/1/9").status_code == 404


def test_get_version_rebuilds_to_materialized_graph(client):
    from semcurate.api.documents import document_from_json, graph_from_document

    iri = _create_martis(client)
    doc = client.get(f"/api/entities/{iri}").json()
    doc["fields"][DCTERMS_ABSTRACT] = [literal(martis.ABSTRACT_V2)]
    client.put(f"/api/entities/{iri}", json=doc)

    service = client.app.state.service
    for n in (1, 2):
        returned = client.get(f"/api/entities/{iri}/version/{n}").json()
        rebuilt = graph_from_document(document_from_json(returned))
        assert rebuilt == service.versions.materialize(iri, n)


def test_restore_round_trips_document(client):
    iri = _create_martis(client)
    doc = client.get(f"/api/entities/{iri}").json()
    doc["fields"][DCTERMS_ABSTRACT] = [literal(martis.ABSTRACT_V2)]
    client.put(f"/api/entities/{iri}", json=doc)

    response = client.post(f"/api/entities/{iri}/restore/1")
    assert response.status_code == 200
    snapshot = response.json()["snapshot"]
    assert snapshot["index"] == 3
    assert snapshot["description"] == "restore"

    assert client.get(f"/api/entities/{iri}").json() == client.get(
        f"/api/entities/{iri}/version/1"
    ).json()
    assert client.post(f"/api/entities/{iri}/restore/3").status_code == 409


def test_delete_tombstones_and_restore_revives(client):
    iri = _create_martis(client)
    response = client.delete(f"/api/entities/{iri}")
    assert response.status_code == 200
    assert response.json()["snapshot"]["index"] == 2

    assert client.get(f"/api/entities/{iri}").status_code == 404
    history = client.get(f"/api/entities/{iri}/history").json()
    assert history["tombstoned"] is True

    assert client.delete(f"/api/entities/{iri}").status_code == 409

    client.post(f"/api/entities/{iri}/restore/1")
    assert client.get(f"/api/entities/{iri}").status_code == 200


def test_agent_attribution_follows_session(client):
    iri = _create_martis(client)
    client.post("/auth/logout")
    login(client, "bob")
    doc = client.get(f"/api/entities/{iri}").json()
    doc["fields"][DCTERMS_ABSTRACT] = [literal(martis.ABSTRACT_V2)]
    response = client.put(f"/api/entities/{iri}", json=doc)
    history = client.get(f"/api/entities/{iri}/history").json()
    agents = [s["agent"] for s in history["snapshots"]]
    assert agents[0].endswith(ALICE_ORCID)
    assert agents[1].endswith("0000-0002-9876-5432")


# -- search -------------------------------------------------------------------


def test_search_by_title_substring_and_keyword(client):
    login(client)
    client.post("/api/entities", json=martis_payload())
    other = agent_payload("Someone Else")
    client.post("/api/entities", json=other)

    hits = client.get("/api/entities", params={"q": "plouvre"}).json()["results"]
    assert len(hits) == 1
    assert hits[0]["label"] == martis.TITLE

    keyword_hits = client.get("/api/entities", params={"q": "commented edition"}).json()["results"]
    assert len(keyword_hits) == 1

    # Keyword matching is exact, not substring.
    assert client.get("/api/entities", params={"q": "commented"}).json()["results"] == []

    typed = client.get("/api/entities", params={"type": FABIO + "JournalArticle"}).json()["results"]
    assert len(typed) == 1
    everything = client.get("/api/entities").json()["results"]
    assert len(everything) == 2


def test_search_counts_match_linear_oracle(client):
    login(client)
    payloads = []
    for i in range(6):
        payload = agent_payload(f"Agent {'Scholia' if i % 2 else 'Plain'} {i}")
        if i % 3 == 0:
            payload["keywords"] = ["scholia", "exegetical products"]
        payloads.append(payload)
        client.post("/api/entities", json=payload)
    hits = client.get("/api/entities", params={"q": "scholia"}).json()["results"]
    expected = sum(
        1
        for p in payloads
        if "scholia" in p.get("keywords", [])
        or "scholia" in p["fields"][next(iter(p["fields"]))][0]["value"].lower()
    )
    assert len(hits) == expected


def test_identical_gets_return_identical_bodies(client):
    iri = _create_martis(client)
    for path in (f"/api/entities/{iri}", "/api/schema", f"/api/entities/{iri}/history", "/api/entities"):
        assert client.get(path).content == client.get(path).content


# -- the orcid-protocol provider ---------------------------------------------


def _orcid_provider(handler) -> OrcidIdentityProvider:
    transport = httpx.MockTransport(handler)
    return OrcidIdentityProvider(
        "https://orcid.example.org",
        client_id="app-id",
        client_secret="app-secret",
        redirect_uri="https://db.example.org/auth/callback",
        http=httpx.Client(transport=transport),
    )


def test_orcid_provider_exchanges_code():
    def handler(request: httpx.Request) -> httpx.Response:
        assert request.url.path == "/oauth/token"
        body = request.content.decode()
        assert "grant_type=authorization_code" in body
        assert "code=abc123" in body
        return httpx.Response(
            200, json={"orcid": "0000-0001-2345-6789", "name": "Alice Editor"}
        )

    principal = _orcid_provider(handler).exchange_code("abc123")
    assert principal.id == "https://orcid.org/0000-0001-2345-6789"
    assert principal.display_name == "Alice Editor"
    assert principal.orcid == "0000-0001-2345-6789"


def test_orcid_provider_rejects_bad_token_response():
    def handler(request: httpx.Request) -> httpx.Response:
        return httpx.Response(400, json={"error": "invalid_grant"})

    with pytest.raises(AuthError):
        _orcid_provider(handler).exchange_code("bad")


def test_orcid_provider_rejects_malformed_orcid():
    def handler(request: httpx.Request) -> httpx.Response:
        return httpx.Response(200, json={"orcid": "not-an-orcid"})

    with pytest.raises(AuthError):
        _orcid_provider(handler).exchange_code("abc")


def test_orcid_mode_login_flow(tmp_path):
    def handler(request: httpx.Request) -> httpx.Response:
        return httpx.Response(
            200, json={"orcid": ALICE_ORCID, "name": "Alice Editor"}
        )

    config = make_config(
        tmp_path,
        auth_mode="orcid",
        provider_url="https://orcid.example.org",
        client_id="app-id",
        client_secret="app-secret",
        redirect_uri="https://db.example.org/auth/callback",
    )
    app = create_app(
        config,
        clock=SteppingClock(),
        http_client=httpx.Client(transport=httpx.MockTransport(handler)),
    )
    with pytest.MonkeyPatch.context():
        from fastapi.testclient import TestClient

        with TestClient(app) as client:
            response = client.get("/auth/login", follow_redirects=False)
            assert response.status_code == 302
            location = response.headers["location"]
            assert location.startswith("https://orcid.example.org/oauth/authorize?")
            state = location.split("state=")[1].split("&")[0]
            callback = client.get(
                "/auth/callback",
                params={"code": "real-code", "state": state},
                follow_redirects=False,
            )
            assert callback.status_code == 302
            create = client.post("/api/entities", json=agent_payload("Via ORCID"))
            assert create.status_code == 201
            assert create.json()["snapshot"]["agent"] == orcid_iri(ALICE_ORCID)
