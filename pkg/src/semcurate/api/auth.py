"""Pluggable identity: an ORCID-protocol client and a local stub.

Both providers drive the same authorization-code flow. The stub issues
signed codes that resolve against a local user table, so the full login
round trip is testable without any network. Principals are identified by
ORCID-style IRIs; write attribution always uses the session principal.
"""

from __future__ import annotations

import re
import secrets
from dataclasses import dataclass
from urllib.parse import urlencode

import httpx
from itsdangerous import BadSignature, URLSafeSerializer

ORCID_ID_RE = re.compile(r"^\d{4}-\d{4}-\d{4}-\d{3}[\dX]$")


class AuthError(Exception):
    pass


@dataclass(frozen=True)
class Principal:
    id: str  # IRI embedding the ORCID identifier
    display_name: str

    @property
    def orcid(self) -> str:
        return self.id.rstrip("/").rsplit("/", 1)[-1]


def orcid_iri(orcid: str) -> str:
    return f"https://orcid.org/{orcid}"


class StubIdentityProvider:
    """Local user table behind the standard code flow; for tests and demos."""

    def __init__(self, users: dict, secret: str) -> None:
        self._users = users
        self._signer = URLSafeSerializer(secret, salt="stub-auth-code")

    def authorization_url(self, state: str, user: str | None = None) -> str:
        if user is None or user not in self._users:
            raise AuthError(f"unknown stub user {user!r}")
        code = self._signer.dumps({"user": user})
        return f"/auth/callback?{urlencode({'code': code, 'state': state})}"

    def exchange_code(self, code: str) -> Principal:
        try:
            payload = self._signer.loads(code)
        except BadSignature:
            raise AuthError("invalid authorization code") from None
        user = self._users.get(payload.get("user"))
        if user is None:
            raise AuthError("authorization code names an unknown user")
        return Principal(id=orcid_iri(user.orcid), display_name=user.name)


class OrcidIdentityProvider:
    """Authorization-code client speaking the ORCID OAuth protocol."""

    def __init__(
        self,
        provider_url: str,
        client_id: str,
        client_secret: str,
        redirect_uri: str,
        http: httpx.Client | None = None,
    ) -> None:
        self._provider_url = provider_url.rstrip("/")
        self._client_id = client_id
        self._client_secret = client_secret
        self._redirect_uri = redirect_uri
        self._http = http or httpx.Client(timeout=10.0)

    def authorization_url(self, state: str, user: str | None = None) -> str:
        query = urlencode(
            {
                "client_id": self._client_id,
                "response_type": "code",
                "scope": "/authenticate",
                "redirect_uri": self._redirect_uri,
                "state": state,
            }
        )
        return f"{self._provider_url}/oauth/authorize?{query}"

    def exchange_code(self, code: str) -> Principal:
        response = self._http.post(
            f"{self._provider_url}/oauth/token",
            data={
                "client_id": self._client_id,
                "client_secret": self._client_secret,
                "grant_type": "authorization_code",
                "redirect_uri": self._redirect_uri,
                "code": code,
            },
            headers={"Accept": "application/json"},
        )
        if response.status_code != 200:
            raise AuthError(f"token endpoint returned {response.status_code}")
        payload = response.json()
        orcid = payload.get("orcid", "")
        if not ORCID_ID_RE.match(orcid):
            raise AuthError(f"token response carries no valid ORCID id: {orcid!r}")
        return Principal(id=orcid_iri(orcid), display_name=payload.get("name") or orcid)


class SessionCodec:
    """Signed-cookie session state."""

    cookie_name = "semcurate_session"
    state_cookie = "semcurate_state"

    def __init__(self, secret: str) -> None:
        self._signer = URLSafeSerializer(secret, salt="session")

    def encode(self, principal: Principal) -> str:
        return self._signer.dumps({"id": principal.id, "name": principal.display_name})

    def decode(self, token: str | None) -> Principal | None:
        if not token:
            return None
        try:
            data = self._signer.loads(token)
        except BadSignature:
            return None
        return Principal(id=data["id"], display_name=data["name"])

    def new_state(self) -> str:
        return secrets.token_urlsafe(16)
