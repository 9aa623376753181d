"""Service configuration: config file with environment-variable overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

ENV_PREFIX = "SEMCURATE_"


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class StubUser:
    orcid: str
    name: str


@dataclass(frozen=True)
class AppConfig:
    profile_dir: Path
    data_dir: Path
    base_iri: str = "https://db.example.org"
    port: int = 8080
    auth_mode: str = "stub"
    provider_url: str = "https://sandbox.orcid.org"
    client_id: str = ""
    client_secret: str = ""
    redirect_uri: str = ""
    allow_list: tuple[str, ...] = ()
    users: dict[str, StubUser] = field(default_factory=dict)
    session_secret: str = "development-secret-change-me"
    ui_dir: Path | None = None


def _env_value(env: Mapping[str, str], key: str) -> str | None:
    return env.get(ENV_PREFIX + key)


def load_config(
    config_file: str | Path | None = None,
    env: Mapping[str, str] | None = None,
    **overrides,
) -> AppConfig:
    """Resolve configuration: explicit overrides > environment > config file."""
    env = env if env is not None else os.environ
    raw: dict = {}
    if config_file is not None:
        path = Path(config_file)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None

    def pick(key: str, default=None):
        if key in overrides and overrides[key] is not None:
            return overrides[key]
        env_val = _env_value(env, key.upper())
        if env_val is not None:
            return env_val
        return raw.get(key, default)

    profile_dir = pick("profile_dir")
    data_dir = pick("data_dir")
    if not profile_dir or not data_dir:
        raise ConfigError("profile_dir and data_dir must be configured")

    allow_list = pick("allow_list", ())
    if isinstance(allow_list, str):
        allow_list = tuple(p.strip() for p in allow_list.split(",") if p.strip())
    else:
        allow_list = tuple(allow_list)

    users_raw = pick("users", {})
    users = {
        key: StubUser(orcid=value["orcid"], name=value.get("name", key))
        for key, value in users_raw.items()
    }

    auth_mode = pick("auth_mode", "stub")
    if auth_mode not in ("stub", "orcid"):
        raise ConfigError(f"auth_mode must be 'stub' or 'orcid', not {auth_mode!r}")

    ui_dir = pick("ui_dir")
    return AppConfig(
        profile_dir=Path(profile_dir),
        data_dir=Path(data_dir),
        base_iri=str(pick("base_iri", AppConfig.base_iri)).rstrip("/"),
        port=int(pick("port", AppConfig.port)),
        auth_mode=auth_mode,
        provider_url=str(pick("provider_url", AppConfig.provider_url)).rstrip("/"),
        client_id=pick("client_id", ""),
        client_secret=pick("client_secret", ""),
        redirect_uri=pick("redirect_uri", ""),
        allow_list=allow_list,
        users=users,
        session_secret=pick("session_secret", AppConfig.session_secret),
        ui_dir=Path(ui_dir) if ui_dir else None,
    )
