"""Deployment configuration: flag > environment > config file > defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

import yaml

ENV_PREFIX = "SCHOLAR_"

_ENV_KEYS = {
    "store_path": "SCHOLAR_STORE_PATH",
    "fixtures_dir": "SCHOLAR_FIXTURES_DIR",
    "listen_address": "SCHOLAR_LISTEN_ADDRESS",
    "admin_token": "SCHOLAR_ADMIN_TOKEN",
    "ui_dir": "SCHOLAR_UI_DIR",
    "ai_backend_url": "AI_BACKEND_URL",
    "ai_backend_key": "AI_BACKEND_KEY",
    "ai_model_name": "AI_MODEL_NAME",
    "ai_fallback_enabled": "AI_FALLBACK_ENABLED",
    "ai_prompts_path": "AI_PROMPTS_PATH",
}


@dataclass
class AppConfig:
    store_path: str = "scholar.db"
    fixtures_dir: str | None = None
    listen_address: str = "127.0.0.1:8080"
    admin_token: str = "admin-token"
    ui_dir: str | None = None
    reference_year: int | None = None
    ai_backend_url: str | None = None
    ai_backend_key: str | None = None
    ai_model_name: str | None = None
    ai_fallback_enabled: bool = True
    ai_prompts_path: str | None = None
    ai_max_inflight: int = 2

    @classmethod
    def load(cls, config_path: str | None = None, env=os.environ, **overrides) -> "AppConfig":
        values: dict = {}
        if config_path:
            raw = yaml.safe_load(Path(config_path).read_text(encoding="utf-8")) or {}
            if not isinstance(raw, dict):
                raise ValueError(f"config file {config_path} must hold a mapping")
            known = {f.name for f in fields(cls)}
            values.update({k: v for k, v in raw.items() if k in known})
        for field_name, env_key in _ENV_KEYS.items():
            if env.get(env_key):
                values[field_name] = env[env_key]
        values.update({k: v for k, v in overrides.items() if v is not None})
        if isinstance(values.get("ai_fallback_enabled"), str):
            values["ai_fallback_enabled"] = values["ai_fallback_enabled"].lower() != "false"
        if values.get("reference_year") is not None:
            values["reference_year"] = int(values["reference_year"])
        return cls(**values)
