"""Service configuration: JSON file plus environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

ENV_OVERRIDES = {
    "LISTEN_ADDR": "listen_addr",
    "DATA_DIR": "data_dir",
    "FETCH_MODE": "fetch_mode",
}


@dataclass
class ApiConfig:
    listen_addr: str = "127.0.0.1"
    port: int = 8080
    data_dir: str = "./data"
    fetch_mode: str = "fixture"
    corpus_dir: str | None = None
    politeness_delay: float = 1.0
    api_keys: list[str] = field(default_factory=list)
    static_dir: str | None = None

    @classmethod
    def load(cls, path: str | Path | None = None, env: dict | None = None) -> "ApiConfig":
        values: dict = {}
        if path is not None:
            values.update(json.loads(Path(path).read_text(encoding="utf-8")))
        env = os.environ if env is None else env
        for var, key in ENV_OVERRIDES.items():
            if env.get(var):
                values[key] = env[var]
        config = cls(**values)
        config.validate()
        return config

    def validate(self) -> None:
        self.port = int(self.port)
        if not 1 <= self.port <= 65535:
            raise ValueError(f"invalid port {self.port}")
        if self.fetch_mode not in ("fixture", "live"):
            raise ValueError(f"fetch_mode must be fixture or live, not {self.fetch_mode!r}")
        Path(self.data_dir).mkdir(parents=True, exist_ok=True)
