"""REST API service (the only interface the Explorer consumes)."""

from .app import create_app
from .config import ApiConfig

__all__ = ["create_app", "ApiConfig"]
