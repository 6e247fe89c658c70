from __future__ import annotations

from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit configuration loaded from environment variables or `.env`."""

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    # Core service
    app_name: str = Field(default="reaction-dynamics", description="Bound to every log record")
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"

    # Background sets
    max_background: int = Field(
        default=4096, ge=1, description="Largest background set accepted when building a system"
    )

    # Exhaustive searches
    budget_states: int = Field(
        default=1 << 20, ge=1, description="Most states an exact search may enumerate"
    )
    budget_steps: int = Field(
        default=1 << 22, ge=1, description="Longest trajectory a single simulation may follow"
    )

    # Oracle
    oracle_max_width: int = Field(
        default=24, ge=1, le=30, description="Largest background the state-graph oracle builds"
    )

    # Graph export
    dot_highlight_color: str = "red"


@lru_cache
def get_settings() -> Settings:
    """Return cached settings instance."""

    return Settings()  # type: ignore[arg-type]
