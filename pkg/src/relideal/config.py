"""
Runtime configuration: ``config/config.json`` seeded settings with
``RELIDEAL_*`` environment overrides, and the logging set-up.
"""

import json
import logging
import sys
from typing import Optional

from pydantic import BaseModel, Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import ConfigError

DEFAULT_CONFIG_PATH = "config/config.json"

logger = logging.getLogger(__name__)


class LoggingSettings(BaseModel):
    level: str = "INFO"
    file: Optional[str] = None
    format: str = "%(asctime)s %(levelname)s %(message)s"


class Settings(BaseSettings):
    """Settings resolved from the config file, the environment and ``.env``."""

    model_config = SettingsConfigDict(
        env_prefix="RELIDEAL_",
        env_nested_delimiter="__",
        env_file=".env",
        extra="ignore",
    )

    threads: int = Field(1, ge=1)
    group_cap: int = Field(1_000_000, ge=1)
    pointset_cap: int = Field(10_000, ge=1)
    prime_search_cap: int = Field(1_000_000, ge=3)
    align_max_degree: int = Field(8, ge=1)
    small_prime_limit: int = Field(10_000, ge=3)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls,
        init_settings,
        env_settings,
        dotenv_settings,
        file_secret_settings,
    ):
        # The config file arrives as init kwargs and must lose to the environment.
        return env_settings, dotenv_settings, init_settings, file_secret_settings

    def with_overrides(self, **overrides) -> "Settings":
        """Apply CLI flags; ``None`` means the flag was not given."""
        data = self.model_dump()
        for key, value in overrides.items():
            if value is None:
                continue
            if key.startswith("logging_"):
                data["logging"][key[len("logging_"):]] = value
            else:
                data[key] = value
        try:
            return type(self).model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"Invalid override: {e}") from e


def load_config(path: str = DEFAULT_CONFIG_PATH) -> Settings:
    """Load configuration from a JSON file, falling back to defaults."""
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except FileNotFoundError:
        data = {}
    except json.JSONDecodeError as e:
        raise ConfigError(f"Malformed config file {path}: {e}") from e

    try:
        return Settings(**data)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration in {path}: {e}") from e


def configure_logging(settings: Settings) -> None:
    log_level = getattr(logging, settings.logging.level.upper(), logging.INFO)
    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.logging.file:
        handlers.append(logging.FileHandler(settings.logging.file))
    logging.basicConfig(
        level=log_level,
        format=settings.logging.format,
        handlers=handlers,
        force=True,
    )
