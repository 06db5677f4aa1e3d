import logging
import os

from pydantic import BaseModel, ConfigDict, Field, ValidationError


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


class AppSettings(BaseModel):
    model_config = ConfigDict(validate_default=True)

    log_level: str = Field(default_factory=lambda: os.getenv("LOG_LEVEL", "INFO"))
    # Seed and sample count of the randomized Pfaffian search.
    seed: int = Field(default_factory=lambda: _env_int("NILFORMS_SEED", 0))
    samples: int = Field(default_factory=lambda: _env_int("NILFORMS_SAMPLES", 64), ge=0)
    # Feasibility bounds of the symbolic Pfaffian expansion.
    symbolic_max_params: int = Field(
        default_factory=lambda: _env_int("NILFORMS_SYMBOLIC_MAX_PARAMS", 30), ge=0
    )
    symbolic_max_dim: int = Field(default_factory=lambda: _env_int("NILFORMS_SYMBOLIC_MAX_DIM", 12), ge=0)
    max_workers: int = Field(default_factory=lambda: _env_int("NILFORMS_MAX_WORKERS", 4), ge=1)
    api_key: str | None = Field(default_factory=lambda: os.getenv("API_KEY"))


def get_settings() -> AppSettings:
    try:
        return AppSettings()
    except (ValidationError, ValueError) as exc:
        logging.getLogger("nilforms").error("Invalid application settings: %s", exc)
        raise
