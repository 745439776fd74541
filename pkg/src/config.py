"""Configuration management for the chain ring toolkit."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from environment variables and an optional .env file."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        env_prefix="",
        populate_by_name=True,
        extra="ignore",
    )

    # Logging
    log_level: str = Field(default="INFO", description="Logging level")
    log_format: str = Field(default="text", description="Log format (json or text)")

    # Exhaustive search limits
    enumeration_cap: int = Field(
        default=3**13,
        description="Largest ring cardinality for which the full ideal census runs",
        alias="CHAINRING_CAP",
    )
    field_size_cap: int = Field(
        default=256,
        description="Largest field order for exhaustive root and witness searches",
        alias="CHAINRING_FIELD_CAP",
    )
    dim_cap: int = Field(
        default=48,
        description="Largest F_q-dimension for construction-time verification "
        "and exhaustive unit fallbacks",
        alias="CHAINRING_DIM_CAP",
    )
    unit_census_cap: int = Field(
        default=3**9,
        description="Largest ring cardinality for element-by-element unit checks",
        alias="CHAINRING_UNIT_CAP",
    )

    # Sampling
    sample_count: int = Field(
        default=200,
        description="Random pairs drawn for homomorphism spot checks",
        alias="CHAINRING_SAMPLES",
    )
    random_seed: int = Field(
        default=20240917,
        description="Seed for every sampled check",
        alias="CHAINRING_SEED",
    )

    # Oracle
    max_closure_rounds: int = Field(
        default=64,
        description="Hard cap on ideal sum-closure rounds",
        alias="CHAINRING_MAX_ROUNDS",
    )


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get the current settings."""
    return settings


def update_settings(**kwargs) -> None:
    """Update settings in place; unknown keys are ignored."""
    for key, value in kwargs.items():
        if hasattr(settings, key):
            setattr(settings, key, value)
