"""Tests for configuration management."""

import os

from src.config import Settings, get_settings, update_settings


class TestSettings:
    """Test Settings configuration class."""

    def test_settings_with_defaults(self, mocker):
        """Test settings are created with default values."""
        env_vars_to_clear = [
            "LOG_LEVEL",
            "LOG_FORMAT",
            "CHAINRING_CAP",
            "CHAINRING_FIELD_CAP",
            "CHAINRING_DIM_CAP",
            "CHAINRING_UNIT_CAP",
            "CHAINRING_SAMPLES",
            "CHAINRING_SEED",
            "CHAINRING_MAX_ROUNDS",
        ]
        mocker.patch.dict(os.environ, {}, clear=False)
        for key in env_vars_to_clear:
            os.environ.pop(key, None)
        settings = Settings(_env_file=None)

        assert settings.log_level == "INFO"
        assert settings.log_format == "text"
        assert settings.enumeration_cap == 3**13
        assert settings.field_size_cap == 256
        assert settings.dim_cap == 48
        assert settings.unit_census_cap == 3**9
        assert settings.sample_count == 200
        assert settings.random_seed == 20240917
        assert settings.max_closure_rounds == 64

    def test_settings_from_environment(self, mocker):
        """Test settings are loaded from environment variables."""
        mocker.patch.dict(
            os.environ,
            {
                "LOG_LEVEL": "DEBUG",
                "LOG_FORMAT": "json",
                "CHAINRING_CAP": "1000",
                "CHAINRING_SEED": "7",
            },
        )
        settings = Settings(_env_file=None)

        assert settings.log_level == "DEBUG"
        assert settings.log_format == "json"
        assert settings.enumeration_cap == 1000
        assert settings.random_seed == 7

    def test_settings_case_insensitive(self, mocker):
        """Test environment variable names are case insensitive."""
        mocker.patch.dict(os.environ, {"chainring_samples": "12"})
        settings = Settings(_env_file=None)
        assert settings.sample_count == 12

    def test_settings_by_field_name(self):
        """Test settings accept field names as well as aliases."""
        settings = Settings(_env_file=None, enumeration_cap=81)
        assert settings.enumeration_cap == 81


class TestGlobalSettings:
    """Test the module-level settings instance."""

    def test_get_settings_returns_singleton(self):
        """Test get_settings returns the same instance."""
        assert get_settings() is get_settings()

    def test_update_settings(self):
        """Test update_settings changes known keys and ignores unknown ones."""
        update_settings(sample_count=5, no_such_setting=1)
        assert get_settings().sample_count == 5
        assert not hasattr(get_settings(), "no_such_setting")
