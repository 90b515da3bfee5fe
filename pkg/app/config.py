"""
Configuration management for the disentropy toolkit.
Supports multiple environments: stage and production.
"""
import os
from pathlib import Path
from typing import Literal, Optional
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings with environment-based configuration."""

    # Application settings
    app_name: str = "Disentropy Toolkit"
    app_env: Literal["stage", "production"] = "stage"
    debug: bool = False
    log_level: str = "INFO"

    # Output settings
    output_format: Literal["json", "csv"] = "json"
    output_dir: str = "data/curves"
    seed: int = 0

    # Special function solvers
    wq_tolerance: float = 1e-13  # relative step tolerance of the bracketed Newton solver
    wq_max_iterations: int = 200
    lambert_polish: bool = True  # one Halley step after scipy's lambertw

    # Phase-space quadrature
    default_q: float = 2.0  # signed Wigner fields need integer r
    quadrature_radius_pad: float = 5.0  # R = pad + |beta|
    quadrature_nodes_1mode: int = 96
    quadrature_nodes_2mode: int = 64
    kerr_quadrature_nodes: int = 200  # cat-state fringes need the resolution
    fock_cutoff: int = 60
    fock_tail: float = 1e-10
    squeezing_window: float = 2.0  # observation window of the squeezing sweep

    # Classical channel search
    capacity_tolerance: float = 1e-9
    capacity_grid: int = 10_000

    # Quantum
    discord_grid: int = 64
    max_matrix_dim: int = 64

    # Applications
    poisson_support: int = 200
    number_support_size: Optional[int] = 64  # None: normalize by the distinct prime count
    trial_division_limit: int = 10**6

    @field_validator('number_support_size', mode='before')
    @classmethod
    def parse_number_support_size(cls, v):
        """Convert empty string to None for number_support_size."""
        if v == '' or v is None:
            return None
        return int(v) if isinstance(v, str) else v

    @field_validator('log_level', mode='before')
    @classmethod
    def parse_log_level(cls, v):
        """Normalize the log level name."""
        if v == '' or v is None:
            return "INFO"
        return str(v).upper()

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )


# Global settings instance
_settings: Settings | None = None


def get_settings() -> Settings:
    """
    Get the active settings instance.
    Loads the appropriate .env file based on APP_ENV environment variable.

    Returns:
        Settings: The active settings instance
    """
    global _settings

    if _settings is None:
        app_env = os.getenv("APP_ENV", "stage").lower()

        env_file = f".env.{app_env}"
        env_path = Path(env_file)

        if env_path.exists():
            _settings = Settings(
                _env_file=env_file,
                _env_file_encoding="utf-8"
            )
        else:
            default_env_file = Path(".env")
            if default_env_file.exists():
                _settings = Settings(_env_file=".env", _env_file_encoding="utf-8")
            else:
                _settings = Settings()

        if app_env in ("stage", "production"):
            _settings.app_env = app_env

    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment."""
    global _settings
    _settings = None
