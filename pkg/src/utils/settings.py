"""
Configuration for the walk proximity toolkit.

Defaults come from environment variables (prefix WALKPROX_) or a .env file;
command-line flags override them through RunConfig.
"""
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.utils.errors import ParseError


def parse_rational(text: str) -> Fraction:
    """
    Parse an exact rational from `p/q`, an integer or a decimal string.

    Decimal strings are converted exactly ("0.125" -> 1/8).

    Args:
        text: Rational literal

    Returns:
        Exact Fraction
    """
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}")


class Settings(BaseSettings):
    """Process-wide defaults, read from the environment."""

    model_config = SettingsConfigDict(
        env_prefix="WALKPROX_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )

    ratio: str = "1/2"
    alpha: str = "1/2"
    decimals: int = 3
    output_format: Literal["tsv", "json"] = "tsv"
    seed: int = 0
    log_level: str = "WARNING"
    data_dir: Optional[str] = None


@lru_cache
def get_settings() -> Settings:
    return Settings()


class RunConfig(BaseModel):
    """
    Configuration of a single CLI invocation.

    Rationals are stored exactly; string inputs are parsed with parse_rational.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    graph_path: Optional[str] = None
    walks_path: Optional[str] = None
    evaluation_path: Optional[str] = None
    ratio: Fraction = Fraction(1, 2)
    alpha: Fraction = Fraction(1, 2)
    lip_constant: Optional[Fraction] = None
    base_vertex: Optional[str] = None
    anchor_policy: str = "all"
    index_set: str = "all"
    output_format: Literal["tsv", "json"] = "tsv"
    decimals: int = 3
    seed: int = 0

    @field_validator("ratio", "alpha", "lip_constant", mode="before")
    @classmethod
    def _coerce_rational(cls, value):
        if value is None or isinstance(value, Fraction):
            return value
        return parse_rational(value)

    @field_validator("ratio")
    @classmethod
    def _check_ratio(cls, value: Fraction) -> Fraction:
        if not 0 < value < 1:
            raise ValueError(f"ratio must lie in (0, 1), got {value}")
        return value

    @field_validator("alpha")
    @classmethod
    def _check_alpha(cls, value: Fraction) -> Fraction:
        if not 0 <= value <= 1:
            raise ValueError(f"alpha must lie in [0, 1], got {value}")
        return value

    @field_validator("lip_constant")
    @classmethod
    def _check_lip_constant(cls, value: Optional[Fraction]) -> Optional[Fraction]:
        if value is not None and value < 0:
            raise ValueError(f"Lipschitz constant must be non-negative, got {value}")
        return value

    @field_validator("decimals")
    @classmethod
    def _check_decimals(cls, value: int) -> int:
        if value < 0:
            raise ValueError("decimals must be >= 0")
        return value

    @classmethod
    def from_settings(cls, settings: Optional[Settings] = None, **overrides) -> "RunConfig":
        """Build a RunConfig from Settings defaults, dropping overrides that are None."""
        settings = settings or get_settings()
        values = {
            "ratio": settings.ratio,
            "alpha": settings.alpha,
            "decimals": settings.decimals,
            "output_format": settings.output_format,
            "seed": settings.seed,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
