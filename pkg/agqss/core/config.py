from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="AGQSS_",
        extra="ignore",
    )

    app_name: str = "agqss"

    # caps
    coset_cap: int = Field(2**20, ge=1)
    operator_cap: int = Field(4096, ge=1)

    threads: int = Field(1, ge=1)

    log_level: str = "WARNING"
    logging_config: Path | None = Path("logging.ini")

    rng_algorithm: str = "PCG64"

    # default irreducible moduli, highest degree first, keyed "p^m"
    moduli: dict[str, list[int]] = {
        "2^2": [1, 1, 1],
        "2^3": [1, 0, 1, 1],
        "3^2": [1, 0, 1],
        "2^4": [1, 0, 0, 1, 1],
    }


@lru_cache
def get_settings() -> Settings:
    return Settings()
