"""Toolkit configuration."""

from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from bohr_shared.constants import (
    BISECTION_TOL,
    COUNTEREXAMPLE_DRAWS,
    COUNTEREXAMPLE_RADIUS,
    DEFAULT_ORDER,
    DILATATION_GRID,
    DILATATION_RADIUS,
    HARNESS_SAMPLES,
    HARNESS_SEED,
    MAX_ORDER,
    PRESCHWARZIAN_GRID,
    PRESCHWARZIAN_RADIUS,
    QUADRATURE_TOL,
    SHARPNESS_TOL,
    U_GRID,
    U_RADIUS,
    VIOLATION_STEP,
)


class Settings(BaseSettings):
    """Numeric defaults, overridable through ``BOHR_*`` environment variables."""

    # Truncation
    default_order: int = DEFAULT_ORDER
    max_order: int = MAX_ORDER

    # Root finding and quadrature
    bisection_tol: float = BISECTION_TOL
    quadrature_tol: float = QUADRATURE_TOL

    # Sharpness reports
    sharpness_tol: float = SHARPNESS_TOL
    violation_step: float = VIOLATION_STEP

    # Sample grids
    dilatation_grid: int = DILATATION_GRID
    dilatation_radius: float = DILATATION_RADIUS
    u_grid: int = U_GRID
    u_radius: float = U_RADIUS
    preschwarzian_grid: int = PRESCHWARZIAN_GRID
    preschwarzian_radius: float = PRESCHWARZIAN_RADIUS

    # Property harness
    harness_seed: int = HARNESS_SEED
    lemma1_samples: int = HARNESS_SAMPLES["lemma1"]
    derivative_transfer_samples: int = HARNESS_SAMPLES["derivative_transfer"]
    lebedev_milin_samples: int = HARNESS_SAMPLES["lebedev_milin"]
    area_bound_samples: int = HARNESS_SAMPLES["area_bound"]
    rogosinski_step_samples: int = HARNESS_SAMPLES["rogosinski_step"]
    subordination_bohr_samples: int = HARNESS_SAMPLES["subordination_bohr"]
    counterexample_draws: int = COUNTEREXAMPLE_DRAWS
    counterexample_radius: float = COUNTEREXAMPLE_RADIUS

    model_config = SettingsConfigDict(
        env_prefix="BOHR_",
        extra="ignore",
    )

    def harness_samples(self) -> dict[str, int]:
        """Sample count per harness check, keyed like ``HARNESS_SAMPLES``."""
        return {name: getattr(self, f"{name}_samples") for name in HARNESS_SAMPLES}


class FlagSettings(Settings):
    """Settings built only from explicit arguments.

    The command line must be reproducible from its flags alone, so neither
    the environment nor a dotenv file is consulted.
    """

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)


settings = Settings()
