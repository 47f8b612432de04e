"""n-slit interference as superposed ballistic diffusion."""

from ._core import (
    GridSpec,
    NslitError,
    PhysicalParams,
    ScenarioConfig,
    SlitSpec,
    density_at,
    derive_params,
    gallery_scenarios,
    modular_decompose,
    oracle,
    parse_config,
    run_diffusion,
    run_scenario,
    seed_positions,
    serialize_config,
    sigma_at,
    superpose,
    total_velocity,
    trajectories,
)

__all__ = [
    "GridSpec",
    "NslitError",
    "PhysicalParams",
    "ScenarioConfig",
    "SlitSpec",
    "density_at",
    "derive_params",
    "gallery_scenarios",
    "modular_decompose",
    "oracle",
    "parse_config",
    "run_diffusion",
    "run_scenario",
    "seed_positions",
    "serialize_config",
    "sigma_at",
    "superpose",
    "total_velocity",
    "trajectories",
]
