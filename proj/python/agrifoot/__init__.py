"""Territorial carbon footprint of digital agriculture deployments."""

from ._agrifoot import (
    ConfigError,
    EngineError,
    AllocationEntry,
    DeviceKind,
    DeviceSpec,
    FarmSizeDistribution,
    SizeUnit,
    annual_energy_nonrobotic,
    annual_energy_robotic,
    densify,
    derive_capacity,
    device_quantity,
    embodied_annual,
    mass_function,
    raw_weight,
    run_scenario,
    thermal_baseline,
    use_annual,
    validate_scenario,
)

__all__ = [
    "ConfigError",
    "EngineError",
    "AllocationEntry",
    "DeviceKind",
    "DeviceSpec",
    "FarmSizeDistribution",
    "SizeUnit",
    "annual_energy_nonrobotic",
    "annual_energy_robotic",
    "densify",
    "derive_capacity",
    "device_quantity",
    "embodied_annual",
    "mass_function",
    "raw_weight",
    "run_scenario",
    "thermal_baseline",
    "use_annual",
    "validate_scenario",
]
