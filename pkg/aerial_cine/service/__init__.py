from aerial_cine.service.simulation_service import (
    SimulationResult,
    SimulationService,
    SimulationServiceConfig,
    SuiteEntry,
    run_simulation,
    simulate,
)


__all__ = [
    "SimulationResult",
    "SimulationService",
    "SimulationServiceConfig",
    "SuiteEntry",
    "run_simulation",
    "simulate",
]
