# Import key classes for easier access
from aerial_cine.core.config import SimConfig
from aerial_cine.models.skeleton import MotionClip
from aerial_cine.service.simulation_service import SimulationService, simulate

# Re-export at the top level
__all__ = ["MotionClip", "SimConfig", "SimulationService", "simulate"]
