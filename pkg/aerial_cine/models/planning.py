import math
from dataclasses import dataclass

from aerial_cine.utils.angles import angular_distance, normalize_deg


@dataclass(frozen=True)
class ActionRegion:
    """
    Azimuth arc the drone can reach within one command cycle.

    The arc is centered on the current azimuth and its half-width is the feasible flight distance
    `s_dec + s_acc` converted to degrees on the orbit circle, capped at 180.
    Feasible distances satisfy `0 <= s_dec <= s_acc <= v_max * T`.
    """

    center_azimuth_deg: float
    half_width_deg: float
    s_dec: float
    s_acc: float
    v_max: float
    T: float
    radius: float

    def __post_init__(self):
        if not (0.0 <= self.s_dec <= self.s_acc <= self.v_max * self.T + 1e-12):
            raise ValueError(
                f"flight distances violate 0 <= s_dec <= s_acc <= v_max*T: "
                f"s_dec={self.s_dec}, s_acc={self.s_acc}, v_max*T={self.v_max * self.T}"
            )
        if not (0.0 <= self.half_width_deg <= 180.0):
            raise ValueError(f"half width must lie in [0, 180], got {self.half_width_deg}")
        object.__setattr__(self, "center_azimuth_deg", normalize_deg(self.center_azimuth_deg))

    @property
    def is_full_circle(self) -> bool:
        return self.half_width_deg >= 180.0

    @property
    def arc_length(self) -> float:
        """Total reachable arc, meters"""
        return 2.0 * math.radians(self.half_width_deg) * self.radius

    def contains(self, azimuth_deg, tol: float = 1e-9):
        """Whether an azimuth (scalar or array) lies on the arc"""
        return angular_distance(azimuth_deg, self.center_azimuth_deg) <= self.half_width_deg + tol


@dataclass(frozen=True)
class Waypoint:
    """Commanded camera placement published to flight control for one cycle"""

    azimuth_deg: float
    radius: float
    height: float
    t_command: float

    def __post_init__(self):
        object.__setattr__(self, "azimuth_deg", normalize_deg(self.azimuth_deg))
