from pydantic import BaseModel, ConfigDict, Field, model_validator

from aerial_cine.models.sim import Intrinsics, PidGains


class SimConfig(BaseModel):
    """
    Every tunable of planning, flight, camera and PID in one flat model.
    Field names double as the keys of the `KEY=value` config file.
    """

    # planning
    v_max: float = Field(default=2.0, gt=0.0)
    """Maximum speed along the orbit, m/s"""
    T: float = Field(default=0.5, gt=0.0)
    """Command cycle: a new waypoint is published every T seconds"""
    alpha: float = Field(default=0.6, ge=0.0, le=1.0)
    """Waypoint smoothing factor. 0 freezes the waypoint, 1 jumps straight to the local optimum."""
    speed_threshold: float = Field(default=0.2, gt=0.0)
    """Subject speed (m/s) at or above which the velocity-perpendicular descriptor is used"""
    hysteresis: float = Field(default=0.0, ge=0.0, lt=1.0)
    """Fractional band around `speed_threshold` that keeps the previous descriptor. 0 disables."""
    velocity_window: float = Field(default=0.25, gt=0.0)
    """Window for the centroid displacement that estimates subject velocity, seconds"""
    n_samples: int = Field(default=360, ge=4)
    """Azimuth samples per quality map"""

    # geometry
    radius: float = Field(default=2.5, gt=0.0)
    """Orbit radius around the subject centroid, meters"""
    height: float = Field(default=2.2, gt=0.0)
    """Camera height above the ground plane, meters"""
    initial_azimuth_deg: float = 180.0
    """Camera start azimuth, both modes"""

    # dynamics
    a_acc: float = Field(default=2.0, gt=0.0)
    """Acceleration limit, m/s^2"""
    a_dec: float = Field(default=1.5, gt=0.0)
    """Deceleration limit, m/s^2. May differ from `a_acc`."""
    sim_rate: float = Field(default=30.0, gt=0.0)
    """Simulation and recording rate, Hz"""

    # drift
    drift_sigma: float = Field(default=0.3, ge=0.0)
    """Stationary standard deviation of the position drift per axis, meters. 0 disables drift."""
    drift_tau: float = Field(default=5.0, gt=0.0)
    """Drift correlation time, seconds"""
    rng_seed: int = 0
    """Seed of the drift noise generator"""

    # camera
    width_px: int = Field(default=1280, gt=0)
    height_px: int = Field(default=720, gt=0)
    hfov_deg: float = Field(default=66.0, gt=0.0, lt=180.0)
    """Horizontal field of view, degrees"""

    # PID
    pid_enabled: bool = True
    """Apply the composition correction on top of geometric aiming"""
    kp_yaw: float = Field(default=8.0, ge=0.0)
    ki_yaw: float = Field(default=0.5, ge=0.0)
    kd_yaw: float = Field(default=1.0, ge=0.0)
    kp_pitch: float = Field(default=8.0, ge=0.0)
    ki_pitch: float = Field(default=0.5, ge=0.0)
    kd_pitch: float = Field(default=1.0, ge=0.0)
    pid_clamp_deg: float = Field(default=10.0, ge=0.0)
    """Largest orientation correction per control cycle, degrees"""
    pid_integral_limit: float = Field(default=0.02, ge=0.0)
    """Anti-windup bound on each integral accumulator, normalized error * seconds"""
    initial_yaw_offset_deg: float = Field(default=0.0, ge=-90.0, le=90.0)
    """Yaw error the camera starts with, degrees. Used to exercise the composition correction."""
    initial_pitch_offset_deg: float = Field(default=0.0, ge=-60.0, le=60.0)
    """Pitch error the camera starts with, degrees"""

    model_config = ConfigDict(use_attribute_docstrings=True, extra="forbid", frozen=True)

    @model_validator(mode="after")
    def check_rates(self):
        if self.T < 1.0 / self.sim_rate:
            raise ValueError(
                f"T={self.T}s is shorter than one simulation step (1/{self.sim_rate}s)"
            )
        return self

    @property
    def dt(self) -> float:
        return 1.0 / self.sim_rate

    @property
    def intrinsics(self) -> Intrinsics:
        return Intrinsics(width_px=self.width_px, height_px=self.height_px, hfov_deg=self.hfov_deg)

    @property
    def pid_gains(self) -> tuple[PidGains, PidGains]:
        """(yaw, pitch) gains"""
        return (
            PidGains(kp=self.kp_yaw, ki=self.ki_yaw, kd=self.kd_yaw),
            PidGains(kp=self.kp_pitch, ki=self.ki_pitch, kd=self.kd_pitch),
        )
