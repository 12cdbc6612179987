import math
from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from aerial_cine.types import DescriptorKind, RunMode, Vec3


class Intrinsics(BaseModel):
    """Pinhole camera with square pixels; the principal point is the image center"""

    width_px: int = Field(default=1280, gt=0)
    height_px: int = Field(default=720, gt=0)
    hfov_deg: float = Field(default=66.0, gt=0.0, lt=180.0)
    """Horizontal field of view. The vertical one follows from the aspect ratio."""

    model_config = ConfigDict(use_attribute_docstrings=True, frozen=True)

    @property
    def focal_px(self) -> float:
        return (self.width_px / 2.0) / math.tan(math.radians(self.hfov_deg) / 2.0)

    @property
    def vfov_deg(self) -> float:
        return math.degrees(2.0 * math.atan((self.height_px / 2.0) / self.focal_px))

    @property
    def center(self) -> tuple[float, float]:
        return self.width_px / 2.0, self.height_px / 2.0


@dataclass(frozen=True)
class CameraPose:
    """Camera position in world meters plus yaw (CCW from +x) and pitch (up positive), degrees"""

    position: Vec3
    yaw_deg: float
    pitch_deg: float

    @property
    def forward(self) -> np.ndarray:
        yaw, pitch = math.radians(self.yaw_deg), math.radians(self.pitch_deg)
        return np.array(
            [math.cos(pitch) * math.cos(yaw), math.cos(pitch) * math.sin(yaw), math.sin(pitch)]
        )

    @property
    def right(self) -> np.ndarray:
        yaw = math.radians(self.yaw_deg)
        return np.array([math.sin(yaw), -math.cos(yaw), 0.0])

    @property
    def up(self) -> np.ndarray:
        return np.cross(self.right, self.forward)


@dataclass(frozen=True)
class DroneState:
    """
    Drone on the orbit circle.
    `azimuth_deg` and `arc_velocity` describe the commanded motion; `true_position` adds drift.
    Camera orientation is not kept here: it is aimed afresh every frame, see `aimed_pose`.
    """

    azimuth_deg: float
    arc_velocity: float
    """Signed speed along the circle, m/s. Positive = counter-clockwise."""
    true_position: Vec3
    drift_offset: Vec3 = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if not all(math.isfinite(v) for v in self.true_position):
            raise ValueError("true_position must be finite")


class PidGains(BaseModel):
    """Gains for one axis, in degrees per unit of normalized image error"""

    kp: float = Field(default=8.0, ge=0.0)
    ki: float = Field(default=0.5, ge=0.0)
    kd: float = Field(default=1.0, ge=0.0)

    model_config = ConfigDict(use_attribute_docstrings=True, frozen=True)


@dataclass
class PidState:
    """Two-axis (yaw, pitch) PID controller state driven by normalized image error"""

    yaw: PidGains = field(default_factory=PidGains)
    pitch: PidGains = field(default_factory=PidGains)
    image_size: tuple[int, int] = (1280, 720)
    clamp_deg: float = 10.0
    """Output limit per cycle, degrees"""
    integral_limit: float = 0.02
    """Anti-windup bound on each integral accumulator (normalized error * s)"""
    integral: list[float] = field(default_factory=lambda: [0.0, 0.0])
    prev_error: tuple[float, float] | None = None

    def __post_init__(self):
        if self.clamp_deg < 0 or self.integral_limit < 0:
            raise ValueError("clamp and integral limit must be non-negative")

    def reset(self) -> None:
        self.integral = [0.0, 0.0]
        self.prev_error = None


@dataclass(frozen=True)
class FrameRecord:
    """Per-frame simulation outcome. `error_px` is None when the subject is not visible."""

    t: float
    camera: CameraPose
    error_px: tuple[float, float] | None
    width_px: int
    actual_azimuth_deg: float
    globalopt_azimuth_deg: float
    waypoint_azimuth_deg: float
    mode: RunMode
    visible: bool
    active_descriptor: DescriptorKind = "projection_area"

    def __post_init__(self):
        if self.visible != (self.error_px is not None):
            raise ValueError("error_px must be present exactly when the subject is visible")
