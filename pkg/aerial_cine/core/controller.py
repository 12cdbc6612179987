"""
Camera strategies. Each controller turns the subject's motion into a camera pose per frame:
`ProposedController` orbits to the planned viewpoint, `FollowMeController` holds a fixed
world-frame offset. Both aim from the commanded position and share the same PID correction.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from logging import getLogger

import numpy as np

from aerial_cine.core.camera import aim_at
from aerial_cine.core.config import SimConfig
from aerial_cine.core.drone import (
    drift_noise,
    drift_step,
    drone_step,
    initial_drone_state,
    orbit_position,
)
from aerial_cine.core.pid import PidController
from aerial_cine.core.planner import WaypointPlanner
from aerial_cine.models.planning import Waypoint
from aerial_cine.models.sim import CameraPose, DroneState
from aerial_cine.models.skeleton import SkeletonFrame
from aerial_cine.models.viewpoint import SubjectState
from aerial_cine.types import RunMode
from aerial_cine.utils.angles import normalize_deg

logger = getLogger(__name__)

COMMAND_EPS = 1e-9
"""Slack on command-cycle timing, seconds"""


def aimed_pose(
    commanded_position,
    drift_offset,
    target_point,
    yaw_correction_deg: float = 0.0,
    pitch_correction_deg: float = 0.0,
) -> CameraPose:
    """
    Pose of the real camera: it sits at the commanded position plus drift but aims as if it were
    at the commanded position, then applies the accumulated correction.
    """
    yaw, pitch = aim_at(commanded_position, target_point)
    true_position = np.asarray(commanded_position, dtype=float) + np.asarray(drift_offset)
    return CameraPose(
        position=tuple(float(v) for v in true_position),
        yaw_deg=yaw + yaw_correction_deg,
        pitch_deg=pitch + pitch_correction_deg,
    )


def follow_me_position(centroid, offset_xy, height: float) -> np.ndarray:
    return np.array([centroid[0] + offset_xy[0], centroid[1] + offset_xy[1], height], dtype=float)


def follow_me_step(
    frame: SkeletonFrame,
    offset_xy,
    config: SimConfig,
    drift_offset=(0.0, 0.0, 0.0),
    correction_deg: tuple[float, float] = (0.0, 0.0),
) -> CameraPose:
    """
    Follow-Me camera for one frame: the horizontal offset from the subject centroid captured at
    the start is held in the world frame, at the orbit height, aimed at the centroid.
    """
    centroid = frame.centroid
    commanded = follow_me_position(centroid, offset_xy, config.height)
    return aimed_pose(commanded, drift_offset, centroid, *correction_deg)


def actual_azimuth(position, centroid_xy) -> float:
    """Azimuth of a camera position around the subject, degrees in [0, 360)"""
    return normalize_deg(
        math.degrees(math.atan2(position[1] - centroid_xy[1], position[0] - centroid_xy[0]))
    )


@dataclass(frozen=True)
class ControlOutput:
    pose: CameraPose
    """True camera pose used for imaging"""
    commanded_azimuth_deg: float
    actual_azimuth_deg: float


class BaseCameraController(ABC):
    """
    Per-run camera strategy. The runner calls `step` once per frame, then `correct` with the
    screen error measured on that frame.
    """

    mode: RunMode

    def __init__(self, config: SimConfig, rng: np.random.Generator):
        self.config = config
        self.rng = rng
        self.pid = PidController.from_config(config)
        self.logger = getLogger(self.__class__.__name__)

    @abstractmethod
    def start(self, t: float, frame: SkeletonFrame, state: SubjectState) -> None:
        """Initialize at the first frame"""
        raise NotImplementedError("Subclasses must implement start method")

    @abstractmethod
    def advance(self, t: float, frame: SkeletonFrame, state: SubjectState, dt: float) -> None:
        """Move the commanded camera and its drift forward by `dt` to time `t`"""
        raise NotImplementedError("Subclasses must implement advance method")

    @abstractmethod
    def commanded_position(self, frame: SkeletonFrame) -> np.ndarray:
        raise NotImplementedError("Subclasses must implement commanded_position method")

    @property
    @abstractmethod
    def commanded_azimuth_deg(self) -> float:
        raise NotImplementedError("Subclasses must implement commanded_azimuth_deg property")

    @property
    @abstractmethod
    def drift_offset(self) -> np.ndarray:
        raise NotImplementedError("Subclasses must implement drift_offset property")

    def step(
        self, t: float, frame: SkeletonFrame, state: SubjectState, dt: float | None
    ) -> ControlOutput:
        """Pose for the frame at `t`. `dt` is None on the first frame."""
        if dt is None:
            self.start(t, frame, state)
        else:
            self.advance(t, frame, state, dt)
        pose = aimed_pose(
            self.commanded_position(frame),
            self.drift_offset,
            frame.centroid,
            self.pid.yaw_correction_deg,
            self.pid.pitch_correction_deg,
        )
        return ControlOutput(
            pose=pose,
            commanded_azimuth_deg=self.commanded_azimuth_deg,
            actual_azimuth_deg=actual_azimuth(pose.position, frame.centroid),
        )

    def correct(self, error_px: tuple[float, float] | None, dt: float) -> None:
        if self.config.pid_enabled:
            self.pid.update(error_px, dt)


class ProposedController(BaseCameraController):
    """Orbits the subject, publishing a planned waypoint every command cycle"""

    mode: RunMode = "proposed"

    def __init__(self, config: SimConfig, rng: np.random.Generator):
        super().__init__(config, rng)
        self.planner = WaypointPlanner(config)
        self.drone: DroneState | None = None
        self.waypoint: Waypoint | None = None
        self.next_command_t = 0.0

    @property
    def waypoints(self) -> list[Waypoint]:
        return self.planner.waypoints

    def start(self, t: float, frame: SkeletonFrame, state: SubjectState) -> None:
        self.planner.reset()
        self.drone = initial_drone_state(state.centroid_xy, self.config)
        self.next_command_t = t
        self._maybe_plan(t, frame, state)

    def advance(self, t: float, frame: SkeletonFrame, state: SubjectState, dt: float) -> None:
        center = state.centroid_xy
        self.drone = drone_step(self.drone, self.waypoint, dt, self.config, center)
        self.drone = drift_noise(self.drone, dt, self.config, self.rng, center)
        self._maybe_plan(t, frame, state)

    def _maybe_plan(self, t: float, frame: SkeletonFrame, state: SubjectState) -> None:
        if t + COMMAND_EPS < self.next_command_t:
            return
        decision = self.planner.plan(frame, state, self.drone.azimuth_deg, t_command=t)
        self.waypoint = decision.waypoint
        self.next_command_t += self.config.T

    def commanded_position(self, frame: SkeletonFrame) -> np.ndarray:
        return orbit_position(frame.centroid[:2], self.drone.azimuth_deg, self.config)

    @property
    def commanded_azimuth_deg(self) -> float:
        return self.waypoint.azimuth_deg

    @property
    def drift_offset(self) -> np.ndarray:
        return np.asarray(self.drone.drift_offset)


class FollowMeController(BaseCameraController):
    """Keeps the start offset from the subject in the world frame; never orbits"""

    mode: RunMode = "follow_me"

    def __init__(self, config: SimConfig, rng: np.random.Generator):
        super().__init__(config, rng)
        self.offset_xy = np.zeros(2)
        self._drift = np.zeros(3)

    def start(self, t: float, frame: SkeletonFrame, state: SubjectState) -> None:
        start = orbit_position(state.centroid_xy, self.config.initial_azimuth_deg, self.config)
        self.offset_xy = start[:2] - np.asarray(state.centroid_xy)
        self._drift = np.zeros(3)

    def advance(self, t: float, frame: SkeletonFrame, state: SubjectState, dt: float) -> None:
        self._drift = drift_step(self._drift, dt, self.config, self.rng)

    def commanded_position(self, frame: SkeletonFrame) -> np.ndarray:
        return follow_me_position(frame.centroid, self.offset_xy, self.config.height)

    @property
    def commanded_azimuth_deg(self) -> float:
        return normalize_deg(math.degrees(math.atan2(self.offset_xy[1], self.offset_xy[0])))

    @property
    def drift_offset(self) -> np.ndarray:
        return self._drift
