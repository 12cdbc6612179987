import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from aerial_cine.errors import ClipFormatError, JointMappingError, TimeRangeError
from aerial_cine.types import JOINT_IDS, NUM_JOINTS, JointId

TIME_EPS = 1e-9
"""Slack allowed on time-range checks, in seconds"""


@dataclass(frozen=True, eq=False)
class SkeletonFrame:
    """
    One timestamped pose. `positions` is a (13, 3) array ordered like `JointId`,
    in meters, world frame (x, y on the ground plane, z up).
    """

    t: float
    positions: np.ndarray = field(repr=False)

    def __post_init__(self):
        positions = np.array(self.positions, dtype=float)
        if positions.shape != (NUM_JOINTS, 3):
            raise ClipFormatError(f"pose must have shape ({NUM_JOINTS}, 3), got {positions.shape}")
        if not np.all(np.isfinite(positions)):
            raise ClipFormatError(f"non-finite joint coordinate in frame at t={self.t}")
        if self.t < 0 or not np.isfinite(self.t):
            raise ClipFormatError(f"frame time must be finite and non-negative, got {self.t}")
        positions.setflags(write=False)
        object.__setattr__(self, "positions", positions)

    @classmethod
    def from_joints(cls, t: float, joints: dict[JointId | str, tuple[float, float, float]]):
        """Build a frame from a joint map. All 13 joints are required."""
        rows = []
        for joint in JOINT_IDS:
            value = joints.get(joint, joints.get(joint.value))
            if value is None:
                raise ClipFormatError(f"missing joint '{joint.value}'")
            rows.append(value)
        return cls(t=float(t), positions=np.array(rows, dtype=float))

    @property
    def joints(self) -> dict[JointId, np.ndarray]:
        return {joint: self.positions[i] for i, joint in enumerate(JOINT_IDS)}

    @property
    def centroid(self) -> np.ndarray:
        """Unweighted mean of the 13 joint positions"""
        return self.positions.mean(axis=0)


@dataclass(frozen=True, eq=False)
class MotionClip:
    """
    Ordered poses of one subject.
    `times` has shape (n,), `positions` has shape (n, 13, 3). Timestamps are strictly increasing.
    """

    times: np.ndarray = field(repr=False)
    positions: np.ndarray = field(repr=False)
    rate_hz: float

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        positions = np.array(self.positions, dtype=float)
        if times.ndim != 1 or len(times) < 2:
            raise ClipFormatError("a motion clip needs at least 2 frames")
        if positions.shape != (len(times), NUM_JOINTS, 3):
            raise ClipFormatError(
                f"positions must have shape ({len(times)}, {NUM_JOINTS}, 3), got {positions.shape}"
            )
        if np.any(np.diff(times) <= 0):
            bad = int(np.argmax(np.diff(times) <= 0)) + 1
            raise ClipFormatError(f"non-increasing timestamp at frame {bad}")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(positions))):
            raise ClipFormatError("motion clip contains non-finite values")
        if times[0] < 0:
            raise ClipFormatError("timestamps must be non-negative")
        if not self.rate_hz > 0:
            raise ClipFormatError(f"rate_hz must be positive, got {self.rate_hz}")
        times.setflags(write=False)
        positions.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "positions", positions)

    @classmethod
    def from_frames(cls, frames: list[SkeletonFrame], rate_hz: float) -> "MotionClip":
        return cls(
            times=np.array([f.t for f in frames]),
            positions=np.stack([f.positions for f in frames]),
            rate_hz=rate_hz,
        )

    def __len__(self) -> int:
        return len(self.times)

    def __iter__(self) -> Iterator[SkeletonFrame]:
        for i in range(len(self)):
            yield self.frame(i)

    @property
    def frames(self) -> list[SkeletonFrame]:
        return list(self)

    @property
    def start(self) -> float:
        return float(self.times[0])

    @property
    def end(self) -> float:
        return float(self.times[-1])

    @property
    def duration(self) -> float:
        return self.end - self.start

    def frame(self, index: int) -> SkeletonFrame:
        return SkeletonFrame(t=float(self.times[index]), positions=self.positions[index])

    def centroids(self) -> np.ndarray:
        """Per-frame joint centroid, shape (n, 3)"""
        return self.positions.mean(axis=1)

    def check_time(self, t: float) -> None:
        if t < self.start - TIME_EPS or t > self.end + TIME_EPS:
            raise TimeRangeError(t, self.start, self.end)

    def _bracket(self, t: float) -> tuple[int, float]:
        """Index of the left bracketing frame and the interpolation weight of the right one"""
        self.check_time(t)
        t = min(max(t, self.start), self.end)
        i = int(np.searchsorted(self.times, t, side="right")) - 1
        i = min(max(i, 0), len(self) - 2)
        t0, t1 = self.times[i], self.times[i + 1]
        return i, float((t - t0) / (t1 - t0))

    def frame_at(self, t: float) -> SkeletonFrame:
        """Pose at time `t`, linearly interpolated between bracketing frames"""
        i, w = self._bracket(t)
        if w == 0.0:
            return SkeletonFrame(t=float(t), positions=self.positions[i])
        positions = (1.0 - w) * self.positions[i] + w * self.positions[i + 1]
        return SkeletonFrame(t=float(t), positions=positions)

    def centroid_at(self, t: float) -> np.ndarray:
        i, w = self._bracket(t)
        c0 = self.positions[i].mean(axis=0)
        if w == 0.0:
            return c0
        return (1.0 - w) * c0 + w * self.positions[i + 1].mean(axis=0)


class JointMapping(BaseModel):
    """
    Maps each of the 13 target joints to a joint name in a source skeleton.
    Names are matched exactly against the source hierarchy.
    """

    names: dict[JointId, str]
    """Target joint -> source joint name"""

    model_config = ConfigDict(use_attribute_docstrings=True, frozen=True)

    @field_validator("names")
    @classmethod
    def validate_complete(cls, v: dict[JointId, str]):
        for joint in JOINT_IDS:
            if joint not in v:
                raise JointMappingError(joint.value)
            if not v[joint].strip():
                raise ValueError(f"empty source name for joint '{joint.value}'")
        return v

    @classmethod
    def cmu_default(cls) -> "JointMapping":
        """Defaults for the common CMU BVH conversion (Hips/Spine/Neck/LeftArm... naming)"""
        return cls(
            names={
                JointId.HEAD: "Head",
                JointId.SPINE_SHOULDER: "Neck",
                JointId.SPINE_BASE: "Hips",
                JointId.L_SHOULDER: "LeftArm",
                JointId.R_SHOULDER: "RightArm",
                JointId.L_ELBOW: "LeftForeArm",
                JointId.R_ELBOW: "RightForeArm",
                JointId.L_HAND: "LeftHand",
                JointId.R_HAND: "RightHand",
                JointId.L_KNEE: "LeftLeg",
                JointId.R_KNEE: "RightLeg",
                JointId.L_FOOT: "LeftFoot",
                JointId.R_FOOT: "RightFoot",
            }
        )

    @classmethod
    def from_json_file(cls, path: str | Path) -> "JointMapping":
        """Load `{"head": "Head", ...}` from a JSON file"""
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        for joint in JOINT_IDS:
            if joint.value not in raw:
                raise JointMappingError(joint.value)
        return cls(names=raw)


class AxisMap(BaseModel):
    """
    Source-to-world axis convention, written as three signed source axes, e.g. `"x,-z,y"`
    means world x = source x, world y = -source z, world z = source y.
    Must describe a proper rotation.
    """

    spec: str = "x,-z,y"
    """Comma-separated signed source axes for world x, y, z"""

    model_config = ConfigDict(use_attribute_docstrings=True, frozen=True)

    @field_validator("spec")
    @classmethod
    def validate_spec(cls, v: str):
        matrix = cls._parse(v)
        if not np.isclose(np.linalg.det(matrix), 1.0):
            raise ValueError(f"axis map '{v}' is not a proper rotation (handedness flip)")
        return v

    @staticmethod
    def _parse(spec: str) -> np.ndarray:
        parts = [p.strip().lower() for p in spec.split(",")]
        if len(parts) != 3:
            raise ValueError(f"axis map needs 3 comma-separated axes, got '{spec}'")
        matrix = np.zeros((3, 3))
        for row, part in enumerate(parts):
            sign = -1.0 if part.startswith("-") else 1.0
            axis = part.lstrip("+-")
            if axis not in ("x", "y", "z"):
                raise ValueError(f"unknown axis '{part}' in axis map '{spec}'")
            matrix[row, "xyz".index(axis)] = sign
        if sorted(np.abs(matrix).argmax(axis=1)) != [0, 1, 2]:
            raise ValueError(f"axis map '{spec}' must use each source axis exactly once")
        return matrix

    @property
    def matrix(self) -> np.ndarray:
        """3x3 signed permutation: world = matrix @ source"""
        return self._parse(self.spec)

    @classmethod
    def identity(cls) -> "AxisMap":
        return cls(spec="x,y,z")
