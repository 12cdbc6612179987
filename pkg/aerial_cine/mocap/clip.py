from logging import getLogger
from typing import IO, Iterable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from scipy.interpolate import interp1d

from aerial_cine.errors import ClipFormatError, JointMappingError
from aerial_cine.mocap.bvh import forward_kinematics
from aerial_cine.models.bvh import BvhDocument
from aerial_cine.models.skeleton import AxisMap, JointMapping, MotionClip
from aerial_cine.types import JOINT_IDS, JointId

logger = getLogger(__name__)


class SkeletonRecord(BaseModel):
    """One line of the canonical skeleton JSONL format (meters, z-up)"""

    t: float = Field(ge=0.0, allow_inf_nan=False)
    """Timestamp, seconds"""
    joints: dict[str, tuple[float, float, float]]
    """Joint name -> [x, y, z]"""

    model_config = ConfigDict(use_attribute_docstrings=True, extra="forbid")

    @field_validator("joints")
    @classmethod
    def validate_joints(cls, v: dict[str, tuple[float, float, float]]):
        known = {joint.value for joint in JOINT_IDS}
        unknown = sorted(set(v) - known)
        if unknown:
            raise ValueError(f"unknown joint '{unknown[0]}'")
        for name, xyz in v.items():
            if not all(np.isfinite(xyz)):
                raise ValueError(f"non-finite coordinate for joint '{name}'")
        return v


def _resolve_mapping(mapping: JointMapping | dict[str, str] | None) -> dict[JointId, str]:
    if mapping is None:
        return dict(JointMapping.cmu_default().names)
    if isinstance(mapping, JointMapping):
        return dict(mapping.names)
    resolved = {}
    for joint in JOINT_IDS:
        name = mapping.get(joint, mapping.get(joint.value))
        if not name:
            raise JointMappingError(joint.value)
        resolved[joint] = name
    return resolved


def to_clip(
    doc: BvhDocument,
    scale: float = 1.0,
    axis_map: AxisMap | None = None,
    mapping: JointMapping | dict[str, str] | None = None,
) -> MotionClip:
    """
    Convert a BVH document into a 13-joint clip in world meters, z-up.

    Args:
        doc: Parsed BVH document
        scale: Meters per source unit
        axis_map: Source-to-world axis convention. Defaults to y-up sources (`"x,-z,y"`).
        mapping: Target joint -> source joint name. Defaults to CMU naming.

    Raises:
        JointMappingError: a required joint is unmapped or its source is not in the hierarchy
        ClipFormatError: non-finite values after FK, or fewer than 2 frames
    """
    if not (np.isfinite(scale) and scale > 0):
        raise ValueError(f"scale must be a positive finite number, got {scale}")
    names = _resolve_mapping(mapping)
    axis_map = axis_map or AxisMap()
    matrix = axis_map.matrix
    if doc.frame_count < 2:
        raise ClipFormatError(f"a motion clip needs at least 2 frames, got {doc.frame_count}")

    source = forward_kinematics(doc)
    n = doc.frame_count
    positions = np.empty((n, len(JOINT_IDS), 3))
    for j, joint in enumerate(JOINT_IDS):
        src_name = names[joint]
        if src_name not in source:
            raise JointMappingError(
                joint.value,
                f"source joint '{src_name}' mapped to '{joint.value}' is not in the hierarchy",
            )
        src = source[src_name]
        # signed permutation applied column by column keeps the conversion exact
        for row in range(3):
            col = int(np.abs(matrix[row]).argmax())
            positions[:, j, row] = src[:, col] if matrix[row, col] > 0 else -src[:, col]
    positions = positions * scale
    if not np.all(np.isfinite(positions)):
        raise ClipFormatError("non-finite joint position after forward kinematics")

    times = np.arange(n) * doc.frame_time
    logger.info(f"Converted BVH: {n} frames at {1.0 / doc.frame_time:.2f} Hz, scale={scale}")
    return MotionClip(times=times, positions=positions, rate_hz=1.0 / doc.frame_time)


def load_jsonl(stream: IO[str] | Iterable[str]) -> MotionClip:
    """
    Read the canonical skeleton JSONL format: one `{"t": ..., "joints": {...}}` object per line.
    Blank lines are skipped. The rate is inferred from the median frame spacing.

    Raises:
        ClipFormatError: malformed line, missing joint, or non-increasing timestamps;
            the message carries the 1-based line number
    """
    times, poses = [], []
    for line_no, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            record = SkeletonRecord.model_validate_json(line)
        except ValidationError as e:
            detail = e.errors()[0]
            where = ".".join(str(p) for p in detail["loc"])
            raise ClipFormatError(
                f"malformed record ({where}: {detail['msg']})" if where else detail["msg"], line_no
            ) from None
        for joint in JOINT_IDS:
            if joint.value not in record.joints:
                raise ClipFormatError(f"missing joint '{joint.value}'", line_no)
        if times and record.t <= times[-1]:
            raise ClipFormatError(
                f"non-increasing timestamp {record.t} after {times[-1]}", line_no
            )
        times.append(record.t)
        poses.append([record.joints[joint.value] for joint in JOINT_IDS])

    if len(times) < 2:
        raise ClipFormatError(f"a motion clip needs at least 2 frames, got {len(times)}")
    rate_hz = 1.0 / float(np.median(np.diff(times)))
    return MotionClip(times=np.array(times), positions=np.array(poses), rate_hz=rate_hz)


def dump_jsonl(clip: MotionClip, stream: IO[str]) -> int:
    """Write `clip` in the canonical JSONL format. Returns the number of lines written."""
    for frame in clip:
        record = SkeletonRecord(
            t=frame.t,
            joints={joint.value: tuple(frame.positions[i]) for i, joint in enumerate(JOINT_IDS)},
        )
        stream.write(record.model_dump_json() + "\n")
    return len(clip)


def resample(clip: MotionClip, target_hz: float) -> MotionClip:
    """
    Linearly interpolate joint positions onto a uniform grid close to `target_hz`.
    First and last timestamps are kept; the spacing is adjusted so the grid ends exactly on
    the last timestamp, and the returned `rate_hz` is the actual grid rate.
    """
    if not target_hz > 0:
        raise ValueError(f"target_hz must be positive, got {target_hz}")
    n = max(int(round(clip.duration * target_hz)) + 1, 2)
    times = np.linspace(clip.start, clip.end, n)
    interpolate = interp1d(clip.times, clip.positions, axis=0, assume_sorted=True, copy=False)
    positions = interpolate(times)
    return MotionClip(times=times, positions=positions, rate_hz=(n - 1) / clip.duration)
