"""
Analytic motion generators used as test stimuli.

Every clip is built from one T-pose template (facing +y, arms along x, meters) that is rotated
about the vertical axis and translated. Generation is deterministic: no randomness is involved.
"""

from logging import getLogger

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.spatial.transform import Rotation

from aerial_cine.models.skeleton import MotionClip
from aerial_cine.types import JOINT_INDEX, JointId, SynthKind

logger = getLogger(__name__)

TPOSE_TEMPLATE = np.array(
    [
        (0.0, 0.0, 1.70),  # head
        (0.0, 0.0, 1.45),  # spine_shoulder
        (0.0, 0.0, 0.95),  # spine_base
        (-0.18, 0.0, 1.45),  # l_shoulder
        (0.18, 0.0, 1.45),  # r_shoulder
        (-0.45, 0.0, 1.45),  # l_elbow
        (0.45, 0.0, 1.45),  # r_elbow
        (-0.72, 0.0, 1.45),  # l_hand
        (0.72, 0.0, 1.45),  # r_hand
        (-0.1, 0.0, 0.5),  # l_knee
        (0.1, 0.0, 0.5),  # r_knee
        (-0.1, 0.0, 0.05),  # l_foot
        (0.1, 0.0, 0.05),  # r_foot
    ]
)
"""Standing T-pose, ordered like `JointId`. The subject faces +y; its left side is -x."""
TEMPLATE_FACING_DEG = 90.0

UPPER_ARM = 0.27
FULL_ARM = 0.54

_ARMS = (
    (JointId.L_SHOULDER, JointId.L_ELBOW, JointId.L_HAND, -1.0),
    (JointId.R_SHOULDER, JointId.R_ELBOW, JointId.R_HAND, 1.0),
)


class SynthParams(BaseModel):
    """Knobs for the synthetic motions. Kinds ignore the fields they do not use."""

    speed: float = Field(default=1.0, ge=0.0)
    """Walking speed for `straight_walk` and the walking half of `mixed`, m/s"""
    heading_deg: float = 0.0
    """Walking direction, degrees counter-clockwise from +x"""
    start_xy: tuple[float, float] = (0.0, 0.0)
    """Start position; the circle center for `circle_walk`"""
    radius: float = Field(default=2.0, gt=0.0)
    """Circle radius for `circle_walk`, meters"""
    period: float = Field(default=8.0, gt=0.0)
    """Time for one lap of `circle_walk`, seconds"""
    wave_hz: float = Field(default=0.5, gt=0.0)
    """Arm waving frequency"""
    wave_amplitude_deg: float = Field(default=60.0, ge=0.0, le=90.0)
    """Peak arm elevation above horizontal while waving"""
    spin_deg_per_s: float = 90.0
    """Turning rate for `pirouette`, positive = counter-clockwise"""

    model_config = ConfigDict(use_attribute_docstrings=True, frozen=True)


def _arm_pose(arm_angle_rad: np.ndarray) -> np.ndarray:
    """T-pose template per frame with both arms raised by `arm_angle_rad` in the body's x-z plane"""
    n = len(arm_angle_rad)
    poses = np.repeat(TPOSE_TEMPLATE[None, :, :], n, axis=0)
    direction = np.stack(
        [np.cos(arm_angle_rad), np.zeros(n), np.sin(arm_angle_rad)], axis=1
    )  # (n, 3)
    for shoulder, elbow, hand, side in _ARMS:
        base = TPOSE_TEMPLATE[JOINT_INDEX[shoulder]]
        reach = direction * np.array([side, 1.0, 1.0])
        poses[:, JOINT_INDEX[elbow]] = base + UPPER_ARM * reach
        poses[:, JOINT_INDEX[hand]] = base + FULL_ARM * reach
    return poses


def _place(poses: np.ndarray, facing_deg: np.ndarray, offset_xy: np.ndarray) -> np.ndarray:
    """Rotate each pose about the vertical axis to face `facing_deg`, then translate horizontally"""
    mats = Rotation.from_euler("z", facing_deg - TEMPLATE_FACING_DEG, degrees=True).as_matrix()
    placed = np.einsum("nij,nkj->nki", mats, poses)
    placed[:, :, 0] += offset_xy[:, 0, None]
    placed[:, :, 1] += offset_xy[:, 1, None]
    return placed


def _wave_angle(t: np.ndarray, params: SynthParams) -> np.ndarray:
    amplitude = np.radians(params.wave_amplitude_deg)
    return amplitude * np.abs(np.sin(2.0 * np.pi * params.wave_hz * t))


def synth_clip(
    kind: SynthKind,
    params: SynthParams | None = None,
    duration: float = 10.0,
    rate: float = 30.0,
) -> MotionClip:
    """
    Generate an analytic motion clip.

    Args:
        kind: One of `straight_walk`, `circle_walk`, `in_place_wave`, `static_tpose`,
            `pirouette`, `mixed`
        params: Motion parameters. Defaults to `SynthParams()`.
        duration: Clip length, seconds. Must be positive.
        rate: Frame rate, Hz. Frames are spaced so the last one lands exactly on `duration`.

    Returns:
        `MotionClip` starting at t = 0
    """
    if not duration > 0:
        raise ValueError(f"duration must be positive, got {duration}")
    if not rate > 0:
        raise ValueError(f"rate must be positive, got {rate}")
    params = params or SynthParams()

    n = max(int(round(duration * rate)) + 1, 2)
    t = np.linspace(0.0, duration, n)
    start = np.asarray(params.start_xy, dtype=float)
    heading = np.radians(params.heading_deg)
    walk_dir = np.array([np.cos(heading), np.sin(heading)])
    still = np.zeros(n)
    facing = np.full(n, params.heading_deg)
    offset = np.tile(start, (n, 1))

    match kind:
        case "static_tpose":
            arms = still
        case "straight_walk":
            arms = still
            offset = start + np.outer(params.speed * t, walk_dir)
        case "circle_walk":
            arms = still
            theta = 2.0 * np.pi * t / params.period
            offset = start + params.radius * np.stack([np.cos(theta), np.sin(theta)], axis=1)
            facing = np.degrees(theta) + 90.0
        case "in_place_wave":
            arms = _wave_angle(t, params)
        case "pirouette":
            arms = still
            facing = params.heading_deg + params.spin_deg_per_s * t
        case "mixed":
            half = duration / 2.0
            walked = np.minimum(t, half)
            offset = start + np.outer(params.speed * walked, walk_dir)
            arms = np.where(t > half, _wave_angle(t - half, params), 0.0)
        case _:
            raise ValueError(f"unknown synthetic motion kind '{kind}'")

    positions = _place(_arm_pose(arms), facing, offset)
    logger.debug(f"Synthesized {kind}: {n} frames over {duration}s")
    return MotionClip(times=t, positions=positions, rate_hz=(n - 1) / duration)
