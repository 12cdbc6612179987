"""
Viewpoint quality over the subject-centered azimuth circle.

Two descriptors score a camera azimuth: the velocity-perpendicular descriptor (moving subject,
best seen side-on) and the projection-area descriptor (slow subject, best seen where the
projected skeleton spreads the most). `quality_map` picks one per frame by subject speed.
"""

from logging import getLogger
from pathlib import Path

import numpy as np
import pandas as pd

from aerial_cine.errors import DescriptorError
from aerial_cine.models.skeleton import TIME_EPS, MotionClip, SkeletonFrame
from aerial_cine.models.viewpoint import QualityMap, SubjectState
from aerial_cine.types import DescriptorKind
from aerial_cine.utils.angles import angular_distance, wrap90
from aerial_cine.utils.export import write_csv

logger = getLogger(__name__)

DEGENERATE_SPAN = 1e-12
"""Raw projection-area maps whose max - min is at or below this are treated as flat"""
DISTANCE_DECIMALS = 9


def subject_state(
    clip: MotionClip, t: float, window: float, forward: bool = False
) -> SubjectState:
    """
    Horizontal centroid and velocity of the subject at time `t`.

    Args:
        clip: Source motion
        t: Query time, seconds
        window: Displacement window, seconds. Must be positive.
        forward: Measure the displacement over `[t, t + window]` instead of `[t - window, t]`.
            Useful for the first frames of a clip.

    Raises:
        TimeRangeError: `t` or the other window end lies outside the clip
    """
    if not window > 0:
        raise ValueError(f"window must be positive, got {window}")
    now = clip.centroid_at(t)
    if forward:
        later = clip.centroid_at(t + window)
        velocity = (later[:2] - now[:2]) / window
    else:
        earlier = clip.centroid_at(t - window)
        velocity = (now[:2] - earlier[:2]) / window
    return SubjectState(
        centroid_xy=(float(now[0]), float(now[1])),
        centroid_z=float(now[2]),
        velocity_xy=(float(velocity[0]), float(velocity[1])),
        window=window,
    )


def clip_subject_state(clip: MotionClip, t: float, window: float) -> SubjectState:
    """
    `subject_state` for any time inside the clip: backward window where the clip allows it,
    forward near the start, and the longest available window on clips shorter than that.
    """
    if t - window >= clip.start - TIME_EPS:
        return subject_state(clip, t, window)
    if t + window <= clip.end + TIME_EPS:
        return subject_state(clip, t, window, forward=True)
    back, ahead = t - clip.start, clip.end - t
    if back >= ahead:
        return subject_state(clip, t, back)
    return subject_state(clip, t, ahead, forward=True)


def q_velocity_perp(azimuth_deg, velocity_xy):
    """
    Triangular quality peaking at 1 on both sides perpendicular to the motion and falling to 0
    when looking along it. Accepts a scalar or an array of azimuths.

    Raises:
        DescriptorError: zero velocity
    """
    vx, vy = float(velocity_xy[0]), float(velocity_xy[1])
    if vx == 0.0 and vy == 0.0:
        raise DescriptorError("velocity-perpendicular descriptor is undefined for zero velocity")
    phi = np.degrees(np.arctan2(vy, vx))
    quality = 1.0 - np.abs(wrap90(np.asarray(azimuth_deg, dtype=float) - (phi + 90.0))) / 90.0
    return float(quality) if np.ndim(quality) == 0 else quality


def q_projection_area(azimuth_deg, frame: SkeletonFrame | np.ndarray):
    """
    Scatter of the skeleton projected orthographically along the horizontal viewing direction.

    Joints are taken relative to their centroid, then projected onto the plane spanned by the
    horizontal axis perpendicular to the viewing direction and world z. The score is
    `var(u) + var(v)` (population variance), m^2.
    Accepts a scalar or an array of azimuths.
    """
    positions = frame.positions if isinstance(frame, SkeletonFrame) else np.asarray(frame)
    positions = positions - positions.mean(axis=0)
    theta = np.radians(np.atleast_1d(np.asarray(azimuth_deg, dtype=float)))
    x, y, z = positions[:, 0], positions[:, 1], positions[:, 2]
    u = -np.outer(np.sin(theta), x) + np.outer(np.cos(theta), y)  # (azimuths, joints)
    score = u.var(axis=1) + z.var()
    return float(score[0]) if np.ndim(azimuth_deg) == 0 else score


def select_descriptor(
    speed: float,
    threshold_mps: float,
    previous: DescriptorKind | None = None,
    hysteresis: float = 0.0,
) -> DescriptorKind:
    """
    Speed-threshold rule. With `hysteresis > 0` the threshold moves by that fraction away from
    the previously active descriptor, so small speed jitter does not flip the choice.
    """
    threshold = threshold_mps
    if hysteresis > 0 and previous == "velocity_perp":
        threshold = threshold_mps * (1.0 - hysteresis)
    elif hysteresis > 0 and previous == "projection_area":
        threshold = threshold_mps * (1.0 + hysteresis)
    if speed > 0 and speed >= threshold:
        return "velocity_perp"
    return "projection_area"


def quality_map(
    frame: SkeletonFrame,
    state: SubjectState,
    threshold_mps: float,
    n_samples: int = 360,
    previous_descriptor: DescriptorKind | None = None,
    hysteresis: float = 0.0,
) -> QualityMap:
    """
    Normalized viewpoint quality at azimuths `k * 360 / n_samples`.

    Below the speed threshold the projection-area descriptor is min-max normalized over the
    samples; a flat raw map becomes uniformly 1.0. At or above it the velocity-perpendicular
    descriptor is used as is.
    """
    if n_samples < 4:
        raise ValueError(f"n_samples must be at least 4, got {n_samples}")
    azimuths = np.arange(n_samples) * (360.0 / n_samples)
    descriptor = select_descriptor(state.speed, threshold_mps, previous_descriptor, hysteresis)

    if descriptor == "velocity_perp":
        return QualityMap(q_velocity_perp(azimuths, state.velocity_xy), descriptor)

    raw = q_projection_area(azimuths, frame)
    low, span = raw.min(), raw.max() - raw.min()
    if span <= DEGENERATE_SPAN:
        logger.warning(f"Flat projection-area map at t={frame.t:.3f}s, using a uniform map")
        return QualityMap(np.ones(n_samples), descriptor)
    return QualityMap((raw - low) / span, descriptor)


def global_optimum(quality: QualityMap, current_azimuth_deg: float) -> float:
    """
    Best sampled azimuth. Ties go to the maximizer nearest `current_azimuth_deg`
    (wrap-around distance), then to the smaller azimuth.
    """
    candidates = quality.maximizers()
    azimuths = quality.azimuths[candidates]
    distance = np.round(angular_distance(azimuths, current_azimuth_deg), DISTANCE_DECIMALS)
    best = np.lexsort((azimuths, distance))[0]
    return float(azimuths[best])


def quality_map_frame(quality: QualityMap) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "azimuth_deg": quality.azimuths,
            "quality": quality.values,
            "active_descriptor": quality.active_descriptor,
        }
    )


def export_quality_map(quality: QualityMap, path: str | Path) -> Path:
    """Write `azimuth_deg, quality, active_descriptor` rows, one per sample"""
    return write_csv(quality_map_frame(quality), path)
