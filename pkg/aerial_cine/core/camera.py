"""Pinhole camera: aiming, projection and the composition error fed to the PID loop."""

import math

import numpy as np

from aerial_cine.models.sim import CameraPose, Intrinsics
from aerial_cine.models.skeleton import SkeletonFrame


def aim_at(camera_position, target_point, current_yaw_deg: float = 0.0) -> tuple[float, float]:
    """
    Yaw (CCW from +x) and pitch (up positive) that put `target_point` on the optical axis.
    A target straight above or below gives pitch +-90 and keeps `current_yaw_deg`.
    """
    dx, dy, dz = np.asarray(target_point, dtype=float) - np.asarray(camera_position, dtype=float)
    horizontal = math.hypot(dx, dy)
    if horizontal == 0.0:
        if dz == 0.0:
            raise ValueError("camera and target coincide")
        return current_yaw_deg, math.copysign(90.0, dz)
    return math.degrees(math.atan2(dy, dx)), math.degrees(math.atan2(dz, horizontal))


def project(point, pose: CameraPose, intrinsics: Intrinsics) -> tuple[float, float] | None:
    """
    Pixel coordinates `(u, v)` of a world point, `v` growing downward.
    Returns None when the point is at or behind the camera plane.
    """
    d = np.asarray(point, dtype=float) - np.asarray(pose.position, dtype=float)
    depth = float(d @ pose.forward)
    if depth <= 0.0:
        return None
    f = intrinsics.focal_px
    cx, cy = intrinsics.center
    return cx + f * float(d @ pose.right) / depth, cy - f * float(d @ pose.up) / depth


def screen_error(
    frame: SkeletonFrame, pose: CameraPose, intrinsics: Intrinsics
) -> tuple[float, float] | None:
    """
    Offset `(u - W/2, v - H/2)` of the projected joint centroid from the image center, pixels,
    or None when it is behind the camera. A subject counter-clockwise of the optical axis (the
    camera yawed short of it) lands left of center with negative e_x; turning the camera past it
    makes e_x positive.
    """
    uv = project(frame.centroid, pose, intrinsics)
    if uv is None:
        return None
    cx, cy = intrinsics.center
    return uv[0] - cx, uv[1] - cy
