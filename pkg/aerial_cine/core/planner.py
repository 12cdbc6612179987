"""
Waypoint planning on the orbit circle: reachable arc per command cycle, hill-climb to the local
optimum inside it, and exponential smoothing of the published waypoint.
"""

import math
from dataclasses import dataclass
from logging import getLogger
from pathlib import Path
from typing import Sequence

import pandas as pd

from aerial_cine.core.config import SimConfig
from aerial_cine.core.viewpoint import quality_map
from aerial_cine.models.planning import ActionRegion, Waypoint
from aerial_cine.models.skeleton import SkeletonFrame
from aerial_cine.models.viewpoint import QualityMap, SubjectState
from aerial_cine.types import DescriptorKind
from aerial_cine.utils.angles import normalize_deg, wrap180
from aerial_cine.utils.export import write_csv

logger = getLogger(__name__)


def action_region(current_azimuth: float, v_max: float, T: float, radius: float) -> ActionRegion:
    """
    Arc reachable within one command cycle, centered on `current_azimuth`.

    Both flight distances are `v_max * T / 2`; their sum, converted to degrees on the orbit,
    is the half-width on each side (capped at 180).
    """
    if v_max < 0 or not T > 0 or not radius > 0:
        raise ValueError(f"need v_max >= 0, T > 0, radius > 0; got {v_max}, {T}, {radius}")
    s_dec = s_acc = 0.5 * v_max * T
    half_width = min(math.degrees((s_dec + s_acc) / radius), 180.0)
    return ActionRegion(
        center_azimuth_deg=current_azimuth,
        half_width_deg=half_width,
        s_dec=s_dec,
        s_acc=s_acc,
        v_max=v_max,
        T=T,
        radius=radius,
    )


def local_search(quality: QualityMap, region: ActionRegion, start_azimuth: float) -> float:
    """
    Discrete hill-climb from the sample nearest `start_azimuth`.

    Each step moves one sample toward the strictly better in-region neighbor; when both
    neighbors are equally better the climb goes to the lower sample index. Stops at a sample
    with no strictly better in-region neighbor.

    Returns:
        Azimuth of the final sample, or `start_azimuth` itself when the region is too narrow to
        contain the start sample or its inward neighbor
    """
    n = quality.n_samples
    values = quality.values
    inside = region.contains(quality.azimuths)
    i = quality.index_of(start_azimuth)
    if not inside[i]:
        step = 1 if wrap180(region.center_azimuth_deg - quality.azimuth_of(i)) > 0 else -1
        i = (i + step) % n
        if not inside[i]:
            return normalize_deg(start_azimuth)

    for _ in range(n):
        best, best_value = None, values[i]
        for j in sorted(((i - 1) % n, (i + 1) % n)):
            if inside[j] and values[j] > best_value:
                best, best_value = j, values[j]
        if best is None:
            break
        i = best
    return quality.azimuth_of(i)


def smooth(prev_azimuth: float, target_azimuth: float, alpha: float) -> float:
    """`prev + alpha * wrap180(target - prev)`, renormalized into [0, 360)"""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 0.0:
        return normalize_deg(prev_azimuth)
    if alpha == 1.0:
        return normalize_deg(target_azimuth)
    return normalize_deg(prev_azimuth + alpha * wrap180(target_azimuth - prev_azimuth))


def limit_step(prev_azimuth: float, target_azimuth: float, max_step_deg: float) -> float:
    """`target_azimuth` pulled back along the shorter arc to within `max_step_deg` of `prev`"""
    offset = wrap180(target_azimuth - prev_azimuth)
    if abs(offset) <= max_step_deg:
        return normalize_deg(target_azimuth)
    return normalize_deg(prev_azimuth + math.copysign(max_step_deg, offset))


@dataclass(frozen=True)
class PlanDecision:
    """Everything one planning cycle looked at, for tracing"""

    waypoint: Waypoint
    quality: QualityMap
    region: ActionRegion
    local_optimum_deg: float


def plan_cycle(
    frame: SkeletonFrame,
    state: SubjectState,
    drone_azimuth: float,
    prev_waypoint: Waypoint | None,
    config: SimConfig,
    t_command: float = 0.0,
    previous_descriptor: DescriptorKind | None = None,
) -> PlanDecision:
    quality = quality_map(
        frame,
        state,
        config.speed_threshold,
        config.n_samples,
        previous_descriptor=previous_descriptor,
        hysteresis=config.hysteresis,
    )
    region = action_region(drone_azimuth, config.v_max, config.T, config.radius)
    local = local_search(quality, region, drone_azimuth)
    prev = prev_waypoint.azimuth_deg if prev_waypoint is not None else drone_azimuth
    # at most one region half-width plus a bin away from the last waypoint, wherever the drone is
    target = limit_step(prev, local, region.half_width_deg + 360.0 / quality.n_samples)
    waypoint = Waypoint(
        azimuth_deg=smooth(prev, target, config.alpha),
        radius=config.radius,
        height=config.height,
        t_command=t_command,
    )
    logger.debug(
        f"t={t_command:.3f}s {quality.active_descriptor}: drone={drone_azimuth:.2f} "
        f"local={local:.2f} waypoint={waypoint.azimuth_deg:.2f}"
    )
    return PlanDecision(waypoint, quality, region, local)


def plan_step(
    frame: SkeletonFrame,
    state: SubjectState,
    drone_azimuth: float,
    prev_waypoint: Waypoint | None,
    config: SimConfig,
    t_command: float = 0.0,
) -> Waypoint:
    """
    One command cycle: quality map, action region around the drone, local optimum inside it,
    then smoothing against the previous waypoint (the drone azimuth when there is none).
    """
    return plan_cycle(frame, state, drone_azimuth, prev_waypoint, config, t_command).waypoint


class WaypointPlanner:
    """Keeps the previous waypoint and descriptor between command cycles"""

    def __init__(self, config: SimConfig):
        self.config = config
        self.logger = getLogger(self.__class__.__name__)
        self.waypoints: list[Waypoint] = []
        self.last_descriptor: DescriptorKind | None = None

    @property
    def last_waypoint(self) -> Waypoint | None:
        return self.waypoints[-1] if self.waypoints else None

    def reset(self) -> None:
        self.waypoints = []
        self.last_descriptor = None

    def plan(
        self, frame: SkeletonFrame, state: SubjectState, drone_azimuth: float, t_command: float
    ) -> PlanDecision:
        decision = plan_cycle(
            frame,
            state,
            drone_azimuth,
            self.last_waypoint,
            self.config,
            t_command=t_command,
            previous_descriptor=self.last_descriptor,
        )
        if self.last_descriptor and decision.quality.active_descriptor != self.last_descriptor:
            self.logger.debug(
                f"Descriptor switched to {decision.quality.active_descriptor} at t={t_command:.3f}s"
            )
        self.last_descriptor = decision.quality.active_descriptor
        self.waypoints.append(decision.waypoint)
        return decision


def export_waypoints(waypoints: Sequence[Waypoint], path: str | Path) -> Path:
    """Write `t_command, azimuth_deg, radius_m, height_m` rows"""
    frame = pd.DataFrame(
        [(w.t_command, w.azimuth_deg, w.radius, w.height) for w in waypoints],
        columns=["t_command", "azimuth_deg", "radius_m", "height_m"],
    )
    return write_csv(frame, path)
