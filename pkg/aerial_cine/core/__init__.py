from aerial_cine.core.camera import aim_at, project, screen_error
from aerial_cine.core.config import SimConfig
from aerial_cine.core.controller import (
    BaseCameraController,
    ControlOutput,
    FollowMeController,
    ProposedController,
    follow_me_step,
)
from aerial_cine.core.drone import (
    braking_speed,
    drift_noise,
    drift_step,
    drone_step,
    orbit_position,
)
from aerial_cine.core.metrics import (
    aggregate,
    compare,
    merge_reports,
    screen_error_ratio,
    viewpoint_error,
)
from aerial_cine.core.pid import PidController, pid_update
from aerial_cine.core.planner import (
    PlanDecision,
    WaypointPlanner,
    action_region,
    export_waypoints,
    limit_step,
    local_search,
    plan_step,
    smooth,
)
from aerial_cine.core.viewpoint import (
    clip_subject_state,
    export_quality_map,
    global_optimum,
    q_projection_area,
    q_velocity_perp,
    quality_map,
    subject_state,
)


__all__ = [
    ### camera
    "aim_at",
    "project",
    "screen_error",
    ### config
    "SimConfig",
    ### controller
    "BaseCameraController",
    "ControlOutput",
    "FollowMeController",
    "ProposedController",
    "follow_me_step",
    ### drone
    "braking_speed",
    "drift_noise",
    "drift_step",
    "drone_step",
    "orbit_position",
    ### metrics
    "aggregate",
    "compare",
    "merge_reports",
    "screen_error_ratio",
    "viewpoint_error",
    ### pid
    "PidController",
    "pid_update",
    ### planner
    "PlanDecision",
    "WaypointPlanner",
    "action_region",
    "export_waypoints",
    "limit_step",
    "local_search",
    "plan_step",
    "smooth",
    ### viewpoint
    "clip_subject_state",
    "export_quality_map",
    "global_optimum",
    "q_projection_area",
    "q_velocity_perp",
    "quality_map",
    "subject_state",
]
