from aerial_cine.models.bvh import BvhDocument, BvhNode
from aerial_cine.models.planning import ActionRegion, Waypoint
from aerial_cine.models.report import ComparisonRow, ComparisonTable, Histogram, RunReport
from aerial_cine.models.sim import (
    CameraPose,
    DroneState,
    FrameRecord,
    Intrinsics,
    PidGains,
    PidState,
)
from aerial_cine.models.skeleton import AxisMap, JointMapping, MotionClip, SkeletonFrame
from aerial_cine.models.viewpoint import QualityMap, SubjectState, ViewpointPolar

__all__ = [
    ### bvh
    "BvhDocument",
    "BvhNode",
    ### planning
    "ActionRegion",
    "Waypoint",
    ### report
    "ComparisonRow",
    "ComparisonTable",
    "Histogram",
    "RunReport",
    ### sim
    "CameraPose",
    "DroneState",
    "FrameRecord",
    "Intrinsics",
    "PidGains",
    "PidState",
    ### skeleton
    "AxisMap",
    "JointMapping",
    "MotionClip",
    "SkeletonFrame",
    ### viewpoint
    "QualityMap",
    "SubjectState",
    "ViewpointPolar",
]
