from enum import Enum
from typing import Literal, TypeAlias


class JointId(str, Enum):
    """The 13 major skeleton joints tracked for one pose. Member order is the array order."""

    HEAD = "head"
    SPINE_SHOULDER = "spine_shoulder"
    SPINE_BASE = "spine_base"
    L_SHOULDER = "l_shoulder"
    R_SHOULDER = "r_shoulder"
    L_ELBOW = "l_elbow"
    R_ELBOW = "r_elbow"
    L_HAND = "l_hand"
    R_HAND = "r_hand"
    L_KNEE = "l_knee"
    R_KNEE = "r_knee"
    L_FOOT = "l_foot"
    R_FOOT = "r_foot"


JOINT_IDS: tuple[JointId, ...] = tuple(JointId)
JOINT_INDEX: dict[JointId, int] = {joint: i for i, joint in enumerate(JOINT_IDS)}
NUM_JOINTS = len(JOINT_IDS)

DescriptorKind = Literal["velocity_perp", "projection_area"]
RunMode = Literal["proposed", "follow_me"]
SynthKind = Literal[
    "straight_walk", "circle_walk", "in_place_wave", "static_tpose", "pirouette", "mixed"
]

Vec3: TypeAlias = tuple[float, float, float]
