from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

POSITION_CHANNELS = ("Xposition", "Yposition", "Zposition")
ROTATION_CHANNELS = ("Xrotation", "Yrotation", "Zrotation")
SUPPORTED_CHANNELS = POSITION_CHANNELS + ROTATION_CHANNELS


@dataclass
class BvhNode:
    """
    One node of a BVH hierarchy. End sites carry an offset only.

    Glossary:
    - `channels` - channel names in declared order, e.g. `("Zrotation", "Xrotation", "Yrotation")`
    - `is_end_site` - terminal marker; never animated
    """

    name: str
    offset: tuple[float, float, float]
    channels: tuple[str, ...] = ()
    children: list["BvhNode"] = field(default_factory=list)
    is_end_site: bool = False

    def walk(self) -> Iterator["BvhNode"]:
        """Pre-order traversal, which is also the channel order of the MOTION section"""
        yield self
        for child in self.children:
            yield from child.walk()

    @property
    def rotation_order(self) -> str:
        """Rotation axes in declared order, e.g. `"ZXY"`"""
        return "".join(c[0] for c in self.channels if c in ROTATION_CHANNELS)


@dataclass(eq=False)
class BvhDocument:
    """Parsed BVH file: a single-rooted joint tree plus a (frames, channels) motion table"""

    root: BvhNode
    frame_time: float
    motion: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.motion = np.asarray(self.motion, dtype=float)
        if self.motion.ndim != 2 or self.motion.shape[1] != self.channel_count:
            raise ValueError(
                f"motion must have shape (frames, {self.channel_count}), got {self.motion.shape}"
            )

    @property
    def joints(self) -> list[BvhNode]:
        """Animated nodes (end sites excluded), in channel order"""
        return [node for node in self.root.walk() if not node.is_end_site]

    @property
    def channel_count(self) -> int:
        return sum(len(node.channels) for node in self.root.walk())

    @property
    def frame_count(self) -> int:
        return int(self.motion.shape[0])

    def channel_slices(self) -> dict[str, slice]:
        """Column range of each joint's channels inside `motion`"""
        slices, start = {}, 0
        for node in self.joints:
            slices[node.name] = slice(start, start + len(node.channels))
            start += len(node.channels)
        return slices

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BvhDocument):
            return NotImplemented
        return (
            self.root == other.root
            and self.frame_time == other.frame_time
            and self.motion.shape == other.motion.shape
            and bool(np.array_equal(self.motion, other.motion))
        )
