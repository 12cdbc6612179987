"""
BVH subset reader/writer and forward kinematics.

Supported grammar: HIERARCHY with one ROOT, nested JOINT / End Site blocks, OFFSET, CHANNELS
(3 or 6 of {X,Y,Z}{position,rotation}); MOTION with `Frames:` and `Frame Time:` followed by
one line of channel values per frame.
"""

from logging import getLogger

import numpy as np
from scipy.spatial.transform import Rotation

from aerial_cine.errors import BvhParseError
from aerial_cine.models.bvh import POSITION_CHANNELS, SUPPORTED_CHANNELS, BvhDocument, BvhNode

logger = getLogger(__name__)


class _TokenStream:
    """Whitespace tokens of the HIERARCHY section, each tagged with its 1-based line number"""

    def __init__(self, lines: list[str], first_line: int):
        self.tokens: list[tuple[str, int]] = []
        for offset, line in enumerate(lines):
            for token in line.replace("{", " { ").replace("}", " } ").split():
                self.tokens.append((token, first_line + offset))
        self.pos = 0
        self.last_line = first_line + max(len(lines) - 1, 0)

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    @property
    def line(self) -> int:
        return self.tokens[self.pos][1] if self.pos < len(self.tokens) else self.last_line

    def next(self, what: str) -> str:
        if self.pos >= len(self.tokens):
            raise BvhParseError(f"unexpected end of hierarchy, expected {what}", self.last_line)
        token = self.tokens[self.pos][0]
        self.pos += 1
        return token

    def expect(self, value: str) -> None:
        line = self.line
        token = self.next(f"'{value}'")
        if token != value:
            raise BvhParseError(f"expected '{value}', found '{token}'", line)

    def number(self, what: str) -> float:
        line = self.line
        token = self.next(what)
        try:
            return float(token)
        except ValueError:
            raise BvhParseError(f"expected a number for {what}, found '{token}'", line) from None

    def integer(self, what: str) -> int:
        line = self.line
        token = self.next(what)
        try:
            return int(token)
        except ValueError:
            raise BvhParseError(f"expected an integer for {what}, found '{token}'", line) from None


def _parse_offset(stream: _TokenStream) -> tuple[float, float, float]:
    stream.expect("OFFSET")
    return (stream.number("OFFSET x"), stream.number("OFFSET y"), stream.number("OFFSET z"))


def _parse_channels(stream: _TokenStream) -> tuple[str, ...]:
    line = stream.line
    stream.expect("CHANNELS")
    count = stream.integer("channel count")
    if count not in (3, 6):
        raise BvhParseError(f"channel count must be 3 or 6, got {count}", line)
    channels = []
    for _ in range(count):
        channel_line = stream.line
        name = stream.next("channel name")
        if name not in SUPPORTED_CHANNELS:
            raise BvhParseError(f"unsupported channel name '{name}'", channel_line)
        channels.append(name)
    if len(set(channels)) != len(channels):
        raise BvhParseError("duplicate channel in CHANNELS declaration", line)
    return tuple(channels)


def _parse_end_site(stream: _TokenStream) -> BvhNode:
    stream.expect("End")
    stream.expect("Site")
    stream.expect("{")
    offset = _parse_offset(stream)
    if stream.peek() == "CHANNELS":
        raise BvhParseError("End Site blocks cannot declare channels", stream.line)
    stream.expect("}")
    return BvhNode(name="End Site", offset=offset, is_end_site=True)


def _parse_joint(stream: _TokenStream, keyword: str) -> BvhNode:
    stream.expect(keyword)
    name_line = stream.line
    name = stream.next("joint name")
    if name in ("{", "}"):
        raise BvhParseError(f"missing name after {keyword}", name_line)
    stream.expect("{")
    offset = _parse_offset(stream)
    channels = _parse_channels(stream) if stream.peek() == "CHANNELS" else ()
    node = BvhNode(name=name, offset=offset, channels=channels)
    while True:
        token = stream.peek()
        if token == "JOINT":
            node.children.append(_parse_joint(stream, "JOINT"))
        elif token == "End":
            node.children.append(_parse_end_site(stream))
        elif token == "}":
            stream.next("'}'")
            return node
        elif token is None:
            raise BvhParseError(f"unterminated block for joint '{name}'", stream.line)
        else:
            raise BvhParseError(f"unexpected token '{token}' in joint '{name}'", stream.line)


def _parse_header_value(line: str, line_no: int, label: str) -> str:
    stripped = line.strip()
    if not stripped.startswith(label):
        raise BvhParseError(f"expected '{label}'", line_no)
    return stripped[len(label) :].strip()


def parse_bvh(text: str) -> BvhDocument:
    """
    Parse a BVH document.

    Args:
        text: Full file content

    Returns:
        `BvhDocument` with rotation channel order preserved exactly as declared

    Raises:
        BvhParseError: syntax error (with line number), unsupported channel,
            or channel/frame count mismatch
    """
    lines = text.splitlines()
    motion_idx = next((i for i, l in enumerate(lines) if l.strip() == "MOTION"), None)
    if motion_idx is None:
        raise BvhParseError("missing MOTION section", len(lines) or None)

    stream = _TokenStream(lines[:motion_idx], first_line=1)
    stream.expect("HIERARCHY")
    if stream.peek() != "ROOT":
        raise BvhParseError("expected ROOT", stream.line)
    root = _parse_joint(stream, "ROOT")
    if stream.peek() is not None:
        raise BvhParseError(
            f"unexpected '{stream.peek()}' after ROOT block (exactly one ROOT allowed)", stream.line
        )

    n_channels = sum(len(node.channels) for node in root.walk())
    rest = [(i + 1, l) for i, l in enumerate(lines) if i > motion_idx and l.strip()]
    if len(rest) < 2:
        raise BvhParseError("MOTION section needs 'Frames:' and 'Frame Time:'", len(lines))

    (frames_line, frames_text), (time_line, time_text) = rest[0], rest[1]
    frames_value = _parse_header_value(frames_text, frames_line, "Frames:")
    try:
        declared_frames = int(frames_value)
    except ValueError:
        raise BvhParseError("frame count must be an integer", frames_line) from None
    if declared_frames < 0:
        raise BvhParseError("frame count cannot be negative", frames_line)
    time_value = _parse_header_value(time_text, time_line, "Frame Time:")
    try:
        frame_time = float(time_value)
    except ValueError:
        raise BvhParseError("frame time must be a number", time_line) from None
    if not frame_time > 0:
        raise BvhParseError(f"frame time must be positive, got {frame_time}", time_line)

    frame_lines = rest[2:]
    if len(frame_lines) != declared_frames:
        at = frame_lines[-1][0] if frame_lines else time_line
        raise BvhParseError(
            f"declared {declared_frames} frames but found {len(frame_lines)} motion lines", at
        )
    motion = np.zeros((declared_frames, n_channels))
    for row, (line_no, line) in enumerate(frame_lines):
        values = line.split()
        if len(values) != n_channels:
            raise BvhParseError(
                f"frame {row} has {len(values)} values, "
                f"the hierarchy declares {n_channels} channels",
                line_no,
            )
        try:
            motion[row] = [float(v) for v in values]
        except ValueError:
            raise BvhParseError(f"non-numeric channel value in frame {row}", line_no) from None

    doc = BvhDocument(root=root, frame_time=frame_time, motion=motion)
    logger.debug(
        f"Parsed BVH: {len(doc.joints)} joints, {n_channels} channels, {declared_frames} frames"
    )
    return doc


def _fmt(value: float) -> str:
    return repr(float(value))


def _serialize_node(node: BvhNode, depth: int, out: list[str]) -> None:
    pad = "\t" * depth
    if node.is_end_site:
        out.append(f"{pad}End Site")
        out.append(f"{pad}{{")
        out.append(f"{pad}\tOFFSET {' '.join(_fmt(v) for v in node.offset)}")
        out.append(f"{pad}}}")
        return
    out.append(f"{pad}{'ROOT' if depth == 0 else 'JOINT'} {node.name}")
    out.append(f"{pad}{{")
    out.append(f"{pad}\tOFFSET {' '.join(_fmt(v) for v in node.offset)}")
    if node.channels:
        out.append(f"{pad}\tCHANNELS {len(node.channels)} {' '.join(node.channels)}")
    for child in node.children:
        _serialize_node(child, depth + 1, out)
    out.append(f"{pad}}}")


def serialize_bvh(doc: BvhDocument) -> str:
    """Write a document back out. Floats use shortest round-trip form, so re-parsing is exact."""
    out = ["HIERARCHY"]
    _serialize_node(doc.root, 0, out)
    out.append("MOTION")
    out.append(f"Frames: {doc.frame_count}")
    out.append(f"Frame Time: {_fmt(doc.frame_time)}")
    for row in doc.motion:
        out.append(" ".join(_fmt(v) for v in row))
    return "\n".join(out) + "\n"


def forward_kinematics(doc: BvhDocument) -> dict[str, np.ndarray]:
    """
    World positions of every animated joint, in source units and axes.

    Rotation channels compose as intrinsic rotations in declared order
    (`Zrotation Xrotation Yrotation` -> Rz @ Rx @ Ry). A joint's local translation is its OFFSET
    plus any position channels.

    Returns:
        joint name -> (frames, 3) array
    """
    n = doc.frame_count
    if n == 0:
        return {node.name: np.zeros((0, 3)) for node in doc.joints}

    slices = doc.channel_slices()
    positions: dict[str, np.ndarray] = {}

    def visit(node: BvhNode, parent_rot: Rotation | None, parent_pos: np.ndarray | None) -> None:
        values = doc.motion[:, slices[node.name]]
        local_t = np.tile(np.asarray(node.offset, dtype=float), (n, 1))
        order, angles = "", []
        for k, channel in enumerate(node.channels):
            if channel in POSITION_CHANNELS:
                local_t[:, "XYZ".index(channel[0])] += values[:, k]
            else:
                order += channel[0]
                angles.append(values[:, k])
        if order:
            local_rot = Rotation.from_euler(order, np.stack(angles, axis=1), degrees=True)
        else:
            local_rot = Rotation.identity(n)

        if parent_rot is None:
            world_pos, world_rot = local_t, local_rot
        else:
            world_pos = parent_pos + parent_rot.apply(local_t)
            world_rot = parent_rot * local_rot
        positions[node.name] = world_pos
        for child in node.children:
            if not child.is_end_site:
                visit(child, world_rot, world_pos)

    visit(doc.root, None, None)
    return positions
