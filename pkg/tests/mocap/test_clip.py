import io
import json
import unittest
from pathlib import Path

import numpy as np

from aerial_cine.errors import ClipFormatError, JointMappingError
from aerial_cine.mocap.bvh import parse_bvh
from aerial_cine.mocap.clip import dump_jsonl, load_jsonl, resample, to_clip
from aerial_cine.mocap.synth import synth_clip
from aerial_cine.models.skeleton import AxisMap, JointMapping, MotionClip
from aerial_cine.types import JOINT_IDS, NUM_JOINTS, JointId

DATA_DIR = Path(__file__).parent.parent / "data"

# every target joint reads the root except the head, which reads the child
TWO_JOINT_MAPPING = {joint.value: "Hips" for joint in JOINT_IDS} | {"head": "Child"}


def jsonl_line(t: float, skip: str | None = None, value=(0.0, 0.0, 1.0)) -> str:
    joints = {joint.value: list(value) for joint in JOINT_IDS if joint.value != skip}
    return json.dumps({"t": t, "joints": joints}) + "\n"


class TestToClip(unittest.TestCase):
    """Unit tests for to_clip"""

    def setUp(self):
        self.doc = parse_bvh((DATA_DIR / "two_joint.bvh").read_text(encoding="utf-8"))

    def test_identity_axes_match_forward_kinematics(self):
        """Test that scale 1 with identity axes reproduces the hand-computed positions"""
        clip = to_clip(self.doc, scale=1.0, axis_map=AxisMap.identity(), mapping=TWO_JOINT_MAPPING)
        head = JOINT_IDS.index(JointId.HEAD)
        base = JOINT_IDS.index(JointId.SPINE_BASE)
        np.testing.assert_allclose(clip.positions[0, head], [0.0, 10.0, 0.0], atol=1e-9)
        np.testing.assert_allclose(clip.positions[1, head], [1.0, 12.0, 3.0], atol=1e-9)
        np.testing.assert_allclose(clip.positions[2, head], [-10.0, 0.0, 0.0], atol=1e-9)
        np.testing.assert_allclose(clip.positions[1, base], [1.0, 2.0, 3.0], atol=1e-9)

    def test_default_axis_map_is_y_up(self):
        """Test that the default axis map turns source y-up into world z-up"""
        clip = to_clip(self.doc, mapping=TWO_JOINT_MAPPING)
        head = JOINT_IDS.index(JointId.HEAD)
        np.testing.assert_allclose(clip.positions[0, head], [0.0, 0.0, 10.0], atol=1e-9)
        np.testing.assert_allclose(clip.positions[1, head], [1.0, -3.0, 12.0], atol=1e-9)

    def test_scale_is_linear(self):
        """Test that positions scale exactly with the scale factor"""
        unit = to_clip(self.doc, scale=1.0, mapping=TWO_JOINT_MAPPING)
        scaled = to_clip(self.doc, scale=0.01, mapping=TWO_JOINT_MAPPING)
        self.assertTrue(np.array_equal(scaled.positions, unit.positions * 0.01))
        head = JOINT_IDS.index(JointId.HEAD)
        self.assertAlmostEqual(scaled.positions[0, head, 2], 0.1, places=12)

    def test_times_follow_frame_time(self):
        """Test that timestamps are frame index times frame time"""
        clip = to_clip(self.doc, mapping=TWO_JOINT_MAPPING)
        np.testing.assert_allclose(clip.times, [0.0, 0.1, 0.2])
        self.assertAlmostEqual(clip.rate_hz, 10.0)

    def test_mapping_missing_head(self):
        """Test that an incomplete mapping names the missing joint"""
        mapping = {k: v for k, v in TWO_JOINT_MAPPING.items() if k != "head"}
        with self.assertRaises(JointMappingError) as ctx:
            to_clip(self.doc, mapping=mapping)
        self.assertEqual(ctx.exception.missing, "head")
        self.assertIn("head", str(ctx.exception))

    def test_mapping_to_absent_source(self):
        """Test that a source name missing from the hierarchy is reported"""
        mapping = TWO_JOINT_MAPPING | {"l_hand": "LeftHand"}
        with self.assertRaises(JointMappingError) as ctx:
            to_clip(self.doc, mapping=mapping)
        self.assertIn("LeftHand", str(ctx.exception))

    def test_default_cmu_mapping_fails_on_custom_names(self):
        """Test that CMU defaults do not silently match a non-CMU skeleton"""
        with self.assertRaises(JointMappingError):
            to_clip(self.doc)

    def test_joint_mapping_model_accepted(self):
        """Test that a JointMapping instance works like a plain dict"""
        mapping = JointMapping(names=TWO_JOINT_MAPPING)
        clip = to_clip(self.doc, mapping=mapping)
        self.assertEqual(len(clip), 3)

    def test_invalid_scale(self):
        """Test that non-positive scales are rejected"""
        with self.assertRaises(ValueError):
            to_clip(self.doc, scale=0.0, mapping=TWO_JOINT_MAPPING)

    def test_improper_axis_map(self):
        """Test that an axis map flipping handedness is rejected"""
        with self.assertRaises(ValueError):
            AxisMap(spec="x,z,y")


class TestLoadJsonl(unittest.TestCase):
    """Unit tests for load_jsonl"""

    def test_rate_from_spacing(self):
        """Test that two lines 0.1 s apart give a 10 Hz clip"""
        clip = load_jsonl(io.StringIO(jsonl_line(0.0) + jsonl_line(0.1)))
        self.assertEqual(len(clip), 2)
        self.assertAlmostEqual(clip.rate_hz, 10.0)

    def test_blank_lines_skipped(self):
        """Test that blank lines are ignored"""
        clip = load_jsonl(io.StringIO(jsonl_line(0.0) + "\n" + jsonl_line(0.5)))
        self.assertEqual(len(clip), 2)

    def test_missing_joint(self):
        """Test that a line with 12 joints names the missing one and its line"""
        text = jsonl_line(0.0) + jsonl_line(0.1, skip="r_knee")
        with self.assertRaises(ClipFormatError) as ctx:
            load_jsonl(io.StringIO(text))
        self.assertEqual(ctx.exception.line, 2)
        self.assertIn("r_knee", str(ctx.exception))

    def test_non_increasing_timestamps(self):
        """Test that out-of-order timestamps are rejected"""
        with self.assertRaises(ClipFormatError) as ctx:
            load_jsonl(io.StringIO(jsonl_line(0.1) + jsonl_line(0.0)))
        self.assertEqual(ctx.exception.line, 2)
        self.assertIn("non-increasing", str(ctx.exception))

    def test_malformed_line(self):
        """Test that invalid JSON reports the line number"""
        with self.assertRaises(ClipFormatError) as ctx:
            load_jsonl(io.StringIO(jsonl_line(0.0) + "{not json\n" + jsonl_line(0.2)))
        self.assertEqual(ctx.exception.line, 2)

    def test_unknown_joint(self):
        """Test that an extra joint name is rejected"""
        record = json.loads(jsonl_line(0.0))
        record["joints"]["tail"] = [0, 0, 0]
        with self.assertRaises(ClipFormatError):
            load_jsonl(io.StringIO(json.dumps(record) + "\n" + jsonl_line(0.1)))

    def test_single_frame(self):
        """Test that one frame is not a clip"""
        with self.assertRaises(ClipFormatError) as ctx:
            load_jsonl(io.StringIO(jsonl_line(0.0)))
        self.assertIn("at least 2 frames", str(ctx.exception))

    def test_dump_then_load(self):
        """Test that a dumped synthetic clip loads back with the same positions"""
        clip = synth_clip("straight_walk", duration=1.0, rate=10.0)
        buffer = io.StringIO()
        self.assertEqual(dump_jsonl(clip, buffer), 11)
        loaded = load_jsonl(io.StringIO(buffer.getvalue()))
        np.testing.assert_allclose(loaded.positions, clip.positions, atol=1e-12)
        np.testing.assert_allclose(loaded.times, clip.times, atol=1e-12)


class TestResample(unittest.TestCase):
    """Unit tests for resample"""

    def test_own_rate_is_identity(self):
        """Test that resampling to the clip's own rate keeps every frame"""
        clip = synth_clip("circle_walk", duration=2.0, rate=30.0)
        again = resample(clip, clip.rate_hz)
        self.assertEqual(len(again), len(clip))
        np.testing.assert_allclose(again.positions, clip.positions, atol=1e-9)

    def test_downsample_120_to_30(self):
        """Test the frame count and end points when going from 120 Hz to 30 Hz"""
        clip = synth_clip("straight_walk", duration=2.0, rate=120.0)
        low = resample(clip, 30.0)
        self.assertEqual(len(low), 61)
        self.assertAlmostEqual(low.start, clip.start)
        self.assertAlmostEqual(low.end, clip.end)
        self.assertAlmostEqual(low.rate_hz, 30.0)
        self.assertTrue(np.allclose(np.diff(low.times), 1.0 / 30.0, atol=1e-6))

    def test_midpoint_is_average(self):
        """Test that a sample between two frames averages them"""
        positions = np.stack([np.zeros((NUM_JOINTS, 3)), np.ones((NUM_JOINTS, 3))])
        clip = MotionClip(times=[0.0, 1.0], positions=positions, rate_hz=1.0)
        up = resample(clip, 2.0)
        np.testing.assert_allclose(up.times, [0.0, 0.5, 1.0])
        np.testing.assert_allclose(up.positions[1], np.full((NUM_JOINTS, 3), 0.5))

    def test_constant_pose(self):
        """Test that a still clip stays still at any rate"""
        clip = synth_clip("static_tpose", duration=1.0, rate=30.0)
        for rate in (7.0, 45.0, 120.0):
            resampled = resample(clip, rate)
            np.testing.assert_allclose(
                resampled.positions, np.broadcast_to(clip.positions[0], resampled.positions.shape)
            )

    def test_idempotent(self):
        """Test that resampling twice at one rate equals resampling once"""
        clip = synth_clip("circle_walk", duration=3.0, rate=120.0)
        once = resample(clip, 25.0)
        twice = resample(once, 25.0)
        np.testing.assert_allclose(twice.positions, once.positions, atol=1e-9)

    def test_invalid_rate(self):
        """Test that a non-positive rate is rejected"""
        clip = synth_clip("static_tpose", duration=1.0)
        with self.assertRaises(ValueError):
            resample(clip, 0.0)


if __name__ == "__main__":
    unittest.main()
