import unittest
from pathlib import Path

import numpy as np

from aerial_cine.errors import BvhParseError
from aerial_cine.mocap.bvh import forward_kinematics, parse_bvh, serialize_bvh

DATA_DIR = Path(__file__).parent.parent / "data"

MINIMAL_BVH = """HIERARCHY
ROOT Hips
{
  OFFSET 0 0 0
  CHANNELS 6 Xposition Yposition Zposition Zrotation Xrotation Yrotation
}
MOTION
Frames: 1
Frame Time: 0.008333
0 0 0 0 0 0
"""


def two_joint_text() -> str:
    return (DATA_DIR / "two_joint.bvh").read_text(encoding="utf-8")


class TestParseBvh(unittest.TestCase):
    """Unit tests for parse_bvh"""

    def test_minimal_document(self):
        """Test a single-joint file with one zero frame"""
        doc = parse_bvh(MINIMAL_BVH)
        self.assertEqual(len(doc.joints), 1)
        self.assertEqual(doc.frame_count, 1)
        self.assertEqual(doc.root.name, "Hips")
        self.assertAlmostEqual(doc.frame_time, 0.008333)
        self.assertTrue(np.array_equal(doc.motion, np.zeros((1, 6))))

    def test_two_joint_hierarchy(self):
        """Test that the golden file's tree, end site and channel order are kept"""
        doc = parse_bvh(two_joint_text())
        self.assertEqual([j.name for j in doc.joints], ["Hips", "Child"])
        child = doc.root.children[0]
        self.assertEqual(child.offset, (0.0, 10.0, 0.0))
        self.assertEqual(child.rotation_order, "ZXY")
        self.assertTrue(child.children[0].is_end_site)
        self.assertEqual(doc.channel_count, 9)
        self.assertEqual(doc.frame_count, 3)

    def test_rotation_order_preserved(self):
        """Test that an unusual rotation order survives parsing verbatim"""
        text = MINIMAL_BVH.replace("Zrotation Xrotation Yrotation", "Yrotation Zrotation Xrotation")
        doc = parse_bvh(text)
        self.assertEqual(doc.root.rotation_order, "YZX")

    def test_frame_count_mismatch(self):
        """Test that fewer motion lines than declared frames is rejected"""
        text = MINIMAL_BVH.replace("Frames: 1", "Frames: 2")
        with self.assertRaises(BvhParseError) as ctx:
            parse_bvh(text)
        self.assertIn("declared 2 frames", str(ctx.exception))

    def test_channel_count_mismatch_has_line(self):
        """Test that a short motion line reports its line number"""
        text = MINIMAL_BVH.replace("0 0 0 0 0 0\n", "0 0 0 0 0\n")
        with self.assertRaises(BvhParseError) as ctx:
            parse_bvh(text)
        self.assertEqual(ctx.exception.line, 10)
        self.assertIn("5 values", str(ctx.exception))

    def test_unsupported_channel(self):
        """Test that unknown channel names are rejected with their line"""
        text = MINIMAL_BVH.replace("Yrotation", "Wrotation")
        with self.assertRaises(BvhParseError) as ctx:
            parse_bvh(text)
        self.assertEqual(ctx.exception.line, 5)
        self.assertIn("Wrotation", str(ctx.exception))

    def test_missing_motion_section(self):
        """Test that a file without MOTION is rejected"""
        with self.assertRaises(BvhParseError):
            parse_bvh(MINIMAL_BVH.split("MOTION")[0])

    def test_second_root_rejected(self):
        """Test that only one ROOT is accepted"""
        hierarchy, motion = MINIMAL_BVH.split("MOTION")
        text = hierarchy + "ROOT Extra\n{\n  OFFSET 0 0 0\n}\nMOTION" + motion
        with self.assertRaises(BvhParseError):
            parse_bvh(text)

    def test_non_positive_frame_time(self):
        """Test that a zero frame time is rejected"""
        with self.assertRaises(BvhParseError):
            parse_bvh(MINIMAL_BVH.replace("Frame Time: 0.008333", "Frame Time: 0"))

    def test_bad_channel_count(self):
        """Test that CHANNELS must declare 3 or 6 entries"""
        text = MINIMAL_BVH.replace(
            "CHANNELS 6 Xposition Yposition Zposition Zrotation Xrotation Yrotation",
            "CHANNELS 2 Xposition Yposition",
        )
        with self.assertRaises(BvhParseError):
            parse_bvh(text)

    def test_parse_error_is_value_error(self):
        """Test that parse errors can be caught as ValueError"""
        with self.assertRaises(ValueError):
            parse_bvh("HIERARCHY\n")


class TestSerializeBvh(unittest.TestCase):
    """Unit tests for serialize_bvh"""

    def test_fixed_point(self):
        """Test that parse -> serialize -> parse yields an equal document"""
        doc = parse_bvh(two_joint_text())
        again = parse_bvh(serialize_bvh(doc))
        self.assertEqual(doc, again)
        self.assertEqual(serialize_bvh(again), serialize_bvh(doc))

    def test_fractional_values_survive(self):
        """Test that non-round floats re-parse exactly"""
        doc = parse_bvh(MINIMAL_BVH.replace("0 0 0 0 0 0\n", "0.1 -2.375 1e-7 33.3 0 -90\n"))
        again = parse_bvh(serialize_bvh(doc))
        self.assertTrue(np.array_equal(doc.motion, again.motion))


class TestForwardKinematics(unittest.TestCase):
    """Unit tests for forward_kinematics on the golden two-joint file"""

    def setUp(self):
        self.positions = forward_kinematics(parse_bvh(two_joint_text()))

    def test_rest_frame(self):
        """Test that the child sits at parent + OFFSET with zero rotations"""
        np.testing.assert_allclose(self.positions["Hips"][0], [0.0, 0.0, 0.0], atol=1e-9)
        np.testing.assert_allclose(self.positions["Child"][0], [0.0, 10.0, 0.0], atol=1e-9)

    def test_root_translation(self):
        """Test that root position channels carry the child along"""
        np.testing.assert_allclose(self.positions["Hips"][1], [1.0, 2.0, 3.0], atol=1e-9)
        np.testing.assert_allclose(self.positions["Child"][1], [1.0, 12.0, 3.0], atol=1e-9)

    def test_root_rotation(self):
        """Test that a 90 degree root Z rotation swings the child offset onto -x"""
        np.testing.assert_allclose(self.positions["Child"][2], [-10.0, 0.0, 0.0], atol=1e-9)

    def test_end_sites_excluded(self):
        """Test that only animated joints are returned"""
        self.assertEqual(set(self.positions), {"Hips", "Child"})


if __name__ == "__main__":
    unittest.main()
