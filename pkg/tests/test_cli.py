import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pandas as pd

from aerial_cine.cli import EXIT_DATA_ERROR, EXIT_OK, EXIT_USAGE_ERROR, load_clip, main
from aerial_cine.errors import ClipFormatError
from aerial_cine.types import JOINT_IDS

DATA_DIR = Path(__file__).parent / "data"


class TestCli(unittest.TestCase):
    """Unit tests for the aerial-cine command line"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.stderr = io.StringIO()

    def tearDown(self):
        self.tmp.cleanup()

    def run_cli(self, *argv: str) -> int:
        with redirect_stdout(io.StringIO()), redirect_stderr(self.stderr):
            return main([str(a) for a in argv])

    def synth(self, kind: str = "static_tpose", duration: float = 2.0, *params: str) -> Path:
        out = self.dir / f"{kind}.jsonl"
        extra = [arg for p in params for arg in ("--param", p)]
        code = self.run_cli("synth", kind, "--out", out, "--duration", duration, *extra)
        self.assertEqual(code, EXIT_OK)
        return out

    def test_synth(self):
        """Test that synth writes one JSON line per frame"""
        out = self.synth("straight_walk", 1.0, "speed=1.5", "heading_deg=90")
        lines = out.read_text(encoding="utf-8").splitlines()
        self.assertEqual(len(lines), 31)
        clip = load_clip(out)
        self.assertAlmostEqual(clip.frame(30).centroid[1] - clip.frame(0).centroid[1], 1.5)

    def test_convert(self):
        """Test BVH conversion with a mapping file and unit scale"""
        mapping = self.dir / "mapping.json"
        names = {joint.value: "Hips" for joint in JOINT_IDS} | {"head": "Child"}
        mapping.write_text(json.dumps(names), encoding="utf-8")
        out = self.dir / "two_joint.jsonl"
        code = self.run_cli(
            "convert",
            DATA_DIR / "two_joint.bvh",
            "--out",
            out,
            "--mapping",
            mapping,
            "--scale",
            "0.01",
        )
        self.assertEqual(code, EXIT_OK)
        clip = load_clip(out)
        self.assertEqual(len(clip), 3)
        self.assertAlmostEqual(clip.duration, 0.2)
        self.assertAlmostEqual(clip.frame(0).positions[0][2], 0.1)

    def test_convert_missing_default_joints(self):
        """Test that the default CMU mapping fails on a skeleton without those joints"""
        code = self.run_cli("convert", DATA_DIR / "two_joint.bvh", "--out", self.dir / "x.jsonl")
        self.assertEqual(code, EXIT_DATA_ERROR)
        self.assertIn("two_joint.bvh", self.stderr.getvalue())

    def test_qualitymap(self):
        """Test the per-frame quality CSV"""
        clip = self.synth()
        out = self.dir / "q.csv"
        self.assertEqual(self.run_cli("qualitymap", clip, "--t", "1.0", "--out", out), EXIT_OK)
        frame = pd.read_csv(out)
        self.assertEqual(len(frame), 360)
        self.assertEqual(frame["quality"].max(), 1.0)
        self.assertEqual(set(frame["active_descriptor"]), {"projection_area"})

    def test_qualitymap_time_out_of_range(self):
        """Test that a time outside the clip is a data error"""
        clip = self.synth()
        code = self.run_cli("qualitymap", clip, "--t", "5.0", "--out", self.dir / "q.csv")
        self.assertEqual(code, EXIT_DATA_ERROR)

    def test_simulate_artifacts(self):
        """Test the files written by a proposed run"""
        clip = self.synth("straight_walk", 2.0)
        prefix = self.dir / "runs" / "walk"
        (self.dir / "runs").mkdir()
        code = self.run_cli("simulate", clip, "--mode", "proposed", "--out", prefix, "--seed", 3)
        self.assertEqual(code, EXIT_OK)
        artifacts = ["trace.csv", "report.json", "hist_composition.csv", "hist_viewpoint.csv"]
        for name in artifacts + ["waypoints.csv"]:
            self.assertTrue(Path(f"{prefix}_{name}").is_file(), name)
        report = json.loads(Path(f"{prefix}_report.json").read_text(encoding="utf-8"))
        self.assertEqual(report["mode"], "proposed")
        self.assertEqual(report["frame_count"], 61)
        self.assertEqual(len(pd.read_csv(f"{prefix}_trace.csv")), 61)

    def test_simulate_follow_me_without_waypoints(self):
        """Test that follow-me runs write no waypoint file"""
        clip = self.synth()
        prefix = self.dir / "fm"
        code = self.run_cli("simulate", clip, "--mode", "follow_me", "--out", prefix)
        self.assertEqual(code, EXIT_OK)
        self.assertFalse(Path(f"{prefix}_waypoints.csv").exists())
        self.assertTrue(Path(f"{prefix}_trace.csv").exists())

    def test_compare(self):
        """Test the comparison JSON and its text twin"""
        clip = self.synth("straight_walk", 2.0)
        out = self.dir / "cmp.json"
        self.assertEqual(self.run_cli("compare", clip, "--out", out, "--set", "drift_sigma=0"), 0)
        table = json.loads(out.read_text(encoding="utf-8"))
        self.assertEqual((table["label_a"], table["label_b"]), ("proposed", "follow_me"))
        self.assertEqual(len(table["rows"]), 2)
        self.assertTrue(out.with_suffix(".txt").read_text(encoding="utf-8").startswith("Metric"))

    def test_config_file_and_errors(self):
        """Test config file loading and invalid values"""
        clip = self.synth()
        config = self.dir / "sim.env"
        config.write_text("alpha=0.3\ndrift_sigma=0\n", encoding="utf-8")
        prefix = self.dir / "cfg"
        args = ("simulate", clip, "--out", prefix, "--config", config)
        self.assertEqual(self.run_cli(*args), EXIT_OK)
        self.assertEqual(self.run_cli(*args, "--set", "alpha=2"), EXIT_DATA_ERROR)
        self.assertIn("alpha", self.stderr.getvalue())
        self.assertEqual(self.run_cli(*args, "--set", "bogus=1"), EXIT_DATA_ERROR)

    def test_usage_errors(self):
        """Test exit code 2 for bad arguments and missing files"""
        self.assertEqual(self.run_cli(), EXIT_USAGE_ERROR)
        self.assertEqual(self.run_cli("synth", "moonwalk", "--out", "x"), EXIT_USAGE_ERROR)
        missing = self.dir / "absent.jsonl"
        code = self.run_cli("simulate", missing, "--out", self.dir / "x")
        self.assertEqual(code, EXIT_USAGE_ERROR)
        code = self.run_cli("simulate", self.synth(), "--out", "x", "--config", missing)
        self.assertEqual(code, EXIT_USAGE_ERROR)

    def test_bad_clip_names_file(self):
        """Test that malformed clips are reported with their path"""
        bad = self.dir / "bad.jsonl"
        bad.write_text('{"t": 0.0, "joints": {}}\n', encoding="utf-8")
        with self.assertRaises(ClipFormatError) as ctx:
            load_clip(bad)
        self.assertTrue(str(ctx.exception).startswith(str(bad)))
        self.assertEqual(self.run_cli("simulate", bad, "--out", self.dir / "x"), EXIT_DATA_ERROR)


if __name__ == "__main__":
    unittest.main()
