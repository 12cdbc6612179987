"""
Configuration for integration tests
"""

import os
from pathlib import Path

import pytest
from dotenv import load_dotenv

from aerial_cine.core.config import SimConfig
from aerial_cine.mocap.synth import SynthParams, synth_clip
from aerial_cine.models.skeleton import MotionClip

# Get the directory where conftest.py is located, and load its .env file
INTEG_TEST_DIR = Path(__file__).parent.absolute()
load_dotenv(INTEG_TEST_DIR / ".env")


@pytest.fixture(scope="session")
def seeds() -> list[int]:
    """Drift seeds for suite runs, from `AERIAL_CINE_TEST_SEEDS` (comma separated)"""
    raw = os.getenv("AERIAL_CINE_TEST_SEEDS", "0,1,2,3,4")
    return [int(s) for s in raw.split(",") if s.strip()]


@pytest.fixture(scope="session")
def clip_duration() -> float:
    return float(os.getenv("AERIAL_CINE_TEST_DURATION", "10.0"))


@pytest.fixture(scope="session")
def suite_clips(clip_duration) -> dict[str, MotionClip]:
    """Synthetic suite covering walking, turning, waving and a walk that stops to wave"""
    return {
        "straight_walk": synth_clip("straight_walk", SynthParams(speed=1.0), clip_duration),
        "circle_walk": synth_clip(
            "circle_walk", SynthParams(radius=2.0, period=20.0), clip_duration
        ),
        "in_place_wave": synth_clip("in_place_wave", duration=clip_duration),
        "mixed": synth_clip("mixed", SynthParams(speed=1.0), clip_duration),
        "static_tpose": synth_clip("static_tpose", duration=clip_duration),
    }


@pytest.fixture
def sim_config() -> SimConfig:
    """Default configuration, drift included"""
    return SimConfig()


@pytest.fixture
def quiet_config() -> SimConfig:
    """Default configuration without drift"""
    return SimConfig(drift_sigma=0.0)


@pytest.fixture(scope="session")
def golden_bvh() -> Path:
    path = INTEG_TEST_DIR.parent / "tests" / "data" / "two_joint.bvh"
    if not path.is_file():
        pytest.skip(f"golden BVH file not found at {path}")
    return path
