"""
Randomized property checks for the viewpoint descriptors and the waypoint planner:

- both descriptors score opposite azimuths equally
- the action region and smoothing obey their closed forms
- waypoints move at most one smoothed region width per cycle in closed loop
- the hill-climb lands on the in-region argmax whenever the arc is unimodal, and on an in-region
  local maximum otherwise
"""

import math

import numpy as np
import pytest

from aerial_cine.core.config import SimConfig
from aerial_cine.core.planner import action_region, local_search, smooth
from aerial_cine.core.viewpoint import q_projection_area, q_velocity_perp, quality_map
from aerial_cine.mocap.synth import SynthParams, synth_clip
from aerial_cine.models.skeleton import SkeletonFrame
from aerial_cine.models.viewpoint import QualityMap, SubjectState
from aerial_cine.service.simulation_service import simulate
from aerial_cine.types import NUM_JOINTS
from aerial_cine.utils.angles import wrap180

SYMMETRY_TOL = 1e-9


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_frame(rng) -> SkeletonFrame:
    base = synth_clip("in_place_wave", duration=2.0).frame(int(rng.integers(0, 61)))
    jitter = rng.normal(0.0, 0.2, size=(NUM_JOINTS, 3))
    return SkeletonFrame(t=0.0, positions=base.positions + jitter)


def test_opposite_azimuths_score_alike(rng):
    for _ in range(100):
        frame = random_frame(rng)
        azimuths = np.arange(360.0)
        area = q_projection_area(azimuths, frame)
        np.testing.assert_allclose(
            area, q_projection_area(azimuths + 180.0, frame), rtol=0, atol=SYMMETRY_TOL
        )
        velocity = rng.normal(0.0, 1.0, size=2)
        perp = q_velocity_perp(azimuths, velocity)
        np.testing.assert_allclose(
            perp, q_velocity_perp(azimuths + 180.0, velocity), rtol=0, atol=SYMMETRY_TOL
        )


def test_normalized_maps_are_symmetric(rng):
    for speed in (0.0, 1.5):
        for _ in range(10):
            frame = random_frame(rng)
            heading = rng.uniform(-math.pi, math.pi)
            state = SubjectState(
                centroid_xy=tuple(frame.centroid[:2]),
                centroid_z=float(frame.centroid[2]),
                velocity_xy=(speed * math.cos(heading), speed * math.sin(heading)),
                window=0.25,
            )
            values = quality_map(frame, state, 0.2).values
            np.testing.assert_allclose(values[:180], values[180:], rtol=0, atol=SYMMETRY_TOL)


def test_region_distance_chain(rng):
    for _ in range(200):
        v_max, T, radius = rng.uniform(0.1, 5.0), rng.uniform(0.05, 2.0), rng.uniform(0.5, 6.0)
        region = action_region(rng.uniform(0.0, 360.0), v_max, T, radius)
        assert 0.0 <= region.s_dec <= region.s_acc <= v_max * T + 1e-12
        expected = min(math.degrees(v_max * T / radius), 180.0)
        assert region.half_width_deg == pytest.approx(expected, abs=1e-9)
        assert region.is_full_circle == (expected >= 180.0)


def test_smoothing_endpoints_and_convergence(rng):
    for _ in range(200):
        prev, target = rng.uniform(0.0, 360.0, size=2)
        assert smooth(prev, target, 0.0) == pytest.approx(prev % 360.0, abs=1e-9)
        assert smooth(prev, target, 1.0) == pytest.approx(target % 360.0, abs=1e-9)

        alpha = rng.uniform(0.05, 0.95)
        gap = abs(wrap180(target - prev))
        waypoint = prev
        for k in range(1, 20):
            waypoint = smooth(waypoint, target, alpha)
            remaining = abs(wrap180(target - waypoint))
            assert remaining == pytest.approx(gap * (1.0 - alpha) ** k, abs=1e-9)


def random_quality(rng) -> np.ndarray:
    """A few random harmonics, so some maps are unimodal over a region and some are not"""
    azimuths = np.radians(np.arange(360.0))
    values = np.zeros(360)
    for harmonic in range(1, int(rng.integers(2, 6))):
        values += rng.normal() * np.cos(harmonic * azimuths + rng.uniform(0.0, 2 * np.pi))
    if rng.random() < 0.3:
        values += rng.normal(0.0, 0.05, size=360)
    return (values - values.min()) / (values.max() - values.min())


def arc_indices(quality: QualityMap, region) -> np.ndarray:
    """In-region sample indices ordered from one end of the arc to the other"""
    inside = np.flatnonzero(region.contains(quality.azimuths))
    offsets = wrap180(quality.azimuths[inside] - region.center_azimuth_deg)
    return inside[np.argsort(offsets, kind="stable")]


def is_unimodal(values: np.ndarray) -> bool:
    peak = int(np.argmax(values))
    rising, falling = np.diff(values[: peak + 1]), np.diff(values[peak:])
    return bool(np.all(rising > 0) and np.all(falling < 0))


def test_local_search_oracle(rng):
    unimodal_cases = 0
    for _ in range(1000):
        quality = QualityMap(random_quality(rng), "projection_area")
        center = float(rng.integers(0, 360)) + rng.uniform(-0.4, 0.4)
        region = action_region(
            center, rng.uniform(0.5, 4.0), rng.uniform(0.25, 1.0), rng.uniform(1.5, 4.0)
        )
        result = local_search(quality, region, center)

        assert region.contains(result)
        index = quality.index_of(result)
        assert quality.azimuth_of(index) == pytest.approx(result)
        values = quality.values
        assert values[index] >= values[quality.index_of(center)]
        for neighbor in ((index - 1) % 360, (index + 1) % 360):
            if region.contains(quality.azimuth_of(neighbor)):
                assert values[neighbor] <= values[index]

        arc = arc_indices(quality, region)
        if not region.is_full_circle and is_unimodal(values[arc]):
            unimodal_cases += 1
            assert index == arc[np.argmax(values[arc])]
    assert unimodal_cases > 100


@pytest.mark.parametrize(
    "kind, params",
    [
        ("pirouette", SynthParams()),
        ("straight_walk", SynthParams(speed=1.5)),
        ("circle_walk", SynthParams(radius=2.0, period=10.0)),
        ("mixed", SynthParams(speed=1.0)),
    ],
)
def test_closed_loop_waypoint_step_bound(kind, params):
    config = SimConfig()
    clip = synth_clip(kind, params, duration=10.0)
    waypoints = simulate(clip, config, "proposed").waypoints
    reach = action_region(0.0, config.v_max, config.T, config.radius).half_width_deg
    bound = config.alpha * (reach + 360.0 / config.n_samples)
    steps = [
        abs(wrap180(b.azimuth_deg - a.azimuth_deg)) for a, b in zip(waypoints, waypoints[1:])
    ]
    assert len(steps) >= 19
    assert max(steps) <= bound + 1e-9
