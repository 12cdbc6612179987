"""
Drone motion along the orbit circle and the drift between commanded and true position.
"""

import math
from dataclasses import replace

import numpy as np

from aerial_cine.core.config import SimConfig
from aerial_cine.models.planning import Waypoint
from aerial_cine.models.sim import DroneState
from aerial_cine.models.viewpoint import ViewpointPolar
from aerial_cine.utils.angles import normalize_deg, wrap180


def orbit_position(center_xy, azimuth_deg: float, config: SimConfig) -> np.ndarray:
    """Commanded camera position: on the orbit circle around `center_xy` at the orbit height"""
    return ViewpointPolar(azimuth_deg, config.radius, config.height).to_cartesian(center_xy)


def initial_drone_state(
    center_xy, config: SimConfig, azimuth_deg: float | None = None
) -> DroneState:
    azimuth = config.initial_azimuth_deg if azimuth_deg is None else azimuth_deg
    position = orbit_position(center_xy, azimuth, config)
    return DroneState(
        azimuth_deg=normalize_deg(azimuth), arc_velocity=0.0, true_position=tuple(position)
    )


def braking_speed(distance: float, speed: float, a_dec: float, dt: float) -> float:
    """
    Speed toward the target, at the end of a step of `dt`, that puts the drone on the braking
    curve `v = sqrt(2 * a_dec * d)`. `speed` is the signed pre-step speed along `distance`.

    Once on the curve, each step sheds exactly `a_dec * dt`.
    """
    toward = speed if distance >= 0 else -speed
    step = a_dec * dt
    discriminant = step * step - 4.0 * step * toward + 8.0 * a_dec * abs(distance)
    if discriminant < 0.0:
        return 0.0
    return max(0.0, 0.5 * (math.sqrt(discriminant) - step))


def drone_step(
    state: DroneState, waypoint: Waypoint, dt: float, config: SimConfig, center_xy=(0.0, 0.0)
) -> DroneState:
    """
    Advance along the shorter arc toward `waypoint` for `dt` seconds.

    The speed follows a trapezoidal profile: it grows by at most `a_acc * dt`, is capped at
    `v_max`, and shrinks by at most `a_dec * dt` along the braking curve so the drone stops on
    the target. The drone lands exactly on the target when it is moving toward it slower than
    one braking step and the target lies within this step's travel. A drone too fast to stop
    overshoots and comes back.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    radius = config.radius
    distance = math.radians(wrap180(waypoint.azimuth_deg - state.azimuth_deg)) * radius
    v = state.arc_velocity
    stop_step = config.a_dec * dt

    approach = braking_speed(distance, v, config.a_dec, dt)
    v_des = math.copysign(min(config.v_max, approach), distance)
    dv = v_des - v
    limit = (config.a_dec if v * dv < 0 else config.a_acc) * dt
    v_new = v + max(-limit, min(limit, dv))
    v_new = max(-config.v_max, min(config.v_max, v_new))
    travel = 0.5 * (v + v_new) * dt

    reach = max(abs(travel), 0.5 * abs(v) * dt) if v * distance >= 0 else 0.0
    arriving = distance != 0.0 and travel * distance >= 0 and reach >= abs(distance)
    if (arriving and abs(v) <= stop_step) or (distance == 0.0 and v_new == 0.0):
        azimuth, v_new = waypoint.azimuth_deg, 0.0
    else:
        azimuth = state.azimuth_deg + math.degrees(travel / radius)

    azimuth = normalize_deg(azimuth)
    position = orbit_position(center_xy, azimuth, config) + np.asarray(state.drift_offset)
    return replace(state, azimuth_deg=azimuth, arc_velocity=v_new, true_position=tuple(position))


def drift_step(offset, dt: float, config: SimConfig, rng: np.random.Generator) -> np.ndarray:
    """
    Mean-reverting drift, per axis:
    `d <- d * exp(-dt / tau) + sigma * sqrt(1 - exp(-2 dt / tau)) * N(0, 1)`.
    One standard normal triple is drawn per call, whatever sigma is.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    decay = math.exp(-dt / config.drift_tau)
    noise = rng.standard_normal(3)
    drift = np.asarray(offset, dtype=float) * decay
    if config.drift_sigma > 0:
        drift = drift + config.drift_sigma * math.sqrt(1.0 - decay * decay) * noise
    return drift


def drift_noise(
    state: DroneState,
    dt: float,
    config: SimConfig,
    rng: np.random.Generator,
    center_xy=(0.0, 0.0),
) -> DroneState:
    """Apply one `drift_step`; the true position becomes the ideal orbit position plus the drift"""
    drift = drift_step(state.drift_offset, dt, config, rng)
    position = orbit_position(center_xy, state.azimuth_deg, config) + drift
    return replace(state, drift_offset=tuple(drift), true_position=tuple(position))
