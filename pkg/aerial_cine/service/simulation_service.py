"""
Simulation service layer: the closed-loop runner plus batch helpers for comparing camera
strategies over clips and seeds.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from logging import getLogger
from typing import Sequence, Type

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from aerial_cine.core.camera import screen_error
from aerial_cine.core.config import SimConfig
from aerial_cine.core.controller import BaseCameraController, FollowMeController, ProposedController
from aerial_cine.core.metrics import aggregate, compare, merge_reports
from aerial_cine.core.viewpoint import clip_subject_state, global_optimum, quality_map
from aerial_cine.errors import SimulationError
from aerial_cine.models.planning import Waypoint
from aerial_cine.models.report import ComparisonTable, RunReport
from aerial_cine.models.sim import FrameRecord
from aerial_cine.models.skeleton import MotionClip
from aerial_cine.models.viewpoint import QualityMap
from aerial_cine.types import DescriptorKind, RunMode

logger = getLogger(__name__)

TIME_EPS = 1e-9

DEFAULT_CONTROLLERS: dict[str, Type[BaseCameraController]] = {
    "proposed": ProposedController,
    "follow_me": FollowMeController,
}


@dataclass
class SimulationResult:
    """Everything one run produced. `maps[i]` is the quality map used to score `records[i]`."""

    mode: RunMode
    records: list[FrameRecord]
    maps: list[QualityMap] = field(repr=False)
    waypoints: list[Waypoint] = field(default_factory=list, repr=False)

    def report(self) -> RunReport:
        return aggregate(self.records, self.maps)


def simulate(
    clip: MotionClip,
    config: SimConfig,
    mode: RunMode,
    controller_cls: Type[BaseCameraController] | None = None,
) -> SimulationResult:
    """
    Run the closed loop over the whole clip at `config.sim_rate`.

    Per frame: subject state, camera pose from the controller (which plans a waypoint every
    `T` seconds in proposed mode), screen error of the true camera, global optimum of the
    frame's quality map, then the PID correction for the next frame.

    Raises:
        SimulationError: the clip is shorter than two command cycles
    """
    if clip.duration < 2.0 * config.T - TIME_EPS:
        raise SimulationError(
            f"clip lasts {clip.duration:.3f}s, at least 2*T = {2.0 * config.T:.3f}s is needed"
        )
    controller_cls = controller_cls or DEFAULT_CONTROLLERS[mode]
    rng = np.random.default_rng(config.rng_seed)
    controller = controller_cls(config, rng)
    intrinsics = config.intrinsics
    dt = config.dt
    n_frames = int(math.floor(clip.duration * config.sim_rate + TIME_EPS)) + 1
    logger.info(
        f"Simulating {mode}: {n_frames} frames at {config.sim_rate} Hz, seed={config.rng_seed}"
    )

    records: list[FrameRecord] = []
    maps: list[QualityMap] = []
    descriptor: DescriptorKind | None = None
    for k in range(n_frames):
        t = min(clip.start + k * dt, clip.end)
        frame = clip.frame_at(t)
        state = clip_subject_state(clip, t, config.velocity_window)
        output = controller.step(t, frame, state, dt if k else None)

        quality = quality_map(
            frame,
            state,
            config.speed_threshold,
            config.n_samples,
            previous_descriptor=descriptor,
            hysteresis=config.hysteresis,
        )
        descriptor = quality.active_descriptor
        error = screen_error(frame, output.pose, intrinsics)
        if error is None:
            logger.warning(f"Subject behind the camera at t={t:.3f}s")
        records.append(
            FrameRecord(
                t=t,
                camera=output.pose,
                error_px=error,
                width_px=intrinsics.width_px,
                actual_azimuth_deg=output.actual_azimuth_deg,
                globalopt_azimuth_deg=global_optimum(quality, output.actual_azimuth_deg),
                waypoint_azimuth_deg=output.commanded_azimuth_deg,
                mode=mode,
                visible=error is not None,
                active_descriptor=quality.active_descriptor,
            )
        )
        maps.append(quality)
        controller.correct(error, dt)

    waypoints = list(getattr(controller, "waypoints", []))
    logger.info(f"Finished {mode}: {len(records)} frames, {len(waypoints)} waypoints")
    return SimulationResult(mode=mode, records=records, maps=maps, waypoints=waypoints)


def run_simulation(clip: MotionClip, config: SimConfig, mode: RunMode) -> list[FrameRecord]:
    """Closed-loop run; see `simulate` for the full result"""
    return simulate(clip, config, mode).records


class SimulationServiceConfig(BaseModel):
    """Configuration for SimulationService"""

    sim: SimConfig = Field(default_factory=SimConfig)
    """Planner, flight, camera and PID settings shared by every run"""
    proposed_controller_cls: Type[BaseCameraController] = Field(default=ProposedController)
    """Controller class **type** (not an instance) for `proposed` runs"""
    follow_me_controller_cls: Type[BaseCameraController] = Field(default=FollowMeController)
    """Controller class **type** (not an instance) for `follow_me` runs"""
    max_workers: int = Field(default=2, ge=1)
    """Threads used by `compare` and `run_suite`"""

    model_config = ConfigDict(use_attribute_docstrings=True, arbitrary_types_allowed=True)


@dataclass(frozen=True)
class SuiteEntry:
    clip_name: str
    seed: int
    mode: RunMode
    report: RunReport


class SimulationService:
    """Runs both camera strategies with one configuration"""

    @property
    def config(self) -> SimulationServiceConfig:
        return self._cfg

    def __init__(self, config: SimulationServiceConfig | None = None):
        self._cfg = config or SimulationServiceConfig()
        self.logger = getLogger(self.__class__.__name__)

    def _controller_cls(self, mode: RunMode) -> Type[BaseCameraController]:
        if mode == "proposed":
            return self._cfg.proposed_controller_cls
        if mode == "follow_me":
            return self._cfg.follow_me_controller_cls
        raise ValueError(f"unknown mode '{mode}'")

    def _sim_config(self, seed: int | None) -> SimConfig:
        if seed is None:
            return self._cfg.sim
        return self._cfg.sim.model_copy(update={"rng_seed": seed})

    def run(self, clip: MotionClip, mode: RunMode, seed: int | None = None) -> SimulationResult:
        return simulate(clip, self._sim_config(seed), mode, self._controller_cls(mode))

    def compare(
        self, clip: MotionClip, seed: int | None = None
    ) -> tuple[SimulationResult, SimulationResult, ComparisonTable]:
        """Both modes on the same clip and seed, run concurrently"""
        with ThreadPoolExecutor(max_workers=self._cfg.max_workers) as pool:
            proposed = pool.submit(self.run, clip, "proposed", seed)
            follow_me = pool.submit(self.run, clip, "follow_me", seed)
            proposed_result, follow_me_result = proposed.result(), follow_me.result()
        table = compare(proposed_result.report(), follow_me_result.report())
        return proposed_result, follow_me_result, table

    def run_suite(
        self,
        clips: dict[str, MotionClip],
        seeds: Sequence[int],
        modes: Sequence[RunMode] = ("proposed", "follow_me"),
    ) -> list[SuiteEntry]:
        """Every clip x seed x mode combination, one report each, in that order"""
        jobs = [(name, seed, mode) for name in clips for seed in seeds for mode in modes]
        self.logger.info(f"Running suite of {len(jobs)} simulations")

        def run_job(job: tuple[str, int, RunMode]) -> SuiteEntry:
            name, seed, mode = job
            report = self.run(clips[name], mode, seed).report()
            return SuiteEntry(clip_name=name, seed=seed, mode=mode, report=report)

        with ThreadPoolExecutor(max_workers=self._cfg.max_workers) as pool:
            return list(pool.map(run_job, jobs))

    @staticmethod
    def summarize(entries: Sequence[SuiteEntry]) -> dict[RunMode, RunReport]:
        """Merge suite reports per mode"""
        by_mode: dict[RunMode, list[RunReport]] = {}
        for entry in entries:
            by_mode.setdefault(entry.mode, []).append(entry.report)
        return {mode: merge_reports(reports) for mode, reports in by_mode.items()}
