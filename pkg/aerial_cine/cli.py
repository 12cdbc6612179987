"""
Command-line entry point: `aerial-cine {convert,synth,qualitymap,simulate,compare}`.

Exit codes: 0 success, 1 data or runtime error, 2 usage error or missing file.
"""

import argparse
import logging
import sys
from logging import getLogger
from pathlib import Path
from typing import Any, Sequence, get_args

from pydantic import ValidationError

from aerial_cine.core.config import SimConfig
from aerial_cine.core.planner import export_waypoints
from aerial_cine.core.viewpoint import clip_subject_state, export_quality_map, quality_map
from aerial_cine.errors import AerialCineError
from aerial_cine.mocap import dump_jsonl, load_jsonl, parse_bvh, resample, synth_clip, to_clip
from aerial_cine.mocap.synth import SynthParams
from aerial_cine.models.report import ComparisonTable
from aerial_cine.models.skeleton import AxisMap, JointMapping, MotionClip
from aerial_cine.models.viewpoint import QualityMap
from aerial_cine.service.simulation_service import (
    SimulationResult,
    SimulationService,
    SimulationServiceConfig,
    simulate,
)
from aerial_cine.types import RunMode, SynthKind
from aerial_cine.utils.config_file import load_config, parse_overrides
from aerial_cine.utils.export import export_histogram, export_trace, write_json

logger = getLogger(__name__)

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE_ERROR = 2

SYNTH_KINDS = list(get_args(SynthKind))
DEFAULT_AXIS_MAP = "x,-z,y"


def _require_file(path: str | Path) -> Path:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such file: {path}")
    return path


def load_clip(
    path: str | Path,
    scale: float = 1.0,
    mapping_path: str | Path | None = None,
    axis_map: str = DEFAULT_AXIS_MAP,
) -> MotionClip:
    """
    Read a `.bvh` (converted on the fly) or canonical `.jsonl` clip.
    Data errors are re-raised with the file name in front of the message.
    """
    path = _require_file(path)
    mapping = JointMapping.from_json_file(_require_file(mapping_path)) if mapping_path else None
    try:
        if path.suffix.lower() == ".bvh":
            doc = parse_bvh(path.read_text(encoding="utf-8"))
            return to_clip(doc, scale=scale, axis_map=AxisMap(spec=axis_map), mapping=mapping)
        with path.open(encoding="utf-8") as stream:
            return load_jsonl(stream)
    except AerialCineError as e:
        e.args = (f"{path}: {e}",)
        raise


def write_clip(clip: MotionClip, out_jsonl: str | Path) -> Path:
    out = Path(out_jsonl)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as stream:
        dump_jsonl(clip, stream)
    return out


def cmd_convert(
    bvh_path: str | Path,
    mapping_path: str | Path | None,
    scale: float,
    out_jsonl: str | Path,
    axis_map: str = DEFAULT_AXIS_MAP,
    rate: float | None = None,
) -> MotionClip:
    """BVH to canonical JSONL, optionally resampled to `rate` Hz"""
    clip = load_clip(bvh_path, scale, mapping_path, axis_map)
    if rate:
        clip = resample(clip, rate)
    out = write_clip(clip, out_jsonl)
    print(f"{out}: {len(clip)} frames, {clip.duration:.3f} s")
    return clip


def cmd_synth(
    kind: SynthKind,
    duration: float,
    rate: float,
    params: SynthParams | None,
    out_jsonl: str | Path,
) -> MotionClip:
    clip = synth_clip(kind, params, duration, rate)
    out = write_clip(clip, out_jsonl)
    print(f"{out}: {kind}, {len(clip)} frames, {clip.duration:.3f} s")
    return clip


def cmd_qualitymap(
    clip: MotionClip, t: float, config: SimConfig, out_csv: str | Path
) -> QualityMap:
    """Quality curve of the frame at `t`, with the descriptor chosen by the subject's speed"""
    clip.check_time(t)
    frame = clip.frame_at(t)
    state = clip_subject_state(clip, t, config.velocity_window)
    quality = quality_map(frame, state, config.speed_threshold, config.n_samples)
    export_quality_map(quality, out_csv)
    print(f"{out_csv}: {quality.active_descriptor}, speed {state.speed:.3f} m/s")
    return quality


def write_run_artifacts(result: SimulationResult, out_prefix: str | Path) -> list[Path]:
    """`<prefix>_trace.csv`, `_report.json`, `_hist_composition.csv`, `_hist_viewpoint.csv`
    and, for proposed runs, `_waypoints.csv`"""
    prefix = str(out_prefix)
    report = result.report()
    written = [
        export_trace(result.records, f"{prefix}_trace.csv"),
        write_json(report, f"{prefix}_report.json"),
        export_histogram(report.histogram_composition, f"{prefix}_hist_composition.csv"),
        export_histogram(report.histogram_viewpoint, f"{prefix}_hist_viewpoint.csv"),
    ]
    if result.waypoints:
        written.append(export_waypoints(result.waypoints, f"{prefix}_waypoints.csv"))
    return written


def cmd_simulate(
    clip: MotionClip, config: SimConfig, mode: RunMode, out_prefix: str | Path
) -> SimulationResult:
    result = simulate(clip, config, mode)
    write_run_artifacts(result, out_prefix)
    report = result.report()
    print(
        f"{mode}: avg screen error ratio {report.avg_screen_error_ratio:.4f}, "
        f"avg viewpoint error {report.avg_viewpoint_error_deg:.2f} deg, "
        f"{report.invisible_count}/{report.frame_count} frames not visible"
    )
    return result


def cmd_compare(clip: MotionClip, config: SimConfig, out_path: str | Path) -> ComparisonTable:
    """Both modes on the same clip and seed. Writes JSON to `out_path` and text next to it."""
    service = SimulationService(SimulationServiceConfig(sim=config))
    _, _, table = service.compare(clip)
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(table.to_json() + "\n", encoding="utf-8")
    out.with_suffix(".txt").write_text(table.to_text(), encoding="utf-8")
    print(table.to_text(), end="")
    return table


def _config_from_args(args: argparse.Namespace) -> SimConfig:
    overrides: dict[str, Any] = parse_overrides(args.set or [])
    if getattr(args, "seed", None) is not None:
        overrides["rng_seed"] = args.seed
    if getattr(args, "rate", None) is not None:
        overrides["sim_rate"] = args.rate
    return load_config(args.config, overrides)


def _clip_from_args(args: argparse.Namespace) -> MotionClip:
    return load_clip(args.clip, args.scale, args.mapping, args.axis_map)


def _run_convert(args: argparse.Namespace) -> None:
    cmd_convert(args.bvh, args.mapping, args.scale, args.out, args.axis_map, args.rate)


def _run_synth(args: argparse.Namespace) -> None:
    params = SynthParams.model_validate(parse_overrides(args.param or []))
    cmd_synth(args.kind, args.duration, args.rate, params, args.out)


def _run_qualitymap(args: argparse.Namespace) -> None:
    cmd_qualitymap(_clip_from_args(args), args.t, _config_from_args(args), args.out)


def _run_simulate(args: argparse.Namespace) -> None:
    cmd_simulate(_clip_from_args(args), _config_from_args(args), args.mode, args.out)


def _run_compare(args: argparse.Namespace) -> None:
    cmd_compare(_clip_from_args(args), _config_from_args(args), args.out)


def _add_clip_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("clip", help="Input clip, .jsonl or .bvh")
    parser.add_argument("--scale", type=float, default=1.0, help="BVH units to meters")
    parser.add_argument("--mapping", help="JSON joint mapping for BVH input (default: CMU names)")
    parser.add_argument("--axis-map", default=DEFAULT_AXIS_MAP, help="BVH axes to world x,y,z")


def _add_config_args(parser: argparse.ArgumentParser, seed: bool = True) -> None:
    parser.add_argument("--config", help="KEY=value config file (default: $AERIAL_CINE_CONFIG)")
    parser.add_argument(
        "--set", action="append", metavar="KEY=VALUE", help="Override one config key"
    )
    if seed:
        parser.add_argument("--seed", type=int, help="Drift noise seed (config key rng_seed)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aerial-cine", description="Drone cinematography planner and simulator"
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    sub = parser.add_subparsers(dest="command", required=True)

    convert = sub.add_parser("convert", help="BVH to canonical skeleton JSONL")
    convert.add_argument("bvh", help="Input .bvh file")
    convert.add_argument("--out", required=True, help="Output .jsonl")
    convert.add_argument("--scale", type=float, default=1.0, help="BVH units to meters")
    convert.add_argument("--mapping", help="JSON joint mapping (default: CMU names)")
    convert.add_argument("--axis-map", default=DEFAULT_AXIS_MAP, help="BVH axes to world x,y,z")
    convert.add_argument("--rate", type=float, help="Resample to this rate, Hz")
    convert.set_defaults(func=_run_convert)

    synth = sub.add_parser("synth", help="Write a synthetic clip")
    synth.add_argument("kind", choices=SYNTH_KINDS)
    synth.add_argument("--out", required=True, help="Output .jsonl")
    synth.add_argument("--duration", type=float, default=10.0, help="Seconds")
    synth.add_argument("--rate", type=float, default=30.0, help="Hz")
    synth.add_argument(
        "--param", action="append", metavar="KEY=VALUE", help="Motion parameter, e.g. speed=1.2"
    )
    synth.set_defaults(func=_run_synth)

    qualitymap = sub.add_parser("qualitymap", help="Quality curve of one frame as CSV")
    _add_clip_args(qualitymap)
    qualitymap.add_argument("--t", type=float, required=True, help="Frame time, seconds")
    qualitymap.add_argument("--out", required=True, help="Output .csv")
    _add_config_args(qualitymap, seed=False)
    qualitymap.set_defaults(func=_run_qualitymap)

    simulate_cmd = sub.add_parser("simulate", help="Closed-loop run of one camera strategy")
    _add_clip_args(simulate_cmd)
    simulate_cmd.add_argument("--mode", choices=["proposed", "follow_me"], default="proposed")
    simulate_cmd.add_argument("--out", required=True, help="Output path prefix")
    simulate_cmd.add_argument("--rate", type=float, help="Simulation rate, Hz (key sim_rate)")
    _add_config_args(simulate_cmd)
    simulate_cmd.set_defaults(func=_run_simulate)

    compare_cmd = sub.add_parser("compare", help="Proposed vs Follow-Me on one clip")
    _add_clip_args(compare_cmd)
    compare_cmd.add_argument("--out", required=True, help="Output .json (a .txt table is added)")
    compare_cmd.add_argument("--rate", type=float, help="Simulation rate, Hz (key sim_rate)")
    _add_config_args(compare_cmd)
    compare_cmd.set_defaults(func=_run_compare)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE_ERROR

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        args.func(args)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    except (AerialCineError, ValidationError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
