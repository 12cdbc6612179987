"""
CSV and JSON artifact writers. Column layouts are documented in docs/formats.md.
"""

from logging import getLogger
from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel

from aerial_cine.models.report import Histogram
from aerial_cine.models.sim import FrameRecord

logger = getLogger(__name__)

TRACE_COLUMNS = [
    "t",
    "cam_x",
    "cam_y",
    "cam_z",
    "yaw_deg",
    "pitch_deg",
    "wp_azimuth_deg",
    "globalopt_azimuth_deg",
    "e_x_px",
    "e_y_px",
    "visible_flag",
]


def write_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def write_json(model: BaseModel, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def trace_frame(records: Sequence[FrameRecord]) -> pd.DataFrame:
    """One row per simulated frame. Screen error cells are empty for invisible frames."""
    rows = []
    for r in records:
        e_x, e_y = r.error_px if r.error_px is not None else (np.nan, np.nan)
        x, y, z = r.camera.position
        rows.append(
            (
                r.t,
                x,
                y,
                z,
                r.camera.yaw_deg,
                r.camera.pitch_deg,
                r.waypoint_azimuth_deg,
                r.globalopt_azimuth_deg,
                e_x,
                e_y,
                int(r.visible),
            )
        )
    return pd.DataFrame(rows, columns=TRACE_COLUMNS)


def export_trace(records: Sequence[FrameRecord], path: str | Path) -> Path:
    return write_csv(trace_frame(records), path)


def histogram_frame(histogram: Histogram) -> pd.DataFrame:
    return pd.DataFrame(histogram.rows(), columns=["bin_lo", "bin_hi", "count"])


def export_histogram(histogram: Histogram, path: str | Path) -> Path:
    """`bin_lo, bin_hi, count` rows. An overflow bin is written with `bin_hi = inf`."""
    return write_csv(histogram_frame(histogram), path)
