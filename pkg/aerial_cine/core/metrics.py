"""
Footage quality metrics: screen-space error ratio (composition) and viewpoint error.
"""

from logging import getLogger
from typing import Sequence

import numpy as np

from aerial_cine.errors import SimulationError
from aerial_cine.models.report import ComparisonRow, ComparisonTable, Histogram, RunReport
from aerial_cine.models.sim import FrameRecord
from aerial_cine.models.viewpoint import QualityMap

logger = getLogger(__name__)

COMPOSITION_EDGES = [round(0.05 * i, 10) for i in range(11)]
"""Screen error ratio bins of width 0.05 on [0, 0.5]; larger ratios go to the overflow bin"""
VIEWPOINT_EDGES = [10.0 * i for i in range(19)]
"""Viewpoint error bins of 10 degrees on [0, 180]"""
TIE_EPS = 1e-12

REPORT_METRICS = {
    "avg_screen_error_ratio": "Average screen space error ratio",
    "avg_viewpoint_error_deg": "Average viewpoint error (deg)",
}


def screen_error_ratio(error_px: tuple[float, float], width_px: float) -> float:
    """Euclidean screen error divided by the screen width"""
    if not width_px > 0:
        raise ValueError(f"width must be positive, got {width_px}")
    return float(np.hypot(error_px[0], error_px[1]) / width_px)


def viewpoint_error(actual_azimuth_deg: float, quality: QualityMap) -> float:
    """Angular distance from the actual azimuth to the nearest global maximizer, degrees"""
    return float(quality.distance_to_maximizers(actual_azimuth_deg).min())


def composition_histogram(ratios) -> Histogram:
    ratios = np.asarray(ratios, dtype=float)
    edges = np.asarray(COMPOSITION_EDGES)
    bins = np.digitize(ratios, edges) - 1
    counts = np.bincount(bins[bins < len(edges) - 1], minlength=len(edges) - 1)
    overflow = int(np.count_nonzero(bins >= len(edges) - 1))
    return Histogram(
        edges=COMPOSITION_EDGES, counts=counts.tolist(), overflow=overflow, open_ended=True
    )


def viewpoint_histogram(errors_deg) -> Histogram:
    counts, _ = np.histogram(np.asarray(errors_deg, dtype=float), bins=VIEWPOINT_EDGES)
    return Histogram(edges=VIEWPOINT_EDGES, counts=counts.tolist())


def aggregate(records: Sequence[FrameRecord], maps: Sequence[QualityMap]) -> RunReport:
    """
    Summarize one run. Averages and histograms cover visible frames only.

    Args:
        records: Per-frame outcomes, all of one mode
        maps: Quality map of each frame, aligned with `records`

    Raises:
        SimulationError: no records, or the subject was never visible
    """
    if not records:
        raise SimulationError("cannot aggregate an empty run")
    if len(records) != len(maps):
        raise ValueError(f"got {len(records)} records but {len(maps)} quality maps")
    modes = {r.mode for r in records}
    if len(modes) != 1:
        raise ValueError(f"records mix modes {sorted(modes)}")

    visible = [(r, m) for r, m in zip(records, maps) if r.visible]
    if not visible:
        raise SimulationError("subject was behind the camera in every frame")
    invisible = len(records) - len(visible)
    if invisible:
        logger.warning(f"{invisible} of {len(records)} frames excluded: subject not visible")

    ratios = [screen_error_ratio(r.error_px, r.width_px) for r, _ in visible]
    errors = [viewpoint_error(r.actual_azimuth_deg, m) for r, m in visible]
    return RunReport(
        mode=records[0].mode,
        avg_screen_error_ratio=float(np.mean(ratios)),
        avg_viewpoint_error_deg=float(np.mean(errors)),
        histogram_composition=composition_histogram(ratios),
        histogram_viewpoint=viewpoint_histogram(errors),
        frame_count=len(records),
        invisible_count=invisible,
    )


def merge_reports(reports: Sequence[RunReport]) -> RunReport:
    """Combine runs of one mode: averages weighted by visible frames, histograms summed"""
    if not reports:
        raise ValueError("nothing to merge")
    modes = {r.mode for r in reports}
    if len(modes) != 1:
        raise ValueError(f"cannot merge reports of different modes {sorted(modes)}")
    weights = np.array([r.visible_count for r in reports], dtype=float)
    if weights.sum() == 0:
        raise SimulationError("no visible frames in any report")

    def summed(attr: str) -> Histogram:
        first = getattr(reports[0], attr)
        if any(getattr(r, attr).edges != first.edges for r in reports):
            raise ValueError(f"{attr} edges differ between reports")
        return Histogram(
            edges=first.edges,
            counts=np.sum([getattr(r, attr).counts for r in reports], axis=0).tolist(),
            overflow=sum(getattr(r, attr).overflow for r in reports),
            open_ended=first.open_ended,
        )

    return RunReport(
        mode=reports[0].mode,
        avg_screen_error_ratio=float(
            np.average([r.avg_screen_error_ratio for r in reports], weights=weights)
        ),
        avg_viewpoint_error_deg=float(
            np.average([r.avg_viewpoint_error_deg for r in reports], weights=weights)
        ),
        histogram_composition=summed("histogram_composition"),
        histogram_viewpoint=summed("histogram_viewpoint"),
        frame_count=sum(r.frame_count for r in reports),
        invisible_count=sum(r.invisible_count for r in reports),
    )


def compare(
    report_a: RunReport,
    report_b: RunReport,
    label_a: str | None = None,
    label_b: str | None = None,
) -> ComparisonTable:
    """Side-by-side averages with `a - b` differences. Lower is better for every metric."""
    label_a = label_a or report_a.mode
    label_b = label_b or report_b.mode
    if label_a == label_b:
        label_a, label_b = f"{label_a} (a)", f"{label_b} (b)"

    rows = []
    for attr, name in REPORT_METRICS.items():
        a, b = getattr(report_a, attr), getattr(report_b, attr)
        difference = a - b
        if abs(difference) <= TIE_EPS:
            favored = "tie"
        else:
            favored = label_a if difference < 0 else label_b
        rows.append(ComparisonRow(metric=name, a=a, b=b, difference=difference, favored=favored))
    return ComparisonTable(label_a=label_a, label_b=label_b, rows=rows)
